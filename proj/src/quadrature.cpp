#include "pdwg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pdwg {

namespace {

// Legendre polynomial P_n(x) and its derivative by the three-term recurrence.
void legendre(int n, double x, double& value, double& derivative) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  value = p1;
  derivative = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

void gauss_legendre(int n_points, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n_points < 1) throw std::invalid_argument("Gauss rule needs at least one point");
  nodes.assign(n_points, 0.0);
  weights.assign(n_points, 0.0);
  if (n_points == 1) {
    weights[0] = 2.0;
    return;
  }
  for (int i = 0; i < (n_points + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n_points + 0.5));
    double value = 0.0;
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre(n_points, x, value, derivative);
      const double dx = value / derivative;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n_points, x, value, derivative);
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    nodes[i] = -x;
    nodes[n_points - 1 - i] = x;
    weights[i] = w;
    weights[n_points - 1 - i] = w;
  }
  if (n_points % 2 == 1) nodes[n_points / 2] = 0.0;
}

QuadratureRule segment_rule(int degree) {
  const int n = degree / 2 + 1;
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.exact_degree = 2 * n - 1;
  for (int i = 0; i < n; ++i) {
    rule.points.emplace_back(0.5 * (x[i] + 1.0), 0.0);
    rule.weights.push_back(0.5 * w[i]);
  }
  return rule;
}

QuadratureRule triangle_rule(int degree) {
  // The collapsed map (u, v) -> (u (1 - v), v) has Jacobian (1 - v), which
  // raises the degree in v by one.
  const int n = (degree + 1) / 2 + 1;
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.exact_degree = 2 * n - 2;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (x[i] + 1.0);
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (x[j] + 1.0);
      rule.points.emplace_back(u * (1.0 - v), v);
      rule.weights.push_back(0.25 * w[i] * w[j] * (1.0 - v));
    }
  }
  return rule;
}

MappedQuadrature map_to_triangle(const QuadratureRule& rule, const Mesh& mesh, int t) {
  const auto p = mesh.triangle_points(t);
  const Point d1 = p[1] - p[0];
  const Point d2 = p[2] - p[0];
  const double jac = 2.0 * mesh.area(t);
  MappedQuadrature q;
  q.points.reserve(rule.size());
  q.weights.reserve(rule.size());
  for (int i = 0; i < rule.size(); ++i) {
    q.points.push_back(p[0] + rule.points[i].x() * d1 + rule.points[i].y() * d2);
    q.weights.push_back(rule.weights[i] * jac);
  }
  return q;
}

MappedQuadrature map_to_edge(const QuadratureRule& rule, const Mesh& mesh, int e) {
  const Edge& edge = mesh.edge(e);
  const Point& a = mesh.vertex(edge.vertices[0]);
  const Point& b = mesh.vertex(edge.vertices[1]);
  MappedQuadrature q;
  q.points.reserve(rule.size());
  q.weights.reserve(rule.size());
  for (int i = 0; i < rule.size(); ++i) {
    const double s = rule.points[i].x();
    q.points.push_back((1.0 - s) * a + s * b);
    q.weights.push_back(rule.weights[i] * edge.length);
  }
  return q;
}

QuadratureSet::QuadratureSet(int degree_)
    : degree(degree_), triangle(triangle_rule(2 * degree_ + 4)), segment(segment_rule(2 * degree_ + 5)) {}

}  // namespace pdwg
