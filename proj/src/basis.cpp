#include "pdwg/basis.hpp"

#include <stdexcept>

namespace pdwg {

namespace {

// x^0 .. x^n
void powers(double x, int n, double* out) {
  out[0] = 1.0;
  for (int i = 1; i <= n; ++i) out[i] = out[i - 1] * x;
}

}  // namespace

ElementBasis::ElementBasis(int degree, Point center, double scale)
    : degree_(degree), center_(std::move(center)), scale_(scale) {
  if (degree < 0 || degree > 15) throw std::invalid_argument("polynomial degree out of range");
  for (int d = 0; d <= degree; ++d) {
    for (int a = d; a >= 0; --a) exponents_.emplace_back(a, d - a);
  }
}

ElementBasis::ElementBasis(const Mesh& mesh, int t, int degree)
    : ElementBasis(degree, mesh.centroid(t), mesh.diameter(t)) {}

Eigen::VectorXd ElementBasis::values(const Point& p) const {
  double px[16], py[16];
  powers((p.x() - center_.x()) / scale_, degree_, px);
  powers((p.y() - center_.y()) / scale_, degree_, py);
  Eigen::VectorXd v(size());
  for (int i = 0; i < size(); ++i) v[i] = px[exponents_[i].first] * py[exponents_[i].second];
  return v;
}

Eigen::MatrixX2d ElementBasis::gradients(const Point& p) const {
  double px[16], py[16];
  powers((p.x() - center_.x()) / scale_, degree_, px);
  powers((p.y() - center_.y()) / scale_, degree_, py);
  Eigen::MatrixX2d g(size(), 2);
  for (int i = 0; i < size(); ++i) {
    const auto [a, b] = exponents_[i];
    g(i, 0) = a == 0 ? 0.0 : a * px[a - 1] * py[b] / scale_;
    g(i, 1) = b == 0 ? 0.0 : b * px[a] * py[b - 1] / scale_;
  }
  return g;
}

EdgeBasis::EdgeBasis(int degree, Point midpoint, Point tangent, double length)
    : degree_(degree), midpoint_(std::move(midpoint)), tangent_(std::move(tangent)), length_(length) {
  if (degree < 0 || degree > 15) throw std::invalid_argument("polynomial degree out of range");
}

EdgeBasis::EdgeBasis(const Mesh& mesh, int e, int degree)
    : EdgeBasis(degree, mesh.edge(e).midpoint, mesh.edge(e).tangent, mesh.edge(e).length) {}

double EdgeBasis::coordinate(const Point& p) const { return (p - midpoint_).dot(tangent_) / length_; }

Eigen::VectorXd EdgeBasis::values(const Point& p) const {
  Eigen::VectorXd v(size());
  powers(coordinate(p), degree_, v.data());
  return v;
}

}  // namespace pdwg
