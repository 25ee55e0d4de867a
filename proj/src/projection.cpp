#include "pdwg/projection.hpp"

#include <stdexcept>

#include <Eigen/Cholesky>

namespace pdwg {

namespace {

Eigen::VectorXd solve_gram(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs) {
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) throw std::runtime_error("local mass matrix is not positive definite");
  return llt.solve(rhs);
}

}  // namespace

Eigen::MatrixXd element_mass(const Mesh& mesh, int t, int degree, const QuadratureRule& rule) {
  const ElementBasis basis(mesh, t, degree);
  const MappedQuadrature q = map_to_triangle(rule, mesh, t);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (int i = 0; i < q.size(); ++i) {
    const Eigen::VectorXd phi = basis.values(q.points[i]);
    m.noalias() += q.weights[i] * phi * phi.transpose();
  }
  return m;
}

Eigen::MatrixXd edge_mass(const Mesh& mesh, int e, int degree, const QuadratureRule& rule) {
  const EdgeBasis basis(mesh, e, degree);
  const MappedQuadrature q = map_to_edge(rule, mesh, e);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis.size(), basis.size());
  for (int i = 0; i < q.size(); ++i) {
    const Eigen::VectorXd chi = basis.values(q.points[i]);
    m.noalias() += q.weights[i] * chi * chi.transpose();
  }
  return m;
}

Eigen::VectorXd project_Q0(const ScalarFunction& f, const Mesh& mesh, int t, int k) {
  return project_Q0(f, mesh, t, k, QuadratureSet(k));
}

Eigen::VectorXd project_Q0(const ScalarFunction& f, const Mesh& mesh, int t, int k,
                           const QuadratureSet& quad) {
  const ElementBasis basis(mesh, t, k);
  const MappedQuadrature q = map_to_triangle(quad.triangle, mesh, t);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.size());
  for (int i = 0; i < q.size(); ++i) rhs += q.weights[i] * f(q.points[i]) * basis.values(q.points[i]);
  return solve_gram(element_mass(mesh, t, k, quad.triangle), rhs);
}

Eigen::VectorXd project_Qb(const ScalarFunction& f, const Mesh& mesh, int e, int k) {
  return project_Qb(f, mesh, e, k, QuadratureSet(k));
}

Eigen::VectorXd project_Qb(const ScalarFunction& f, const Mesh& mesh, int e, int k,
                           const QuadratureSet& quad) {
  const EdgeBasis basis(mesh, e, k);
  const MappedQuadrature q = map_to_edge(quad.segment, mesh, e);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(basis.size());
  for (int i = 0; i < q.size(); ++i) rhs += q.weights[i] * f(q.points[i]) * basis.values(q.points[i]);
  return solve_gram(edge_mass(mesh, e, k, quad.segment), rhs);
}

WeakFunction project_Qh(const ScalarFunction& u, const Mesh& mesh, int k) {
  const QuadratureSet quad(k);
  WeakFunction v(DofLayout(mesh, k));
  for (int t = 0; t < mesh.n_triangles(); ++t) v.interior(t) = project_Q0(u, mesh, t, k, quad);
  for (int e = 0; e < mesh.n_edges(); ++e) v.boundary(e) = project_Qb(u, mesh, e, k, quad);
  return v;
}

Point PiecewiseVectorField::value(const Mesh& mesh, int t, const Point& p) const {
  const ElementBasis basis(mesh, t, degree);
  const Eigen::VectorXd phi = basis.values(p);
  const int m = basis.size();
  const Eigen::VectorXd& c = coefficients[t];
  return Point(phi.dot(c.head(m)), phi.dot(c.tail(m)));
}

double PiecewiseVectorField::divergence(const Mesh& mesh, int t, const Point& p) const {
  const ElementBasis basis(mesh, t, degree);
  const Eigen::MatrixX2d grad = basis.gradients(p);
  const int m = basis.size();
  const Eigen::VectorXd& c = coefficients[t];
  return grad.col(0).dot(c.head(m)) + grad.col(1).dot(c.tail(m));
}

PiecewiseVectorField project_calQh(const VectorFunction& q, const Mesh& mesh, int k) {
  const QuadratureSet quad(k);
  PiecewiseVectorField field;
  field.degree = k - 1;
  field.coefficients.resize(mesh.n_triangles());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementBasis basis(mesh, t, k - 1);
    const int m = basis.size();
    const MappedQuadrature pts = map_to_triangle(quad.triangle, mesh, t);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
    for (int i = 0; i < pts.size(); ++i) {
      const Point value = q(pts.points[i]);
      const Eigen::VectorXd phi = basis.values(pts.points[i]);
      rhs.col(0) += pts.weights[i] * value.x() * phi;
      rhs.col(1) += pts.weights[i] * value.y() * phi;
    }
    const Eigen::MatrixXd gram = element_mass(mesh, t, k - 1, quad.triangle);
    Eigen::VectorXd c(2 * m);
    c.head(m) = solve_gram(gram, rhs.col(0));
    c.tail(m) = solve_gram(gram, rhs.col(1));
    field.coefficients[t] = std::move(c);
  }
  return field;
}

}  // namespace pdwg
