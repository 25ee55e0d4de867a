#include "pdwg/weak_ops.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace pdwg {

Diffusion Diffusion::identity() {
  Diffusion a;
  a.value = [](const Point&) { return Eigen::Matrix2d::Identity().eval(); };
  a.divergence = [](const Point&) { return Point::Zero().eval(); };
  a.is_identity = true;
  return a;
}

Diffusion Diffusion::scalar(std::function<double(const Point&)> alpha,
                            std::function<Point(const Point&)> grad_alpha) {
  Diffusion a;
  a.value = [alpha = std::move(alpha)](const Point& p) {
    return (alpha(p) * Eigen::Matrix2d::Identity()).eval();
  };
  a.divergence = std::move(grad_alpha);
  return a;
}

Diffusion Diffusion::matrix(std::function<Eigen::Matrix2d(const Point&)> value,
                            std::function<Point(const Point&)> divergence) {
  Diffusion a;
  a.value = std::move(value);
  a.divergence = std::move(divergence);
  return a;
}

Eigen::Matrix2d Diffusion::at(const Point& p) const {
  return is_identity ? Eigen::Matrix2d::Identity() : value(p);
}

Point Diffusion::divergence_at(const Point& p) const {
  if (is_identity || !divergence) return Point::Zero();
  return divergence(p);
}

void Diffusion::check_spd(const Point& p) const {
  if (is_identity) return;
  const Eigen::Matrix2d m = value(p);
  const double scale = m.cwiseAbs().maxCoeff();
  const bool symmetric = std::abs(m(0, 1) - m(1, 0)) <= 1e-12 * scale;
  if (!symmetric || !(m(0, 0) > 0.0) || !(m.determinant() > 0.0)) {
    std::ostringstream msg;
    msg << "diffusion coefficient is not symmetric positive definite at (" << p.x() << ", " << p.y() << ")";
    throw std::invalid_argument(msg.str());
  }
}

Eigen::MatrixXd weak_gradient_matrix(const Mesh& mesh, int t, int k, const QuadratureSet& quad) {
  const int nb = element_dim(k);
  const int ne = edge_dim(k);
  const ElementBasis v0_basis(mesh, t, k);
  const ElementBasis test_basis(mesh, t, k - 1);
  const int m = test_basis.size();

  // (G, psi)_T = -(v_0, div psi)_T + <v_b, psi . n>_{dT}
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2 * m, nb + 3 * ne);
  const MappedQuadrature cell = map_to_triangle(quad.triangle, mesh, t);
  for (int q = 0; q < cell.size(); ++q) {
    const Eigen::VectorXd phi = v0_basis.values(cell.points[q]);
    const Eigen::MatrixX2d dpsi = test_basis.gradients(cell.points[q]);
    rhs.block(0, 0, m, nb).noalias() -= cell.weights[q] * dpsi.col(0) * phi.transpose();
    rhs.block(m, 0, m, nb).noalias() -= cell.weights[q] * dpsi.col(1) * phi.transpose();
  }
  for (int j = 0; j < 3; ++j) {
    const int e = mesh.triangle_edges(t)[j];
    const EdgeBasis edge_basis(mesh, e, k);
    const Point n = mesh.outward_normal(t, j);
    const MappedQuadrature face = map_to_edge(quad.segment, mesh, e);
    for (int q = 0; q < face.size(); ++q) {
      const Eigen::VectorXd chi = edge_basis.values(face.points[q]);
      const Eigen::VectorXd psi = test_basis.values(face.points[q]);
      rhs.block(0, nb + j * ne, m, ne).noalias() += face.weights[q] * n.x() * psi * chi.transpose();
      rhs.block(m, nb + j * ne, m, ne).noalias() += face.weights[q] * n.y() * psi * chi.transpose();
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(element_mass(mesh, t, k - 1, quad.triangle));
  if (llt.info() != Eigen::Success) throw std::runtime_error("vector mass matrix is not positive definite");
  Eigen::MatrixXd g(2 * m, nb + 3 * ne);
  g.topRows(m) = llt.solve(rhs.topRows(m));
  g.bottomRows(m) = llt.solve(rhs.bottomRows(m));
  return g;
}

Eigen::VectorXd weak_gradient(const Mesh& mesh, int t, int k, const Eigen::VectorXd& local_dofs) {
  const QuadratureSet quad(k);
  const Eigen::MatrixXd g = weak_gradient_matrix(mesh, t, k, quad);
  if (local_dofs.size() != g.cols()) throw std::invalid_argument("local dof vector has the wrong size");
  return g * local_dofs;
}

Eigen::MatrixXd trace_difference_matrix(const Mesh& mesh, int t, int k, const QuadratureSet& quad) {
  const int nb = element_dim(k);
  const int ne = edge_dim(k);
  const int nq = quad.segment.size();
  const ElementBasis v0_basis(mesh, t, k);
  const double inv_h = 1.0 / mesh.diameter(t);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3 * nq, nb + 3 * ne);
  for (int j = 0; j < 3; ++j) {
    const int e = mesh.triangle_edges(t)[j];
    const EdgeBasis edge_basis(mesh, e, k);
    const MappedQuadrature face = map_to_edge(quad.segment, mesh, e);
    for (int q = 0; q < nq; ++q) {
      const double w = std::sqrt(face.weights[q] * inv_h);
      d.row(j * nq + q).head(nb) = w * v0_basis.values(face.points[q]).transpose();
      d.row(j * nq + q).segment(nb + j * ne, ne) = -w * edge_basis.values(face.points[q]).transpose();
    }
  }
  return d;
}

Eigen::MatrixXd local_stabilizer(const Mesh& mesh, int t, int k, const QuadratureSet& quad) {
  const Eigen::MatrixXd d = trace_difference_matrix(mesh, t, k, quad);
  return d.transpose() * d;
}

Eigen::MatrixXd local_stabilizer(const Mesh& mesh, int t, int k) {
  return local_stabilizer(mesh, t, k, QuadratureSet(k));
}

namespace {

Eigen::MatrixXd weighted_vector_mass(const Mesh& mesh, int t, int k, const Diffusion& a,
                                     const QuadratureSet& quad) {
  const ElementBasis basis(mesh, t, k - 1);
  const int m = basis.size();
  Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  const MappedQuadrature cell = map_to_triangle(quad.triangle, mesh, t);
  for (int q = 0; q < cell.size(); ++q) {
    a.check_spd(cell.points[q]);
    const Eigen::Matrix2d aq = a.at(cell.points[q]);
    const Eigen::VectorXd phi = basis.values(cell.points[q]);
    const Eigen::MatrixXd pp = cell.weights[q] * phi * phi.transpose();
    for (int c = 0; c < 2; ++c) {
      for (int d = 0; d < 2; ++d) {
        if (aq(c, d) != 0.0) mass.block(c * m, d * m, m, m) += aq(c, d) * pp;
      }
    }
  }
  return mass;
}

}  // namespace

Eigen::MatrixXd local_b(const Mesh& mesh, int t, int k, const Diffusion& a, const QuadratureSet& quad) {
  const Eigen::MatrixXd g = weak_gradient_matrix(mesh, t, k, quad);
  return g.transpose() * weighted_vector_mass(mesh, t, k, a, quad) * g;
}

Eigen::MatrixXd local_b(const Mesh& mesh, int t, int k, const Diffusion& a) {
  return local_b(mesh, t, k, a, QuadratureSet(k));
}

LocalOperators::LocalOperators(const Mesh& mesh, int k, Diffusion a)
    : mesh_(&mesh), degree_(k), diffusion_(std::move(a)), quad_(k) {
  if (k < 1) throw std::invalid_argument("weak Galerkin degree must be at least 1");
  const int nt = mesh.n_triangles();
  gradient_.resize(nt);
  trace_difference_.resize(nt);
  mass_.resize(nt);
  stabilizer_.resize(nt);
  b_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    gradient_[t] = weak_gradient_matrix(mesh, t, k, quad_);
    trace_difference_[t] = trace_difference_matrix(mesh, t, k, quad_);
    mass_[t] = weighted_vector_mass(mesh, t, k, diffusion_, quad_);
    stabilizer_[t] = trace_difference_[t].transpose() * trace_difference_[t];
    b_[t] = gradient_[t].transpose() * mass_[t] * gradient_[t];
  }
}

PiecewiseVectorField LocalOperators::weak_gradient(const WeakFunction& v) const {
  PiecewiseVectorField field;
  field.degree = degree_ - 1;
  field.coefficients.resize(mesh_->n_triangles());
  for (int t = 0; t < mesh_->n_triangles(); ++t) field.coefficients[t] = gradient_[t] * v.local(*mesh_, t);
  return field;
}

double LocalOperators::stabilizer_form(const WeakFunction& v, const WeakFunction& w) const {
  double sum = 0.0;
  for (int t = 0; t < mesh_->n_triangles(); ++t) {
    // Differences first, so a function with matching traces gives an exact zero.
    sum += (trace_difference_[t] * v.local(*mesh_, t)).dot(trace_difference_[t] * w.local(*mesh_, t));
  }
  return sum;
}

double LocalOperators::b_form(const WeakFunction& v, const WeakFunction& w) const {
  double sum = 0.0;
  for (int t = 0; t < mesh_->n_triangles(); ++t) {
    sum += (gradient_[t] * v.local(*mesh_, t)).dot(mass_[t] * (gradient_[t] * w.local(*mesh_, t)));
  }
  return sum;
}

}  // namespace pdwg
