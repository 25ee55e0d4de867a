#include "pdwg/norms.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace pdwg {

namespace {

// (d/dx_i q_j) of a piecewise polynomial vector field at p.
Eigen::Matrix2d jacobian(const PiecewiseVectorField& q, const Mesh& mesh, int t, const Point& p) {
  const ElementBasis basis(mesh, t, q.degree);
  const Eigen::MatrixX2d grad = basis.gradients(p);
  const int m = basis.size();
  const Eigen::VectorXd& c = q.coefficients[t];
  Eigen::Matrix2d j;
  for (int i = 0; i < 2; ++i) {
    j(i, 0) = grad.col(i).dot(c.head(m));
    j(i, 1) = grad.col(i).dot(c.tail(m));
  }
  return j;
}

bool include_edge(const BoundaryConfig& config, int e, EdgeSelection edges) {
  if (!config.is_boundary(e)) return true;
  return edges == EdgeSelection::NotGammaNComplement ? config.in_gamma_n(e) : !config.in_gamma_d(e);
}

}  // namespace

double ResidualTerms::norm() const { return std::sqrt(divergence + jump + stabilizer); }

WeakFunction error_fields(const WeakFunction& u_h, const ScalarFunction& u, const Mesh& mesh, int k) {
  return u_h - project_Qh(u, mesh, k);
}

double l2_interior(const WeakFunction& v, const Mesh& mesh) {
  const QuadratureSet quad(v.layout().degree);
  double sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementBasis basis(mesh, t, v.layout().degree);
    const MappedQuadrature cell = map_to_triangle(quad.triangle, mesh, t);
    for (int q = 0; q < cell.size(); ++q) {
      const double value = basis.values(cell.points[q]).dot(v.interior(t));
      sum += cell.weights[q] * value * value;
    }
  }
  return std::sqrt(sum);
}

double broken_h1(const WeakFunction& v, const Mesh& mesh) {
  const QuadratureSet quad(v.layout().degree);
  double sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementBasis basis(mesh, t, v.layout().degree);
    const MappedQuadrature cell = map_to_triangle(quad.triangle, mesh, t);
    for (int q = 0; q < cell.size(); ++q) {
      const Point g = basis.gradients(cell.points[q]).transpose() * v.interior(t);
      sum += cell.weights[q] * g.squaredNorm();
    }
  }
  return std::sqrt(sum);
}

PiecewiseVectorField interior_gradient_field(const WeakFunction& v, const Mesh& mesh) {
  const int k = v.layout().degree;
  const QuadratureSet quad(k);
  PiecewiseVectorField field;
  field.degree = k - 1;
  field.coefficients.resize(mesh.n_triangles());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementBasis v_basis(mesh, t, k);
    const ElementBasis basis(mesh, t, k - 1);
    const int m = basis.size();
    const MappedQuadrature cell = map_to_triangle(quad.triangle, mesh, t);
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 2);
    for (int q = 0; q < cell.size(); ++q) {
      const Point g = v_basis.gradients(cell.points[q]).transpose() * v.interior(t);
      const Eigen::VectorXd phi = basis.values(cell.points[q]);
      rhs.col(0) += cell.weights[q] * g.x() * phi;
      rhs.col(1) += cell.weights[q] * g.y() * phi;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(element_mass(mesh, t, k - 1, quad.triangle));
    Eigen::VectorXd c(2 * m);
    c.head(m) = llt.solve(rhs.col(0));
    c.tail(m) = llt.solve(rhs.col(1));
    field.coefficients[t] = std::move(c);
  }
  return field;
}

ResidualTerms residual_terms(const WeakFunction& v, const LocalOperators& ops, const BoundaryConfig& config,
                             EdgeSelection edges, FluxKind flux) {
  const Mesh& mesh = ops.mesh();
  const Diffusion& a = ops.diffusion();
  const QuadratureSet& quad = ops.quadrature();
  const PiecewiseVectorField q =
      flux == FluxKind::Weak ? ops.weak_gradient(v) : interior_gradient_field(v, mesh);

  ResidualTerms terms;
  const bool constant_flux = q.degree == 0 && a.is_identity;
  if (!constant_flux) {
    for (int t = 0; t < mesh.n_triangles(); ++t) {
      const MappedQuadrature cell = map_to_triangle(quad.triangle, mesh, t);
      double sum = 0.0;
      for (int i = 0; i < cell.size(); ++i) {
        const Point& p = cell.points[i];
        // div(a q) = (div a) . q + a : grad q
        const Eigen::Matrix2d j = jacobian(q, mesh, t, p);
        const double div = a.divergence_at(p).dot(q.value(mesh, t, p)) + a.at(p).cwiseProduct(j).sum();
        sum += cell.weights[i] * div * div;
      }
      const double h = mesh.diameter(t);
      terms.divergence += h * h * sum;
    }
  }

  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (!include_edge(config, e, edges)) continue;
    const Edge& edge = mesh.edge(e);
    const MappedQuadrature face = map_to_edge(quad.segment, mesh, e);
    double sum = 0.0;
    for (int i = 0; i < face.size(); ++i) {
      const Point& p = face.points[i];
      double jump = 0.0;
      for (int side = 0; side < edge.n_triangles(); ++side) {
        const int t = edge.triangles[side];
        const Point n = mesh.outward_normal(t, mesh.local_edge_index(t, e));
        jump += (a.at(p) * q.value(mesh, t, p)).dot(n);
      }
      sum += face.weights[i] * jump * jump;
    }
    terms.jump += edge_weight(mesh, e) * sum;
  }

  terms.stabilizer = ops.stabilizer_form(v, v);
  return terms;
}

double residual_norm_u(const WeakFunction& v, const LocalOperators& ops, const BoundaryConfig& config) {
  return residual_terms(v, ops, config, EdgeSelection::NotGammaNComplement, FluxKind::Weak).norm();
}

double residual_norm_lambda(const WeakFunction& v, const LocalOperators& ops, const BoundaryConfig& config) {
  return residual_terms(v, ops, config, EdgeSelection::NotGammaD, FluxKind::Weak).norm();
}

std::pair<double, double> strong_residual_norms(const WeakFunction& v, const LocalOperators& ops,
                                                const BoundaryConfig& config) {
  return {residual_terms(v, ops, config, EdgeSelection::NotGammaNComplement, FluxKind::Interior).norm(),
          residual_terms(v, ops, config, EdgeSelection::NotGammaD, FluxKind::Interior).norm()};
}

ErrorReport evaluate_errors(const WeakFunction& u_h, const WeakFunction& lambda_h, const ScalarFunction& u,
                            const LocalOperators& ops, const BoundaryConfig& config) {
  const Mesh& mesh = ops.mesh();
  const WeakFunction e_h = error_fields(u_h, u, mesh, ops.degree());
  ErrorReport report;
  report.l2_e0 = l2_interior(e_h, mesh);
  report.h1_e0 = broken_h1(e_h, mesh);
  const ResidualTerms terms =
      residual_terms(e_h, ops, config, EdgeSelection::NotGammaNComplement, FluxKind::Weak);
  report.resid_u = terms.norm();
  report.stab_u = std::sqrt(terms.stabilizer);
  report.resid_lambda = residual_norm_lambda(lambda_h, ops, config);
  report.strong_u = residual_terms(e_h, ops, config, EdgeSelection::NotGammaNComplement, FluxKind::Interior).norm();
  report.strong_lambda = residual_terms(lambda_h, ops, config, EdgeSelection::NotGammaD, FluxKind::Interior).norm();
  return report;
}

}  // namespace pdwg
