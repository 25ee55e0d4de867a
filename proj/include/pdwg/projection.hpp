#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "pdwg/dofmap.hpp"
#include "pdwg/quadrature.hpp"

namespace pdwg {

using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Point(const Point&)>;

/// Gram matrix of the scaled monomial basis of P_degree(T).
Eigen::MatrixXd element_mass(const Mesh& mesh, int t, int degree, const QuadratureRule& rule);
/// Gram matrix of the edge basis of P_degree(e).
Eigen::MatrixXd edge_mass(const Mesh& mesh, int e, int degree, const QuadratureRule& rule);

/// L2 projection onto P_k(T), in the ElementBasis of degree k.
Eigen::VectorXd project_Q0(const ScalarFunction& f, const Mesh& mesh, int t, int k);
Eigen::VectorXd project_Q0(const ScalarFunction& f, const Mesh& mesh, int t, int k,
                           const QuadratureSet& quad);

/// L2 projection onto P_k(e), in the EdgeBasis of degree k.
Eigen::VectorXd project_Qb(const ScalarFunction& f, const Mesh& mesh, int e, int k);
Eigen::VectorXd project_Qb(const ScalarFunction& f, const Mesh& mesh, int e, int k,
                           const QuadratureSet& quad);

/// Q_h u = {Q_0 u, Q_b u} on every triangle and edge.
WeakFunction project_Qh(const ScalarFunction& u, const Mesh& mesh, int k);

/// Piecewise [P_r(T)]^2 field. Per triangle, the first element_dim(r)
/// coefficients are the x component and the rest the y component, both in
/// the ElementBasis of degree r.
struct PiecewiseVectorField {
  int degree = 0;
  std::vector<Eigen::VectorXd> coefficients;

  Point value(const Mesh& mesh, int t, const Point& p) const;
  /// Divergence of the polynomial on triangle t.
  double divergence(const Mesh& mesh, int t, const Point& p) const;
};

/// Componentwise L2 projection onto piecewise P_{k-1}.
PiecewiseVectorField project_calQh(const VectorFunction& q, const Mesh& mesh, int k);

}  // namespace pdwg
