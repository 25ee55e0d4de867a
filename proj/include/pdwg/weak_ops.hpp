#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "pdwg/dofmap.hpp"
#include "pdwg/projection.hpp"
#include "pdwg/quadrature.hpp"

namespace pdwg {

/// Diffusion coefficient a(x): symmetric positive definite 2x2 matrix field.
/// `divergence` returns the column divergence d_j = sum_i da_ij/dx_i, used by
/// the residual norms through div(a q) = d . q + a : grad q.
struct Diffusion {
  std::function<Eigen::Matrix2d(const Point&)> value;
  std::function<Point(const Point&)> divergence;
  bool is_identity = false;

  static Diffusion identity();
  /// a(x) = alpha(x) I with gradient of alpha supplied analytically.
  static Diffusion scalar(std::function<double(const Point&)> alpha,
                          std::function<Point(const Point&)> grad_alpha);
  static Diffusion matrix(std::function<Eigen::Matrix2d(const Point&)> a,
                          std::function<Point(const Point&)> divergence);

  Eigen::Matrix2d at(const Point& p) const;
  Point divergence_at(const Point& p) const;
  /// Throws std::invalid_argument when a(p) is not symmetric positive definite.
  void check_spd(const Point& p) const;
};

/// Matrix mapping the local dofs {v_0, v_b on edges 0..2} of triangle t to
/// the [P_{k-1}(T)]^2 coefficients of the discrete weak gradient.
Eigen::MatrixXd weak_gradient_matrix(const Mesh& mesh, int t, int k, const QuadratureSet& quad);

/// Discrete weak gradient of one local dof vector.
Eigen::VectorXd weak_gradient(const Mesh& mesh, int t, int k, const Eigen::VectorXd& local_dofs);

/// Rows hold (w_q / h_T)^{1/2} (v_0 - v_b) at the edge quadrature points of
/// triangle t, so that the local stabilizer is D^T D.
Eigen::MatrixXd trace_difference_matrix(const Mesh& mesh, int t, int k, const QuadratureSet& quad);

/// h_T^{-1} sum over edges of the Gram matrix of v_0 - v_b.
Eigen::MatrixXd local_stabilizer(const Mesh& mesh, int t, int k, const QuadratureSet& quad);
Eigen::MatrixXd local_stabilizer(const Mesh& mesh, int t, int k);

/// G^T M_a G with G the weak-gradient map and M_a the a-weighted vector mass.
Eigen::MatrixXd local_b(const Mesh& mesh, int t, int k, const Diffusion& a, const QuadratureSet& quad);
Eigen::MatrixXd local_b(const Mesh& mesh, int t, int k, const Diffusion& a);

/// Per-triangle weak-gradient maps, stabilizers and b-forms, computed once.
class LocalOperators {
 public:
  LocalOperators(const Mesh& mesh, int k, Diffusion a = Diffusion::identity());

  int degree() const { return degree_; }
  const Mesh& mesh() const { return *mesh_; }
  const Diffusion& diffusion() const { return diffusion_; }
  const QuadratureSet& quadrature() const { return quad_; }

  const Eigen::MatrixXd& gradient_map(int t) const { return gradient_[t]; }
  const Eigen::MatrixXd& stabilizer(int t) const { return stabilizer_[t]; }
  const Eigen::MatrixXd& b_form(int t) const { return b_[t]; }

  /// Weak gradient of a whole weak function, triangle by triangle.
  PiecewiseVectorField weak_gradient(const WeakFunction& v) const;
  /// s(v, w) = sum over triangles of the local stabilizer forms.
  double stabilizer_form(const WeakFunction& v, const WeakFunction& w) const;
  /// b(v, w) = sum over triangles of (a grad_w v, grad_w w).
  double b_form(const WeakFunction& v, const WeakFunction& w) const;

 private:
  const Mesh* mesh_;
  int degree_;
  Diffusion diffusion_;
  QuadratureSet quad_;
  std::vector<Eigen::MatrixXd> gradient_;
  std::vector<Eigen::MatrixXd> trace_difference_;
  std::vector<Eigen::MatrixXd> mass_;
  std::vector<Eigen::MatrixXd> stabilizer_;
  std::vector<Eigen::MatrixXd> b_;
};

}  // namespace pdwg
