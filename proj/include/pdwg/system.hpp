#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/SparseCore>

#include "pdwg/cases.hpp"
#include "pdwg/dofmap.hpp"
#include "pdwg/weak_ops.hpp"

namespace pdwg {

/// Data of the Cauchy problem: load f, Dirichlet trace g_1, Neumann flux g_2.
struct ProblemData {
  ScalarFunction f;
  ScalarFunction g1;
  FluxFunction g2;
  Diffusion diffusion = Diffusion::identity();

  static ProblemData from_case(const CaseSpec& c);
};

/// Coupled system over the free dofs, ordered (U free | Lambda free):
///
///   [ -S_uu   K_ul ] [U]   [ S_u,fixed lift         ]
///   [  K_lu   S_ll ] [L] = [ F - K_l,fixed lift     ]
///
/// The primal rows are negated with respect to s(u_h, v) - b(v, lambda_h) = 0
/// so that the matrix is symmetric.
struct SaddleSystem {
  const Mesh* mesh = nullptr;
  DofMap dofs;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  /// Full u field holding Q_b g_1 on Gamma_d edges and zero elsewhere.
  WeakFunction lift_u;
  bool primal_rows_negated = true;

  int size() const { return static_cast<int>(rhs.size()); }
  /// Splits a coupled vector into the two fields, inserting the fixed values.
  void expand(const Eigen::VectorXd& x, WeakFunction& u, WeakFunction& lambda) const;
};

SaddleSystem assemble(const LocalOperators& ops, const BoundaryConfig& config, const ProblemData& data);
SaddleSystem assemble(const Mesh& mesh, const BoundaryConfig& config, const CaseSpec& c, int k);

enum class SolveStatus {
  /// Nonsingular system.
  Ok,
  /// Singular but consistent, with a null space that only involves lambda.
  /// The returned lambda is orthogonal to that null space.
  MultiplierKernel,
  /// Factorization failed, the null space involves u, or the residual check
  /// failed.
  Singular,
};

const char* status_name(SolveStatus status);

struct SolveResult {
  WeakFunction u;
  WeakFunction lambda;
  SolveStatus status = SolveStatus::Ok;
  int kernel_dimension = 0;
  /// ||A x - b|| / (||b|| + ||A|| ||x||) in the 2-norm, A measured in the max row sum.
  double relative_residual = 0.0;
  /// Relative size of the right-hand side along the multiplier null space,
  /// removed before the residual check. Zero when there is no null space.
  double incompatibility = 0.0;
  std::string message;

  bool ok() const { return status != SolveStatus::Singular; }
};

/// Dense SVD for small systems, otherwise sparse LU with a null-space probe
/// by inverse subspace iteration.
SolveResult solve(const SaddleSystem& sys);

/// 1-norm condition number estimate (Hager-Higham with the sparse LU
/// factors); +infinity when the factorization fails.
double condition_estimate(const SaddleSystem& sys);

/// Exact 1-norm condition number from a dense LU; for small systems only.
double dense_condition_number(const SaddleSystem& sys);

/// `row col value` per nonzero, 0-based, sorted by row then column.
void write_matrix_coordinates(std::ostream& os, const Eigen::SparseMatrix<double>& matrix);

}  // namespace pdwg
