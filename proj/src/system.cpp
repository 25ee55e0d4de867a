#include "pdwg/system.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

namespace pdwg {

ProblemData ProblemData::from_case(const CaseSpec& c) {
  ProblemData data;
  data.f = c.f;
  data.g1 = c.g1;
  data.g2 = c.g2;
  data.diffusion = c.diffusion;
  return data;
}

void SaddleSystem::expand(const Eigen::VectorXd& x, WeakFunction& u, WeakFunction& lambda) const {
  u = lift_u;
  lambda = WeakFunction(dofs.layout());
  for (int i = 0; i < dofs.n_dofs(); ++i) {
    const int iu = dofs.system_index(Field::U, i);
    if (iu >= 0) u.coefficients()[i] = x[iu];
    const int il = dofs.system_index(Field::Lambda, i);
    if (il >= 0) lambda.coefficients()[i] = x[il];
  }
}

SaddleSystem assemble(const LocalOperators& ops, const BoundaryConfig& config, const ProblemData& data) {
  const Mesh& mesh = ops.mesh();
  const int k = ops.degree();
  config.check_compatible(mesh);
  if (config.has_neumann() && !data.g2) throw std::invalid_argument("Neumann segment is nonempty but g_2 is missing");
  if (config.has_dirichlet() && !data.g1) throw std::invalid_argument("Dirichlet segment is nonempty but g_1 is missing");
  if (!data.f) throw std::invalid_argument("load function f is missing");

  SaddleSystem sys;
  sys.mesh = &mesh;
  sys.dofs = DofMap(mesh, k, config);
  const DofMap& dofs = sys.dofs;
  const DofLayout& layout = dofs.layout();
  const QuadratureSet& quad = ops.quadrature();

  sys.lift_u = WeakFunction(layout);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (config.in_gamma_d(e)) sys.lift_u.boundary(e) = project_Qb(data.g1, mesh, e, k, quad);
  }

  // Load vector F(w) = (f, w_0) + <g_2, w_b>_{Gamma_n} over all dofs.
  Eigen::VectorXd load = Eigen::VectorXd::Zero(layout.n_dofs());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const ElementBasis basis(mesh, t, k);
    const MappedQuadrature cell = map_to_triangle(quad.triangle, mesh, t);
    auto block = load.segment(layout.element_offset(t), layout.element_block());
    for (int q = 0; q < cell.size(); ++q) block += cell.weights[q] * data.f(cell.points[q]) * basis.values(cell.points[q]);
  }
  for (int e = 0; e < mesh.n_edges(); ++e) {
    if (!config.in_gamma_n(e)) continue;
    const Edge& edge = mesh.edge(e);
    const Point n = mesh.outward_normal(edge.triangles[0], mesh.local_edge_index(edge.triangles[0], e));
    const EdgeBasis basis(mesh, e, k);
    const MappedQuadrature face = map_to_edge(quad.segment, mesh, e);
    auto block = load.segment(layout.edge_offset(e), layout.edge_block());
    for (int q = 0; q < face.size(); ++q) block += face.weights[q] * data.g2(face.points[q], n) * basis.values(face.points[q]);
  }

  sys.rhs = Eigen::VectorXd::Zero(dofs.system_size());
  for (int i = 0; i < layout.n_dofs(); ++i) {
    const int row = dofs.system_index(Field::Lambda, i);
    if (row >= 0) sys.rhs[row] = load[i];
  }

  std::vector<Eigen::Triplet<double>> triplets;
  const std::size_t local = static_cast<std::size_t>(layout.local_size());
  triplets.reserve(static_cast<std::size_t>(mesh.n_triangles()) * local * local * 4);
  const Eigen::VectorXd& lift = sys.lift_u.coefficients();
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const std::vector<int> ids = dofs.local_dofs(mesh, t);
    const Eigen::MatrixXd& s = ops.stabilizer(t);
    const Eigen::MatrixXd& b = ops.b_form(t);
    const int n = static_cast<int>(ids.size());
    for (int i = 0; i < n; ++i) {
      const int row_u = dofs.system_index(Field::U, ids[i]);
      const int row_l = dofs.system_index(Field::Lambda, ids[i]);
      for (int j = 0; j < n; ++j) {
        const int col_u = dofs.system_index(Field::U, ids[j]);
        const int col_l = dofs.system_index(Field::Lambda, ids[j]);
        if (row_u >= 0) {
          // -(s(u_h, v) - b(v, lambda_h)) = 0
          if (col_u >= 0) {
            triplets.emplace_back(row_u, col_u, -s(i, j));
          } else {
            sys.rhs[row_u] += s(i, j) * lift[ids[j]];
          }
          if (col_l >= 0) triplets.emplace_back(row_u, col_l, b(i, j));
        }
        if (row_l >= 0) {
          // s(lambda_h, w) + b(u_h, w) = F(w)
          if (col_u >= 0) {
            triplets.emplace_back(row_l, col_u, b(i, j));
          } else {
            sys.rhs[row_l] -= b(i, j) * lift[ids[j]];
          }
          if (col_l >= 0) triplets.emplace_back(row_l, col_l, s(i, j));
        }
      }
    }
  }
  sys.matrix.resize(dofs.system_size(), dofs.system_size());
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  return sys;
}

SaddleSystem assemble(const Mesh& mesh, const BoundaryConfig& config, const CaseSpec& c, int k) {
  const LocalOperators ops(mesh, k, c.diffusion);
  return assemble(ops, config, ProblemData::from_case(c));
}

const char* status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Ok:
      return "ok";
    case SolveStatus::MultiplierKernel:
      return "multiplier-kernel";
    case SolveStatus::Singular:
      return "singular";
  }
  return "?";
}

namespace {

using SparseLU = Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>>;

constexpr int kProbeVectors = 6;
constexpr int kProbeIterations = 4;
// A Ritz pair with ||A y|| below this fraction of ||A||_1 counts as a null vector.
constexpr double kKernelTolerance = 1e-10;
// Largest u component a null vector may carry and still count as multiplier-only.
constexpr double kPrimalKernelTolerance = 1e-6;
constexpr double kResidualTolerance = 1e-9;
// Relative size of the right-hand side along a multiplier null vector that is
// still attributed to quadrature error.
constexpr double kIncompatibilityTolerance = 1e-3;
// Systems up to this size get their null space from a dense SVD.
constexpr int kDenseLimit = 800;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double norm1(const Eigen::SparseMatrix<double>& a) {
  double best = 0.0;
  for (int j = 0; j < a.outerSize(); ++j) {
    double sum = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, j); it; ++it) sum += std::abs(it.value());
    best = std::max(best, sum);
  }
  return best;
}

bool factorize(const Eigen::SparseMatrix<double>& a, SparseLU& lu, std::string& message) {
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success) {
    message = "sparse LU failed: " + lu.lastErrorMessage();
    return false;
  }
  return true;
}

Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& z) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  return qr.householderQ() * Eigen::MatrixXd::Identity(z.rows(), z.cols());
}

}  // namespace

SolveResult solve(const SaddleSystem& sys) {
  SolveResult result;
  const Eigen::SparseMatrix<double>& a = sys.matrix;
  const int n = sys.size();
  if (n == 0) {
    sys.expand(Eigen::VectorXd(), result.u, result.lambda);
    return result;
  }

  Eigen::VectorXd x;
  Eigen::MatrixXd y;
  Eigen::MatrixXd ay;
  const double a_norm = norm1(a);
  if (n <= kDenseLimit) {
    const Eigen::MatrixXd dense(a);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    int rank = 0;
    while (rank < n && sigma(rank) > kKernelTolerance * a_norm) ++rank;
    x = svd.matrixV().leftCols(rank) *
        (sigma.head(rank).cwiseInverse().asDiagonal() * (svd.matrixU().leftCols(rank).transpose() * sys.rhs));
    y = svd.matrixV().rightCols(n - rank);
    ay = dense * y;
  } else {
    SparseLU lu;
    if (!factorize(a, lu, result.message)) {
      result.status = SolveStatus::Singular;
      result.relative_residual = std::numeric_limits<double>::infinity();
      result.u = WeakFunction(sys.dofs.layout());
      result.lambda = WeakFunction(sys.dofs.layout());
      return result;
    }
    x = lu.solve(sys.rhs);

    // Inverse subspace iteration captures the eigenvectors of smallest |eigenvalue|.
    const int r = std::min(kProbeVectors, n);
    std::mt19937 rng(20190101u);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd z(n, r);
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < n; ++i) z(i, j) = normal(rng);
    }
    z = orthonormalize(z);
    for (int iter = 0; iter < kProbeIterations; ++iter) {
      Eigen::MatrixXd w(n, r);
      for (int j = 0; j < r; ++j) w.col(j) = lu.solve(z.col(j));
      if (!w.allFinite()) break;
      z = orthonormalize(w);
    }
    const Eigen::MatrixXd az = a * z;
    const Eigen::MatrixXd h = z.transpose() * az;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(0.5 * (h + h.transpose()));
    y = z * ritz.eigenvectors();
    ay = az * ritz.eigenvectors();
  }

  const int n_u = sys.dofs.n_free(Field::U);
  std::vector<int> kernel;
  bool primal_kernel = false;
  for (int j = 0; j < y.cols(); ++j) {
    if (ay.col(j).norm() <= kKernelTolerance * a_norm) {
      kernel.push_back(j);
      if (y.col(j).head(n_u).norm() > kPrimalKernelTolerance) primal_kernel = true;
    }
  }
  result.kernel_dimension = static_cast<int>(kernel.size());

  // On a multiplier kernel the right-hand side is only consistent up to
  // quadrature error; its kernel component is measured and then dropped.
  Eigen::VectorXd b = sys.rhs;
  double incompatibility = 0.0;
  if (!kernel.empty() && !primal_kernel) {
    for (int j : kernel) x -= y.col(j).dot(x) * y.col(j);
    Eigen::MatrixXd basis(n, static_cast<int>(kernel.size()));
    for (std::size_t i = 0; i < kernel.size(); ++i) basis.col(static_cast<int>(i)) = y.col(kernel[i]);
    basis = orthonormalize(basis);
    const Eigen::VectorXd along = basis * (basis.transpose() * b);
    incompatibility = sys.rhs.norm() > 0.0 ? along.norm() / sys.rhs.norm() : 0.0;
    b -= along;
  }

  result.incompatibility = incompatibility;
  const double b_norm = sys.rhs.norm();
  const double res = (a * x - b).norm();
  const double scale = b_norm + a_norm * x.norm();
  result.relative_residual = scale > 0.0 ? res / scale : res;
  sys.expand(x, result.u, result.lambda);

  if (primal_kernel) {
    result.status = SolveStatus::Singular;
    result.message = "null space of dimension " + std::to_string(kernel.size()) +
                     " involves u: the primal field is not determined by the data";
  } else if (!std::isfinite(result.relative_residual) || result.relative_residual > kResidualTolerance) {
    result.status = SolveStatus::Singular;
    result.message = "residual check failed: relative residual " + format_double(result.relative_residual);
  } else if (incompatibility > kIncompatibilityTolerance) {
    result.status = SolveStatus::Singular;
    result.message = "right-hand side has a component " + format_double(incompatibility) +
                     " along the multiplier null space";
  } else if (!kernel.empty()) {
    result.status = SolveStatus::MultiplierKernel;
    result.message = "consistent singular system; null space of dimension " + std::to_string(kernel.size()) +
                     " lies in the multiplier; right-hand side component along it " +
                     format_double(incompatibility);
  }
  return result;
}

double condition_estimate(const SaddleSystem& sys) {
  const Eigen::SparseMatrix<double>& a = sys.matrix;
  const int n = sys.size();
  if (n == 0) return 0.0;
  SparseLU lu;
  std::string message;
  if (!factorize(a, lu, message)) return std::numeric_limits<double>::infinity();

  // Hager's estimate of ||A^{-1}||_1; A is symmetric so A^{-T} solves reuse the factors.
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
  double estimate = 0.0;
  int last_index = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const Eigen::VectorXd y = lu.solve(x);
    if (!y.allFinite()) return std::numeric_limits<double>::infinity();
    estimate = std::max(estimate, y.lpNorm<1>());
    Eigen::VectorXd xi(n);
    for (int i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const Eigen::VectorXd zv = lu.solve(xi);
    int index = 0;
    const double zmax = zv.cwiseAbs().maxCoeff(&index);
    if (zmax <= zv.dot(x) || index == last_index) break;
    last_index = index;
    x.setZero();
    x[index] = 1.0;
  }
  // Higham's alternating-sign vector guards against unlucky cancellation.
  Eigen::VectorXd alt(n);
  for (int i = 0; i < n; ++i) alt[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i) / std::max(1, n - 1));
  const Eigen::VectorXd y = lu.solve(alt);
  if (!y.allFinite()) return std::numeric_limits<double>::infinity();
  estimate = std::max(estimate, 2.0 * y.lpNorm<1>() / (3.0 * n));

  const double cond = norm1(a) * estimate;
  if (!std::isfinite(cond) || cond * std::numeric_limits<double>::epsilon() >= 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  return cond;
}

double dense_condition_number(const SaddleSystem& sys) {
  const Eigen::MatrixXd a = Eigen::MatrixXd(sys.matrix);
  if (a.rows() == 0) return 0.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd inv = lu.inverse();
  const double cond = a.cwiseAbs().colwise().sum().maxCoeff() * inv.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(cond) || cond * std::numeric_limits<double>::epsilon() >= 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  return cond;
}

void write_matrix_coordinates(std::ostream& os, const Eigen::SparseMatrix<double>& matrix) {
  const Eigen::SparseMatrix<double, Eigen::RowMajor> rows(matrix);
  const auto old_precision = os.precision(17);
  for (int i = 0; i < rows.outerSize(); ++i) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, i); it; ++it) {
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
  os.precision(old_precision);
}

}  // namespace pdwg
