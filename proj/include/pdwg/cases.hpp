#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "pdwg/projection.hpp"
#include "pdwg/weak_ops.hpp"

namespace pdwg {

/// Neumann data g_2(p, n) for a boundary point and its outward unit normal.
using FluxFunction = std::function<double(const Point&, const Point&)>;

/// Manufactured problem: exact solution, derived data and the boundary sides
/// carrying Dirichlet (g_1) and Neumann (g_2) data.
struct CaseSpec {
  std::string id;
  std::string description;
  ScalarFunction u;
  VectorFunction grad_u;
  /// f = -div(a grad u), in closed form.
  ScalarFunction f;
  Diffusion diffusion = Diffusion::identity();
  ScalarFunction g1;
  FluxFunction g2;
  std::set<Side> dirichlet_sides;
  std::set<Side> neumann_sides;
};

/// Outward unit normal of a side of the unit square.
Point side_normal(Side side);

/// Fills g_1 = u and g_2 = a grad u . n from the exact solution.
CaseSpec make_case(std::string id, std::string description, ScalarFunction u, VectorFunction grad_u,
                   ScalarFunction f, std::set<Side> dirichlet, std::set<Side> neumann);

/// All manufactured cases of the convergence tables, ids t1 ... t14c.
const std::vector<CaseSpec>& catalog();

/// Throws std::invalid_argument for unknown ids.
const CaseSpec& find_case(const std::string& id);

struct CaseDiagnostics {
  bool ok = true;
  double max_pde_residual = 0.0;
  double max_gradient_residual = 0.0;
  double max_dirichlet_residual = 0.0;
  double max_neumann_residual = 0.0;
  /// Offending point and check on failure.
  std::string message;
};

/// Checks f against -div(a grad u) by second-order finite differences at
/// random interior points, the closed-form gradient, and the g_1 and g_2
/// traces at random points of every side.
CaseDiagnostics validate_case(const CaseSpec& c, unsigned seed = 7);

}  // namespace pdwg
