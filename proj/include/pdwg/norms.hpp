#pragma once

#include <utility>

#include "pdwg/dofmap.hpp"
#include "pdwg/projection.hpp"
#include "pdwg/weak_ops.hpp"

namespace pdwg {

struct ErrorReport {
  double l2_e0 = 0.0;         ///< ||e_0||
  double h1_e0 = 0.0;         ///< broken ||grad e_0||
  double resid_u = 0.0;       ///< |||e_h|||_{h, Gamma_d}
  double resid_lambda = 0.0;  ///< |||lambda_h|||_{h, Gamma_n^c}
  double stab_u = 0.0;        ///< s(e_h, e_h)^{1/2}
  double strong_u = 0.0;      ///< |||e_h|||_{Gamma_d}
  double strong_lambda = 0.0; ///< |||lambda_h|||_{Gamma_n^c}
};

/// Squared contributions of one scaled residual norm.
struct ResidualTerms {
  double divergence = 0.0;  ///< sum_T h_T^2 ||div(a q)||_T^2
  double jump = 0.0;        ///< sum_e w_e ||[a q . n]||_e^2
  double stabilizer = 0.0;  ///< s(v, v)

  double norm() const;
};

/// Which boundary edges enter the jump sum besides all interior edges.
enum class EdgeSelection {
  NotGammaNComplement,  ///< boundary edges on Gamma_n (norms for u)
  NotGammaD,            ///< boundary edges off Gamma_d (norms for lambda)
};

/// Flux used inside the residual norm.
enum class FluxKind {
  Weak,      ///< a grad_w v
  Interior,  ///< a grad v_0
};

/// e_h = u_h - Q_h u.
WeakFunction error_fields(const WeakFunction& u_h, const ScalarFunction& u, const Mesh& mesh, int k);

/// ||v_0|| over the whole mesh.
double l2_interior(const WeakFunction& v, const Mesh& mesh);
/// Elementwise ||grad v_0||, summed in quadrature.
double broken_h1(const WeakFunction& v, const Mesh& mesh);

/// grad v_0 per triangle, exactly represented in [P_{k-1}]^2.
PiecewiseVectorField interior_gradient_field(const WeakFunction& v, const Mesh& mesh);

ResidualTerms residual_terms(const WeakFunction& v, const LocalOperators& ops, const BoundaryConfig& config,
                             EdgeSelection edges, FluxKind flux);

/// |||v|||_{h, Gamma_d}
double residual_norm_u(const WeakFunction& v, const LocalOperators& ops, const BoundaryConfig& config);
/// |||lambda|||_{h, Gamma_n^c}
double residual_norm_lambda(const WeakFunction& v, const LocalOperators& ops, const BoundaryConfig& config);
/// (|||v|||_{Gamma_d}, |||v|||_{Gamma_n^c}) with grad v_0 in place of grad_w v.
std::pair<double, double> strong_residual_norms(const WeakFunction& v, const LocalOperators& ops,
                                                const BoundaryConfig& config);

ErrorReport evaluate_errors(const WeakFunction& u_h, const WeakFunction& lambda_h, const ScalarFunction& u,
                            const LocalOperators& ops, const BoundaryConfig& config);

}  // namespace pdwg
