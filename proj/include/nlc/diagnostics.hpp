#pragma once

#include "nlc/littlewood_paley.hpp"
#include "nlc/spectral_field.hpp"
#include "nlc/state.hpp"

/// Monitored quantities on state snapshots: energy law, critical Besov
/// criterion quantities, higher Sobolev norms, vorticity-type accumulators and
/// pointwise identity residuals.
///
/// Besov quantities are lattice surrogates: the sup over shells covers only
/// shells that meet the lattice (see lp::DyadicCutoffBank).
namespace nlc::diag {

/// Time integrands of the accumulators at one instant.
struct Integrands {
  double h2 = 0.0;   // ||grad^2 u||^2 + ||grad Lap d||^2
  double bkm = 0.0;  // ||omega||_inf
  double hw = 0.0;   // ||omega||_inf + ||grad d||_inf^2
  double llw = 0.0;  // ||grad d||_{L4}^4
};

struct DiagnosticsRecord {
  double t = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double besov_u = 0.0;
  double besov_grad_d = 0.0;
  double grad_u_L2 = 0.0;
  double delta_d_L2 = 0.0;
  double acc_H2 = 0.0;
  double acc_bkm = 0.0;
  double acc_hw = 0.0;
  double acc_llw = 0.0;
  double div_u_max = 0.0;
  double sphere_defect_max = 0.0;
  bool criterion_ok = true;
  bool blowup_flag = false;

  Integrands integrands;  // values at t, carried for the next trapezoid update
};

struct MonitorConfig {
  double epsilon0 = 0.1;
  int cadence = 1;  // emit a record every `cadence` steps
  bool acc_h2 = true;
  bool acc_bkm = true;
  bool acc_hw = true;
  bool acc_llw = true;
};

/// ||u||_L2^2 + ||grad d||_L2^2
double energy(const State& state);
/// ||grad u||_L2^2 + ||Lap d + |grad d|^2 d||_L2^2
double dissipation(const State& state);

struct CriterionQuantities {
  double besov_u = 0.0;       // max_i ||u_i||_{B^{-1}_{inf,inf}}
  double besov_grad_d = 0.0;  // max_{i,j} ||d_j d_i||_{B^{-1}_{inf,inf}}
};

CriterionQuantities criterion_quantities(const lp::DyadicCutoffBank& bank, const State& state);

/// In 3D the pair (u, grad d) is tested, in 2D only grad d.
bool criterion_satisfied(int dim, const CriterionQuantities& q, double epsilon0);

struct IdentityReport {
  double stress_routes = 0.0;         // max |div(grad d (.) grad d) - Lap d . grad d - grad |grad d|^2 / 2|
  double director_constraint = 0.0;   // max |Lap d . d + |grad d|^2|
  double divergence = 0.0;            // max |div u|
};

IdentityReport identity_checks(const State& state);

/// Zero-mean P solving -Lap P = div((u.grad) u + lambda div(grad d (.) grad d)).
SpectralField pressure_recover(const State& state, double lambda = 1.0);

/// max |u_t - nu Lap u + (u.grad) u + grad P + lambda div(grad d (.) grad d)|
/// with u_t taken from the solver right-hand side.
double momentum_residual(const State& state, const SpectralField& pressure, double nu = 1.0, double lambda = 1.0);

Integrands integrands(const State& state, const MonitorConfig& config);

/// Record at the start of a run: accumulators zero, instantaneous fields evaluated.
DiagnosticsRecord initial_record(const lp::DyadicCutoffBank& bank, const State& state, const MonitorConfig& config);

/// Trapezoidal update of the accumulators from `prev` over `dt`, instantaneous
/// fields recomputed on `state`, criterion_ok as a running conjunction.
DiagnosticsRecord accumulate(const lp::DyadicCutoffBank& bank, const DiagnosticsRecord& prev, const State& state,
                             double dt, const MonitorConfig& config);

/// Instantaneous fields only; accumulators, criterion_ok and blowup_flag are
/// left at their defaults.
DiagnosticsRecord instantaneous(const lp::DyadicCutoffBank& bank, const State& state);

/// Exact dyadic image (2 u(2x), d(2x)) placed on a grid with twice as many
/// points per axis, so that every grid point maps to a grid point.
State rescale_dyadic(const State& state);

/// Lp norm of |v| integrated over the sub-cell [0, 2pi/period)^n only. The
/// cell must be resolved by whole grid points.
double lp_norm_cell(const VectorField& v, double p, int period);

}  // namespace nlc::diag
