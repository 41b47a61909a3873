#pragma once

#include <string>

#include "nlc/spectral_field.hpp"
#include "nlc/state.hpp"

/// Pseudo-spectral time stepping of the simplified Ericksen-Leslie system
///
///   u_t - nu Lap u + (u.grad) u + grad P = -lambda div(grad d (.) grad d),  div u = 0,
///   d_t + (u.grad) d = gamma (Lap d + |grad d|^2 d),                        |d| = 1,
///
/// on the periodic box. Pressure is removed by Leray projection; the linear
/// diffusion is integrated exactly per mode; the sphere constraint is restored
/// by pointwise renormalization.
namespace nlc::solver {

enum class Scheme { IfRk2 };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 0.0;
  bool dealias = true;
  int renormalize_every = 1;
  Scheme scheme = Scheme::IfRk2;
  double nu = 1.0;
  double lambda = 1.0;
  double gamma = 1.0;
};

/// Blow-up threshold on ||u||_inf.
inline constexpr double kBlowupVelocity = 1e8;

/// div(grad d (.) grad d), component j = sum_i d_i (d_i d . d_j d), formed from the
/// physical-space stress tensor. The gradient part is kept.
VectorField stress_divergence(const VectorField& d, bool dealias = true);

/// Second route to the same vector: Lap d . d_j d + (1/2) d_j |grad d|^2.
VectorField stress_divergence_split(const VectorField& d, bool dealias = true);

/// -(u.grad) d + gamma |grad d|^2 d. The stiff gamma Lap d term is excluded.
VectorField director_rhs(const VectorField& u, const VectorField& d, double gamma = 1.0, bool dealias = true);

/// P[-(u.grad) u - lambda div(grad d (.) grad d)]. The stiff nu Lap u term is excluded.
VectorField velocity_rhs(const VectorField& u, const VectorField& d, double lambda = 1.0, bool dealias = true);

/// d / |d| pointwise. Throws ConstraintLoss if min |d| <= 0.5.
VectorField renormalize_director(const VectorField& d, bool dealias = true);

/// max |div u| over the grid.
double divergence_max(const VectorField& u);
/// max | |d(x)| - 1 | over the grid.
double sphere_defect(const VectorField& d);

/// Advective bound 0.5 / ((n/3)^2 max(||u||_inf, ||grad d||_inf)); infinite for a
/// motionless, uniform state.
double stability_bound(const State& state);

/// Throws ConfigError for an invalid config or a dt above stability_bound.
void check_config(const SolverConfig& config, const State& state);

/// Throws ConstraintLoss if the state violates the divergence or sphere
/// invariants beyond the given tolerances. The divergence tolerance is taken
/// relative to max(1, ||u||_inf).
void validate_state(const State& state, double divergence_tol = 1e-10, double sphere_tol = 1e-10);

struct StepResult {
  State state;
  bool blowup = false;
};

/// One integrating-factor Heun step. A non-finite coefficient or
/// ||u||_inf > kBlowupVelocity sets `blowup`; the returned state is then the
/// offending one and must not be stepped further.
StepResult step(const State& state, const SolverConfig& config);

}  // namespace nlc::solver
