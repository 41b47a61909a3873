#include "nlc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "nlc/error.hpp"
#include "nlc/spectral_ops.hpp"

namespace nlc::solver {
namespace sp = nlc::spectral;

namespace {

SpectralField maybe_dealias(SpectralField f, bool dealias) { return dealias ? sp::dealias(f) : f; }

/// grad_d[a][i] = d_i d_a in physical space.
std::vector<std::vector<Samples>> director_gradient(const VectorField& d) {
  const int dim = d.grid().dim();
  std::vector<std::vector<Samples>> out(3);
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < dim; ++i) out[a].push_back(sp::from_spectral(sp::derivative(d[a], i)));
  return out;
}

Samples gradient_energy_density(const std::vector<std::vector<Samples>>& grad_d, std::size_t size) {
  Samples g(size, 0.0);
  for (const auto& comp : grad_d)
    for (const auto& part : comp)
      for (std::size_t x = 0; x < size; ++x) g[x] += part[x] * part[x];
  return g;
}

/// (v.grad) w for physical v and spectral w, returned as spectral components.
VectorField advect(const std::vector<Samples>& v, const VectorField& w, bool dealias) {
  const Grid& g = w.grid();
  std::vector<SpectralField> out;
  for (const auto& comp : w) {
    Samples acc(g.size(), 0.0);
    for (int i = 0; i < g.dim(); ++i) {
      const Samples di = sp::from_spectral(sp::derivative(comp, i));
      for (std::size_t x = 0; x < g.size(); ++x) acc[x] += v[i][x] * di[x];
    }
    out.push_back(maybe_dealias(sp::to_spectral(g, acc), dealias));
  }
  return VectorField(std::move(out));
}

VectorField stress_divergence_from(const std::vector<std::vector<Samples>>& grad_d, const Grid& g, bool dealias) {
  const int dim = g.dim();
  // sigma_ij = d_i d . d_j d (symmetric)
  std::vector<std::vector<SpectralField>> sigma(dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (j < i) {
        sigma[i].push_back(sigma[j][i]);
        continue;
      }
      Samples s(g.size(), 0.0);
      for (int a = 0; a < 3; ++a)
        for (std::size_t x = 0; x < g.size(); ++x) s[x] += grad_d[a][i][x] * grad_d[a][j][x];
      sigma[i].push_back(maybe_dealias(sp::to_spectral(g, s), dealias));
    }
  }
  std::vector<SpectralField> out;
  for (int j = 0; j < dim; ++j) {
    SpectralField acc(g);
    for (int i = 0; i < dim; ++i) acc += sp::derivative(sigma[i][j], i);
    out.push_back(std::move(acc));
  }
  return VectorField(std::move(out));
}

struct Nonlinear {
  VectorField velocity;
  VectorField director;
};

Nonlinear nonlinear_terms(const VectorField& u, const VectorField& d, const SolverConfig& cfg) {
  const Grid& g = u.grid();
  const std::vector<Samples> u_phys = sp::from_spectral(u);
  const std::vector<Samples> d_phys = sp::from_spectral(d);
  const auto grad_d = director_gradient(d);
  const Samples energy = gradient_energy_density(grad_d, g.size());

  VectorField vel = advect(u_phys, u, cfg.dealias);
  vel *= -1.0;
  VectorField stress = stress_divergence_from(grad_d, g, cfg.dealias);
  stress *= cfg.lambda;
  vel -= stress;

  std::vector<SpectralField> dir;
  for (int a = 0; a < 3; ++a) {
    Samples acc(g.size());
    for (std::size_t x = 0; x < g.size(); ++x) {
      double adv = 0.0;
      for (int i = 0; i < g.dim(); ++i) adv += u_phys[i][x] * grad_d[a][i][x];
      acc[x] = -adv + cfg.gamma * energy[x] * d_phys[a][x];
    }
    dir.push_back(maybe_dealias(sp::to_spectral(g, acc), cfg.dealias));
  }
  return {sp::leray_project(vel), VectorField(std::move(dir))};
}

/// exp(-coef |k|^2 dt) per mode.
std::vector<double> propagator(const Grid& g, double coef, double dt) {
  std::vector<double> e(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) e[i] = std::exp(-coef * g.k_squared(i) * dt);
  return e;
}

VectorField apply(const std::vector<double>& e, VectorField v) {
  for (auto& comp : v)
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= e[i];
  return v;
}

double max_gradient_modulus(const VectorField& d) {
  const auto grad_d = director_gradient(d);
  const Samples g = gradient_energy_density(grad_d, d.grid().size());
  double m = 0.0;
  for (double v : g) m = std::max(m, v);
  return std::sqrt(m);
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::IfRk2: return "if-rk2";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "if-rk2" || name == "IF-RK2") return Scheme::IfRk2;
  throw ConfigError("unknown scheme '" + name + "' (supported: if-rk2)");
}

VectorField stress_divergence(const VectorField& d, bool dealias) {
  if (d.size() != 3) throw ConfigError("director must have 3 components");
  return stress_divergence_from(director_gradient(d), d.grid(), dealias);
}

VectorField stress_divergence_split(const VectorField& d, bool dealias) {
  if (d.size() != 3) throw ConfigError("director must have 3 components");
  const Grid& g = d.grid();
  const auto grad_d = director_gradient(d);
  std::vector<Samples> lap;
  for (int a = 0; a < 3; ++a) lap.push_back(sp::from_spectral(sp::laplacian(d[a])));
  const SpectralField half_energy =
      0.5 * maybe_dealias(sp::to_spectral(g, gradient_energy_density(grad_d, g.size())), dealias);
  std::vector<SpectralField> out;
  for (int j = 0; j < g.dim(); ++j) {
    Samples s(g.size(), 0.0);
    for (int a = 0; a < 3; ++a)
      for (std::size_t x = 0; x < g.size(); ++x) s[x] += lap[a][x] * grad_d[a][j][x];
    out.push_back(maybe_dealias(sp::to_spectral(g, s), dealias) + sp::derivative(half_energy, j));
  }
  return VectorField(std::move(out));
}

VectorField director_rhs(const VectorField& u, const VectorField& d, double gamma, bool dealias) {
  SolverConfig cfg;
  cfg.gamma = gamma;
  cfg.dealias = dealias;
  return nonlinear_terms(u, d, cfg).director;
}

VectorField velocity_rhs(const VectorField& u, const VectorField& d, double lambda, bool dealias) {
  SolverConfig cfg;
  cfg.lambda = lambda;
  cfg.dealias = dealias;
  return nonlinear_terms(u, d, cfg).velocity;
}

VectorField renormalize_director(const VectorField& d, bool dealias) {
  const Grid& g = d.grid();
  std::vector<Samples> phys = sp::from_spectral(d);
  const Samples mod = sp::modulus(phys);
  const double min_mod = *std::min_element(mod.begin(), mod.end());
  if (!(min_mod > 0.5))
    throw ConstraintLoss(fmt::format("director modulus dropped to {:g} (<= 0.5); sphere geometry lost", min_mod));
  for (auto& comp : phys)
    for (std::size_t x = 0; x < g.size(); ++x) comp[x] /= mod[x];
  VectorField out = sp::to_spectral(g, phys);
  return dealias ? sp::dealias(out) : out;
}

double divergence_max(const VectorField& u) {
  const Samples div = sp::from_spectral(sp::divergence(u));
  return sp::lp_norm(u.grid(), div, sp::kInfinity);
}

double sphere_defect(const VectorField& d) {
  const Samples mod = sp::modulus(sp::from_spectral(d));
  double m = 0.0;
  for (double v : mod) m = std::max(m, std::abs(v - 1.0));
  return m;
}

double stability_bound(const State& s) {
  const double speed = std::max(sp::lp_norm(s.u, sp::kInfinity), max_gradient_modulus(s.d));
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  const double kmax = s.grid().n() / 3.0;
  return 0.5 / (kmax * kmax * speed);
}

void check_config(const SolverConfig& cfg, const State& state) {
  if (!(cfg.dt > 0.0)) throw ConfigError("solver.dt must be > 0");
  if (!(cfg.t_end >= 0.0)) throw ConfigError("solver.t_end must be >= 0");
  if (cfg.renormalize_every < 1) throw ConfigError("solver.renormalize_every must be >= 1");
  if (!(cfg.nu > 0.0)) throw ConfigError("solver.nu must be > 0");
  if (!(cfg.gamma > 0.0)) throw ConfigError("solver.gamma must be > 0");
  if (!(cfg.lambda >= 0.0)) throw ConfigError("solver.lambda must be >= 0");
  if (state.u.size() != state.grid().dim() || state.d.size() != 3)
    throw ConfigError("state must have dim velocity components and 3 director components");
  const double bound = stability_bound(state);
  if (cfg.dt > bound)
    throw ConfigError(fmt::format("solver.dt = {:g} exceeds the advective stability bound {:g}", cfg.dt, bound));
}

void validate_state(const State& state, double divergence_tol, double sphere_tol) {
  if (!state.u.all_finite() || !state.d.all_finite()) throw ConstraintLoss("state contains non-finite coefficients");
  const double div = divergence_max(state.u);
  const double allowed = divergence_tol * std::max(1.0, sp::lp_norm(state.u, sp::kInfinity));
  if (!(div < allowed)) throw ConstraintLoss(fmt::format("velocity divergence {:g} exceeds {:g}", div, allowed));
  const double defect = sphere_defect(state.d);
  if (!(defect < sphere_tol))
    throw ConstraintLoss(fmt::format("director sphere defect {:g} exceeds {:g}", defect, sphere_tol));
}

StepResult step(const State& s, const SolverConfig& cfg) {
  const Grid& g = s.grid();
  const double dt = cfg.dt;
  const auto eu = propagator(g, cfg.nu, dt);
  const auto ed = propagator(g, cfg.gamma, dt);

  const Nonlinear n0 = nonlinear_terms(s.u, s.d, cfg);
  const VectorField u_half = s.u + (0.5 * dt) * n0.velocity;
  const VectorField d_half = s.d + (0.5 * dt) * n0.director;
  const VectorField u_star = apply(eu, s.u + dt * n0.velocity);
  const VectorField d_star = apply(ed, s.d + dt * n0.director);

  StepResult out{State{s.t + dt, s.steps + 1, s.u, s.d}, false};
  if (!u_star.all_finite() || !d_star.all_finite()) {
    out.state.u = u_star;
    out.state.d = d_star;
    out.blowup = true;
    return out;
  }
  const Nonlinear n1 = nonlinear_terms(u_star, d_star, cfg);
  out.state.u = apply(eu, u_half) + (0.5 * dt) * n1.velocity;
  out.state.d = apply(ed, d_half) + (0.5 * dt) * n1.director;

  if (!out.state.u.all_finite() || !out.state.d.all_finite()) {
    out.blowup = true;
    return out;
  }
  if (out.state.steps % std::uint64_t(cfg.renormalize_every) == 0) {
    out.state.d = renormalize_director(out.state.d, cfg.dealias);
    out.state.u = sp::leray_project(out.state.u);
  }
  if (sp::lp_norm(out.state.u, sp::kInfinity) > kBlowupVelocity) out.blowup = true;
  return out;
}

}  // namespace nlc::solver
