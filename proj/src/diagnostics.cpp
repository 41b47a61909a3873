#include "nlc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nlc/error.hpp"
#include "nlc/solver.hpp"
#include "nlc/spectral_ops.hpp"

namespace nlc::diag {
namespace sp = nlc::spectral;

namespace {

/// vol * sum over non-Nyquist modes of |k|^(2 power) |c_k|^2
double weighted_norm_sq(const SpectralField& f, int power) {
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.is_nyquist(i)) continue;
    acc += std::pow(g.k_squared(i), power) * std::norm(f[i]);
  }
  return acc * g.volume();
}

double weighted_norm_sq(const VectorField& v, int power) {
  double acc = 0.0;
  for (const auto& c : v) acc += weighted_norm_sq(c, power);
  return acc;
}

double max_abs(const Samples& s) {
  double m = 0.0;
  for (double v : s) m = std::max(m, std::abs(v));
  return m;
}

/// grad_d[a][i] = d_i d_a in physical space.
std::vector<std::vector<Samples>> director_gradient(const VectorField& d) {
  std::vector<std::vector<Samples>> out(d.size());
  for (int a = 0; a < d.size(); ++a)
    for (int i = 0; i < d.grid().dim(); ++i) out[a].push_back(sp::from_spectral(sp::derivative(d[a], i)));
  return out;
}

Samples gradient_energy_density(const std::vector<std::vector<Samples>>& grad_d, std::size_t size) {
  Samples e(size, 0.0);
  for (const auto& comp : grad_d)
    for (const auto& part : comp)
      for (std::size_t x = 0; x < size; ++x) e[x] += part[x] * part[x];
  return e;
}

double vorticity_sup(const VectorField& u) {
  if (u.grid().dim() == 2) return max_abs(sp::from_spectral(sp::curl_2d(u)));
  return sp::lp_norm(sp::curl_3d(u), sp::kInfinity);
}

/// (v.grad) w, physical in, spectral out, no dealiasing.
VectorField advect(const std::vector<Samples>& v, const VectorField& w) {
  const Grid& g = w.grid();
  std::vector<SpectralField> out;
  for (const auto& comp : w) {
    Samples acc(g.size(), 0.0);
    for (int i = 0; i < g.dim(); ++i) {
      const Samples di = sp::from_spectral(sp::derivative(comp, i));
      for (std::size_t x = 0; x < g.size(); ++x) acc[x] += v[i][x] * di[x];
    }
    out.push_back(sp::to_spectral(g, acc));
  }
  return VectorField(std::move(out));
}

/// (u.grad) u + lambda div(grad d (.) grad d), the forcing whose gradient part is -grad P.
VectorField momentum_forcing(const State& s, double lambda) {
  VectorField a = sp::dealias(advect(sp::from_spectral(s.u), s.u));
  VectorField stress = solver::stress_divergence(s.d, true);
  stress *= lambda;
  a += stress;
  return a;
}

double trapezoid(double acc, double prev, double cur, double dt) { return acc + 0.5 * dt * (prev + cur); }

}  // namespace

double energy(const State& s) { return sp::l2_norm_squared(s.u) + weighted_norm_sq(s.d, 1); }

double dissipation(const State& s) {
  const Grid& g = s.grid();
  const auto grad_d = director_gradient(s.d);
  const Samples e = gradient_energy_density(grad_d, g.size());
  double tension = 0.0;
  for (int a = 0; a < 3; ++a) {
    const Samples lap = sp::from_spectral(sp::laplacian(s.d[a]));
    const Samples da = sp::from_spectral(s.d[a]);
    for (std::size_t x = 0; x < g.size(); ++x) {
      const double v = lap[x] + e[x] * da[x];
      tension += v * v;
    }
  }
  return weighted_norm_sq(s.u, 1) + tension * g.cell_volume();
}

CriterionQuantities criterion_quantities(const lp::DyadicCutoffBank& bank, const State& s) {
  const lp::BesovIndex idx{-1.0, sp::kInfinity, sp::kInfinity};
  CriterionQuantities q;
  for (const auto& c : s.u) q.besov_u = std::max(q.besov_u, lp::besov_norm(bank, c, idx));
  for (const auto& c : s.d)
    for (int j = 0; j < s.grid().dim(); ++j)
      q.besov_grad_d = std::max(q.besov_grad_d, lp::besov_norm(bank, sp::derivative(c, j), idx));
  return q;
}

bool criterion_satisfied(int dim, const CriterionQuantities& q, double epsilon0) {
  const double value = dim == 3 ? std::max(q.besov_u, q.besov_grad_d) : q.besov_grad_d;
  return value <= epsilon0;
}

IdentityReport identity_checks(const State& s) {
  const Grid& g = s.grid();
  IdentityReport r;
  const VectorField a = solver::stress_divergence(s.d, false);
  const VectorField b = solver::stress_divergence_split(s.d, false);
  r.stress_routes = sp::lp_norm(a - b, sp::kInfinity);

  const Samples e = gradient_energy_density(director_gradient(s.d), g.size());
  Samples c(g.size(), 0.0);
  for (int k = 0; k < 3; ++k) {
    const Samples lap = sp::from_spectral(sp::laplacian(s.d[k]));
    const Samples dk = sp::from_spectral(s.d[k]);
    for (std::size_t x = 0; x < g.size(); ++x) c[x] += lap[x] * dk[x];
  }
  for (std::size_t x = 0; x < g.size(); ++x) c[x] += e[x];
  r.director_constraint = max_abs(c);
  r.divergence = solver::divergence_max(s.u);
  return r;
}

SpectralField pressure_recover(const State& s, double lambda) {
  const Grid& g = s.grid();
  const SpectralField div = sp::divergence(momentum_forcing(s, lambda));
  SpectralField p(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double k2 = g.k_squared(i);
    if (k2 > 0.0) p[i] = div[i] / k2;
  }
  return p;
}

double momentum_residual(const State& s, const SpectralField& pressure, double nu, double lambda) {
  VectorField ut = solver::velocity_rhs(s.u, s.d, lambda, true);
  for (int c = 0; c < s.u.size(); ++c) ut[c] += nu * sp::laplacian(s.u[c]);
  VectorField r = ut;
  for (int c = 0; c < s.u.size(); ++c) r[c] -= nu * sp::laplacian(s.u[c]);
  r += momentum_forcing(s, lambda);
  r += sp::gradient(pressure);
  return sp::lp_norm(r, sp::kInfinity);
}

Integrands integrands(const State& s, const MonitorConfig& cfg) {
  Integrands out;
  if (cfg.acc_h2) out.h2 = weighted_norm_sq(s.u, 2) + weighted_norm_sq(s.d, 3);
  if (cfg.acc_bkm || cfg.acc_hw) {
    const double w = vorticity_sup(s.u);
    if (cfg.acc_bkm) out.bkm = w;
    if (cfg.acc_hw) {
      const Samples e = gradient_energy_density(director_gradient(s.d), s.grid().size());
      out.hw = w + *std::max_element(e.begin(), e.end());
    }
  }
  if (cfg.acc_llw) {
    const Samples e = gradient_energy_density(director_gradient(s.d), s.grid().size());
    double acc = 0.0;
    for (double v : e) acc += v * v;
    out.llw = acc * s.grid().cell_volume();
  }
  return out;
}

DiagnosticsRecord instantaneous(const lp::DyadicCutoffBank& bank, const State& s) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.energy = energy(s);
  r.dissipation = dissipation(s);
  const CriterionQuantities q = criterion_quantities(bank, s);
  r.besov_u = q.besov_u;
  r.besov_grad_d = q.besov_grad_d;
  r.grad_u_L2 = std::sqrt(weighted_norm_sq(s.u, 1));
  r.delta_d_L2 = std::sqrt(weighted_norm_sq(s.d, 2));
  r.div_u_max = solver::divergence_max(s.u);
  r.sphere_defect_max = solver::sphere_defect(s.d);
  return r;
}

DiagnosticsRecord initial_record(const lp::DyadicCutoffBank& bank, const State& s, const MonitorConfig& cfg) {
  DiagnosticsRecord r = instantaneous(bank, s);
  r.integrands = integrands(s, cfg);
  r.criterion_ok = criterion_satisfied(s.grid().dim(), {r.besov_u, r.besov_grad_d}, cfg.epsilon0);
  return r;
}

DiagnosticsRecord accumulate(const lp::DyadicCutoffBank& bank, const DiagnosticsRecord& prev, const State& s,
                             double dt, const MonitorConfig& cfg) {
  if (!(dt > 0.0)) throw ConfigError("accumulate requires dt > 0");
  DiagnosticsRecord r = instantaneous(bank, s);
  r.integrands = integrands(s, cfg);
  r.acc_H2 = trapezoid(prev.acc_H2, prev.integrands.h2, r.integrands.h2, dt);
  r.acc_bkm = trapezoid(prev.acc_bkm, prev.integrands.bkm, r.integrands.bkm, dt);
  r.acc_hw = trapezoid(prev.acc_hw, prev.integrands.hw, r.integrands.hw, dt);
  r.acc_llw = trapezoid(prev.acc_llw, prev.integrands.llw, r.integrands.llw, dt);
  r.criterion_ok =
      prev.criterion_ok && criterion_satisfied(s.grid().dim(), {r.besov_u, r.besov_grad_d}, cfg.epsilon0);
  r.blowup_flag = prev.blowup_flag;
  return r;
}

State rescale_dyadic(const State& s) {
  const Grid& g = s.grid();
  const Grid big(g.dim(), 2 * g.n());
  auto image = [&](const SpectralField& f, double factor) {
    SpectralField out(big);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (f[i] == Complex(0.0)) continue;
      std::array<int, 3> k{0, 0, 0};
      for (int a = 0; a < g.dim(); ++a) k[a] = 2 * g.wavenumber(i, a);
      out[big.index_of(k)] = factor * f[i];
    }
    return out;
  };
  std::vector<SpectralField> u, d;
  for (const auto& c : s.u) u.push_back(image(c, 2.0));
  for (const auto& c : s.d) d.push_back(image(c, 1.0));
  return State{s.t / 4.0, s.steps, VectorField(std::move(u)), VectorField(std::move(d))};
}

double lp_norm_cell(const VectorField& v, double p, int period) {
  const Grid& g = v.grid();
  if (period < 1 || g.n() % period != 0) throw ConfigError("cell period must divide the grid size");
  const double edge = 2.0 * std::numbers::pi / period;
  const Samples mod = sp::modulus(sp::from_spectral(v));
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool inside = true;
    for (int a = 0; a < g.dim(); ++a) inside = inside && g.coordinate(i, a) < edge - 1e-12;
    if (!inside) continue;
    acc = std::isinf(p) ? std::max(acc, mod[i]) : acc + std::pow(mod[i], p);
  }
  return std::isinf(p) ? acc : std::pow(acc * g.cell_volume(), 1.0 / p);
}

}  // namespace nlc::diag
