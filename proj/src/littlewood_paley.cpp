#include "nlc/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "nlc/error.hpp"

namespace nlc::lp {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double chi_profile(double r) { return smooth_step((1.0 - r) / (1.0 - kPlateauEdge)); }

double phi_profile(double r) { return chi_profile(0.5 * r) - chi_profile(r); }

double phi_normalized(double r) {
  if (r <= 0.0) return 0.0;
  const double num = phi_profile(r);
  if (num == 0.0) return 0.0;
  const int centre = int(std::floor(std::log2(r)));
  double den = 0.0;
  for (int l = centre - 3; l <= centre + 3; ++l) den += phi_profile(std::ldexp(r, -l));
  return num / den;
}

DyadicCutoffBank::DyadicCutoffBank(const Grid& grid) : grid_(grid) {
  if (grid.n() < 16)
    throw ConfigError("grid too small for a dyadic decomposition (n = " + std::to_string(grid.n()) +
                      ", need n >= 16)");
  std::map<int, std::vector<Entry>> shells;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k2 = grid.k_squared(i);
    if (k2 == 0.0) continue;
    const double r = std::sqrt(k2);
    const int centre = int(std::floor(std::log2(r)));
    for (int j = centre - 2; j <= centre + 2; ++j) {
      const double w = phi_normalized(std::ldexp(r, -j));
      if (w > 0.0) shells[j].push_back({i, w});
    }
  }
  j_min_ = shells.begin()->first;
  j_max_ = shells.rbegin()->first;
  shells_.resize(std::size_t(j_max_ - j_min_ + 1));
  for (auto& [j, entries] : shells) shells_[std::size_t(j - j_min_)] = std::move(entries);
}

const std::vector<DyadicCutoffBank::Entry>& DyadicCutoffBank::shell(int j) const {
  if (j < j_min_ || j > j_max_)
    throw ConfigError("dyadic index " + std::to_string(j) + " outside resolvable range [" +
                      std::to_string(j_min_) + ", " + std::to_string(j_max_) + "]");
  return shells_[std::size_t(j - j_min_)];
}

std::vector<double> DyadicCutoffBank::phi(int j) const {
  std::vector<double> out(grid_.size(), 0.0);
  for (const auto& e : shell(j)) out[e.index] = e.weight;
  return out;
}

std::vector<double> DyadicCutoffBank::chi(int j) const {
  if (j < j_min_ || j > j_max_ + 1)
    throw ConfigError("low-frequency index " + std::to_string(j) + " outside [" + std::to_string(j_min_) +
                      ", " + std::to_string(j_max_ + 1) + "]");
  std::vector<double> tail(grid_.size(), 0.0);
  for (int l = j; l <= j_max_; ++l)
    for (const auto& e : shells_[std::size_t(l - j_min_)]) tail[e.index] += e.weight;
  std::vector<double> out(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = grid_.k_squared(i) == 0.0 ? 0.0 : 1.0 - tail[i];
  return out;
}

SpectralField lp_block(const DyadicCutoffBank& bank, const SpectralField& f, int j) {
  if (!(f.grid() == bank.grid())) throw ConfigError("field grid does not match cutoff bank");
  SpectralField out(f.grid());
  for (const auto& e : bank.shell(j)) out[e.index] = e.weight * f[e.index];
  return out;
}

SpectralField low_freq_block(const DyadicCutoffBank& bank, const SpectralField& f, int j) {
  if (!(f.grid() == bank.grid())) throw ConfigError("field grid does not match cutoff bank");
  const std::vector<double> m = bank.chi(j);
  SpectralField out(f.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = m[i] * f[i];
  return out;
}

BesovResult besov_norm_detail(const DyadicCutoffBank& bank, const SpectralField& f, const BesovIndex& idx) {
  if (!(idx.p >= 1.0) || !(idx.q >= 1.0)) throw ConfigError("Besov exponents p, q must be >= 1");
  BesovResult res;
  res.j_min = bank.j_min();
  res.j_max = bank.j_max();
  res.j_argmax = bank.j_min();
  const bool sup = std::isinf(idx.q);
  double acc = 0.0;
  double best = -1.0;
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    const double term = std::exp2(j * idx.s) * spectral::lp_norm(lp_block(bank, f, j), idx.p);
    if (term > best) {
      best = term;
      res.j_argmax = j;
    }
    if (sup) acc = std::max(acc, term);
    else acc += std::pow(term, idx.q);
  }
  res.value = sup ? acc : std::pow(acc, 1.0 / idx.q);
  return res;
}

double besov_norm(const DyadicCutoffBank& bank, const SpectralField& f, const BesovIndex& idx) {
  return besov_norm_detail(bank, f, idx).value;
}

double sobolev_norm(const SpectralField& f, double s) {
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double k2 = g.k_squared(i);
    if (k2 == 0.0) continue;
    acc += std::pow(k2, s) * std::norm(f[i]);
  }
  return std::sqrt(acc * g.volume());
}

SpectralField fractional_laplacian(const SpectralField& f, double alpha) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double k2 = g.k_squared(i);
    if (k2 == 0.0) continue;
    out[i] = std::pow(k2, 0.5 * alpha) * f[i];
  }
  return out;
}

namespace {

double safe_ratio(double lhs, double rhs) {
  if (lhs == 0.0) return 0.0;
  return lhs / rhs;
}

}  // namespace

InterpolationAudit audit_interpolation(const DyadicCutoffBank& bank, const SpectralField& f, double alpha,
                                       double p, double q) {
  if (!(alpha > 0.0)) throw ConfigError("interpolation audit needs alpha > 0");
  if (!(q >= 1.0 && q < p && std::isfinite(p)))
    throw ConfigError("interpolation audit needs 1 <= q < p < inf");
  const SpectralField g = spectral::without_mean(f);
  InterpolationAudit out;
  out.theta = q / p;
  out.beta = alpha * (p / q - 1.0);
  out.lhs = spectral::lp_norm(g, p);
  out.low_factor = std::pow(besov_norm(bank, g, {-alpha, spectral::kInfinity, spectral::kInfinity}), 1.0 - out.theta);
  out.high_factor = std::pow(besov_norm(bank, g, {out.beta, q, q}), out.theta);
  out.ratio = safe_ratio(out.lhs, out.low_factor * out.high_factor);
  return out;
}

InterpolationAudit audit_interpolation_sobolev(const DyadicCutoffBank& bank, const SpectralField& f,
                                               double alpha, double p) {
  if (!(alpha > 0.0)) throw ConfigError("interpolation audit needs alpha > 0");
  if (!(p > 2.0 && std::isfinite(p))) throw ConfigError("Sobolev interpolation audit needs 2 < p < inf");
  const SpectralField g = spectral::without_mean(f);
  InterpolationAudit out;
  out.theta = 2.0 / p;
  out.beta = alpha * (p / 2.0 - 1.0);
  out.lhs = spectral::lp_norm(g, p);
  out.low_factor = std::pow(besov_norm(bank, g, {-alpha, spectral::kInfinity, spectral::kInfinity}), 1.0 - out.theta);
  out.high_factor = std::pow(sobolev_norm(g, out.beta), out.theta);
  out.ratio = safe_ratio(out.lhs, out.low_factor * out.high_factor);
  return out;
}

}  // namespace nlc::lp
