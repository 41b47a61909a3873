#include "nlc/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "nlc/error.hpp"
#include "nlc/spectral_ops.hpp"

namespace nlc::audit {
namespace sp = nlc::spectral;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Calls fn(k) for every wavevector with 0 < max |k_i| <= band in a fixed order.
template <class Fn>
void for_each_wavevector(int dim, int band, Fn&& fn) {
  const int hi = band;
  const int zlo = dim == 3 ? -band : 0;
  const int zhi = dim == 3 ? band : 0;
  for (int kx = -hi; kx <= hi; ++kx)
    for (int ky = -hi; ky <= hi; ++ky)
      for (int kz = zlo; kz <= zhi; ++kz)
        if (kx != 0 || ky != 0 || kz != 0) fn(std::array<int, 3>{kx, ky, kz});
}

SpectralField symmetrize(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField h(g);
  for (std::size_t i = 0; i < g.size(); ++i) h[i] = 0.5 * (f[i] + std::conj(f[g.negated(i)]));
  return h;
}

double norm_k(const std::array<int, 3>& k) { return std::sqrt(double(k[0] * k[0] + k[1] * k[1] + k[2] * k[2])); }

SpectralField random_member(const Grid& g, int band, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  SpectralField f(g);
  for_each_wavevector(g.dim(), band, [&](const std::array<int, 3>& k) {
    const double re = normal(rng);
    const double im = normal(rng);
    f.mode(k) = std::pow(norm_k(k), -2.0) * Complex(re, im);
  });
  return symmetrize(f);
}

SpectralField bump_member(const Grid& g, int band, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> where(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> width(0.4, 0.9);
  const double x0[3] = {where(rng), where(rng), where(rng)};
  const double sigma = width(rng);
  SpectralField f(g);
  for_each_wavevector(g.dim(), band, [&](const std::array<int, 3>& k) {
    double phase = 0.0;
    for (int a = 0; a < g.dim(); ++a) phase += k[a] * x0[a];
    const double k2 = norm_k(k) * norm_k(k);
    f.mode(k) = std::exp(-0.5 * sigma * sigma * k2) * std::exp(Complex(0.0, -phase));
  });
  return f;
}

SpectralField mode_member(const Grid& g, int band, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(-band, band);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::array<int, 3> k{0, 0, 0};
  while (k[0] == 0 && k[1] == 0 && k[2] == 0)
    for (int a = 0; a < g.dim(); ++a) k[a] = pick(rng);
  const double phi = angle(rng);
  SpectralField f(g);
  f.mode(k) += 0.5 * std::exp(Complex(0.0, phi));
  f.mode({-k[0], -k[1], -k[2]}) += 0.5 * std::exp(Complex(0.0, -phi));
  return f;
}

double lambda_lp(const SpectralField& f, double s, double p) { return sp::lp_norm(lp::fractional_laplacian(f, s), p); }

double gradient_lp(const SpectralField& f, double p) { return sp::lp_norm(sp::gradient(f), p); }

Samples times(const Samples& a, const Samples& b) {
  Samples out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

void update(Row& row, double ratio) {
  if (!std::isfinite(ratio)) {
    ++row.skipped;
    return;
  }
  ++row.evaluated;
  row.max_ratio = std::max(row.max_ratio, ratio);
}

}  // namespace

std::vector<SpectralField> make_corpus(const Grid& grid, const CorpusSpec& spec) {
  if (spec.size < 1) throw ConfigError("audit.corpus_size must be >= 1");
  if (spec.band < 1) throw ConfigError("audit.band must be >= 1");
  if (grid.n() <= 4 * spec.band)
    throw ConfigError(fmt::format("audit grid n = {} must exceed 4 * band = {}", grid.n(), 4 * spec.band));
  std::vector<SpectralField> out;
  std::mt19937_64 rng(spec.seed);
  for (int i = 0; i < spec.size; ++i) {
    if (spec.zero_only) {
      out.emplace_back(grid);
      continue;
    }
    switch (i % 3) {
      case 0: out.push_back(random_member(grid, spec.band, rng)); break;
      case 1: out.push_back(bump_member(grid, spec.band, rng)); break;
      default: out.push_back(mode_member(grid, spec.band, rng)); break;
    }
  }
  return out;
}

std::vector<GnInequality> gn_inequalities(int dim) {
  if (dim == 2) {
    return {
        {"gn2.1 |grad f|_3 <= |f|^(1/3) |L^2 f|^(2/3)", 2, true, 1.0, 3.0, 0.0, 2.0, 2.0 / 3.0},
        {"gn2.2 |grad f|_3 <= |L f|^(5/6) |L^3 f|^(1/6)", 2, true, 1.0, 3.0, 1.0, 3.0, 1.0 / 6.0},
        {"gn2.3 |grad f|_6 <= |f|^(4/9) |L^3 f|^(5/9)", 2, true, 1.0, 6.0, 0.0, 3.0, 5.0 / 9.0},
        {"gn2.4 |L^2 f|_3 <= |L f|^(1/3) |L^3 f|^(2/3)", 2, false, 2.0, 3.0, 1.0, 3.0, 2.0 / 3.0},
        {"gn2.5 |grad f|_6 <= |L f|^(1/3) |L^2 f|^(2/3)", 2, true, 1.0, 6.0, 1.0, 2.0, 2.0 / 3.0},
        {"gn2.6 |L^2 f|_4 <= |L^2 f|^(3/4) |L^4 f|^(1/4)", 2, false, 2.0, 4.0, 2.0, 4.0, 1.0 / 4.0},
        {"gn2.7 |L^3 f|_3 <= |L^2 f|^(1/3) |L^4 f|^(2/3)", 2, false, 3.0, 3.0, 2.0, 4.0, 2.0 / 3.0},
    };
  }
  if (dim == 3) {
    return {
        {"gn3.1 |grad f|_3 <= |f|^(1/4) |L^2 f|^(3/4)", 3, true, 1.0, 3.0, 0.0, 2.0, 3.0 / 4.0},
        {"gn3.2 |grad f|_3 <= |L f|^(5/6) |L^4 f|^(1/6)", 3, true, 1.0, 3.0, 1.0, 4.0, 1.0 / 6.0},
        {"gn3.3 |L^3 f|_3 <= |L f|^(1/6) |L^4 f|^(5/6)", 3, false, 3.0, 3.0, 1.0, 4.0, 5.0 / 6.0},
        {"gn3.4 |L^4 f|_3 <= |L^2 f|^(1/6) |L^5 f|^(5/6)", 3, false, 4.0, 3.0, 2.0, 5.0, 5.0 / 6.0},
        {"gn3.5 |L^2 f|_4 <= |L^2 f|^(3/4) |L^5 f|^(1/4)", 3, false, 2.0, 4.0, 2.0, 5.0, 1.0 / 4.0},
        {"gn3.6 |L^3 f|_4 <= |L^2 f|^(5/6) |L^5 f|^(1/6)", 3, false, 3.0, 4.0, 2.0, 5.0, 1.0 / 6.0},
        {"gn3.7 |L^4 f|_2 <= |L^2 f|^(1/3) |L^5 f|^(2/3)", 3, false, 4.0, 2.0, 2.0, 5.0, 2.0 / 3.0},
        {"gn3.8 |L^3 f|_6 <= |L^2 f|^(1/3) |L^5 f|^(2/3)", 3, false, 3.0, 6.0, 2.0, 5.0, 2.0 / 3.0},
        {"gn3.9 |L^2 f|_6 <= |L^2 f|^(2/3) |L^5 f|^(1/3)", 3, false, 2.0, 6.0, 2.0, 5.0, 1.0 / 3.0},
    };
  }
  throw ConfigError(fmt::format("no inequality list for dim {}", dim));
}

double scaling_gap(const GnInequality& q) {
  const double n = q.dim;
  const double lhs = q.a - n / q.p;
  const double rhs = (1.0 - q.theta) * (q.b - n / 2.0) + q.theta * (q.c - n / 2.0);
  return lhs - rhs;
}

double gn_ratio(const GnInequality& q, const SpectralField& f) {
  if (f.grid().dim() != q.dim) throw ConfigError("field dimension does not match the inequality");
  const double lhs = q.gradient ? gradient_lp(f, q.p) : lambda_lp(f, q.a, q.p);
  const double rhs = std::pow(lp::sobolev_norm(f, q.b), 1.0 - q.theta) * std::pow(lp::sobolev_norm(f, q.c), q.theta);
  if (!(rhs > 0.0)) return kNaN;
  return lhs / rhs;
}

std::vector<Row> audit_gn_inequalities(const std::vector<SpectralField>& corpus, int dim) {
  std::vector<Row> rows;
  for (const auto& q : gn_inequalities(dim)) {
    Row row{q.id, 0.0, 0, 0, scaling_gap(q)};
    for (const auto& f : corpus) update(row, gn_ratio(q, f));
    rows.push_back(row);
  }
  return rows;
}

void check_holder(const HolderExponents& e) {
  for (double x : {e.p, e.p1, e.q1, e.p2, e.q2})
    if (!(x > 1.0 && std::isfinite(x))) throw ConfigError(fmt::format("Holder exponent {:g} outside (1, inf)", x));
  const double r = 1.0 / e.p;
  if (std::abs(1.0 / e.p1 + 1.0 / e.q1 - r) > 1e-12 || std::abs(1.0 / e.p2 + 1.0 / e.q2 - r) > 1e-12)
    throw ConfigError(fmt::format("Holder relation 1/p = 1/p1 + 1/q1 = 1/p2 + 1/q2 fails for p={:g} p1={:g} q1={:g} "
                                  "p2={:g} q2={:g}",
                                  e.p, e.p1, e.q1, e.p2, e.q2));
}

CommutatorProduct commutator_product(const SpectralField& f, const SpectralField& g, double alpha,
                                     const HolderExponents& e) {
  check_holder(e);
  if (!(alpha > 0.0)) throw ConfigError("commutator alpha must be > 0");
  const Grid& grid = f.grid();
  const Samples fs = sp::from_spectral(f);
  const Samples gs = sp::from_spectral(g);
  const SpectralField fg = sp::to_spectral(grid, times(fs, gs));
  const Samples lap_fg = sp::from_spectral(lp::fractional_laplacian(fg, alpha));
  const Samples f_lap_g = times(fs, sp::from_spectral(lp::fractional_laplacian(g, alpha)));
  Samples comm(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) comm[i] = lap_fg[i] - f_lap_g[i];

  CommutatorProduct out;
  out.commutator_lhs = sp::lp_norm(grid, comm, e.p);
  out.commutator_rhs =
      gradient_lp(f, e.p1) * lambda_lp(g, alpha - 1.0, e.q1) + lambda_lp(f, alpha, e.p2) * sp::lp_norm(g, e.q2);
  out.product_lhs = sp::lp_norm(grid, lap_fg, e.p);
  out.product_rhs = sp::lp_norm(f, e.p1) * lambda_lp(g, alpha, e.q1) + lambda_lp(f, alpha, e.p2) * sp::lp_norm(g, e.q2);
  return out;
}

std::vector<Row> audit_commutator_product(const std::vector<SpectralField>& corpus, double alpha,
                                          const HolderExponents& e) {
  check_holder(e);
  const std::string tag = fmt::format("a={:g} p={:g} p1={:g} q1={:g} p2={:g} q2={:g}", alpha, e.p, e.p1, e.q1, e.p2, e.q2);
  Row comm{"commutator " + tag}, prod{"product " + tag};
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    const CommutatorProduct c = commutator_product(corpus[i], corpus[i + 1], alpha, e);
    update(comm, c.commutator_rhs > 0.0 ? c.commutator_lhs / c.commutator_rhs : kNaN);
    update(prod, c.product_rhs > 0.0 ? c.product_lhs / c.product_rhs : kNaN);
  }
  return {comm, prod};
}

std::vector<Row> audit_interpolation(const lp::DyadicCutoffBank& bank, const std::vector<SpectralField>& corpus,
                                     const std::vector<InterpolationCase>& cases) {
  std::vector<Row> rows;
  const int dim = bank.grid().dim();
  for (const auto& c : cases) {
    Row besov{fmt::format("interp a={:g} p={:g} q={:g}", c.alpha, c.p, c.q)};
    Row sobolev{fmt::format("interp-H a={:g} p={:g}", c.alpha, c.p)};
    const bool with_sobolev = c.q == 2.0 && c.p > 2.0;
    for (const auto& f : corpus) {
      if (f.max_abs() == 0.0) {
        ++besov.skipped;
        ++sobolev.skipped;
        continue;
      }
      update(besov, lp::audit_interpolation(bank, f, c.alpha, c.p, c.q).ratio);
      if (with_sobolev) update(sobolev, lp::audit_interpolation_sobolev(bank, f, c.alpha, c.p).ratio);
    }
    rows.push_back(besov);
    if (with_sobolev) rows.push_back(sobolev);
  }

  const lp::BesovIndex critical{-1.0, sp::kInfinity, sp::kInfinity};
  const lp::BesovIndex b122{1.0, 2.0, 2.0};
  Row embed{fmt::format("embedding B^-1_inf,inf <= L^{}", dim)};
  Row upper{"equivalence B^1_2,2 <= H^1"};
  Row lower{"equivalence H^1 <= B^1_2,2"};
  for (const auto& f : corpus) {
    const double ln = sp::lp_norm(f, dim);
    const double h1 = lp::sobolev_norm(f, 1.0);
    const double b = lp::besov_norm(bank, f, b122);
    update(embed, ln > 0.0 ? lp::besov_norm(bank, f, critical) / ln : kNaN);
    update(upper, h1 > 0.0 ? b / h1 : kNaN);
    update(lower, b > 0.0 ? h1 / b : kNaN);
  }
  rows.push_back(embed);
  rows.push_back(upper);
  rows.push_back(lower);
  return rows;
}

std::vector<ReportRow> run_audit(const AuditConfig& cfg) {
  if (cfg.n_coarse >= cfg.n_fine) throw ConfigError("audit.n_coarse must be smaller than audit.n_fine");
  for (const auto& e : cfg.holder) check_holder(e);
  auto table = [&](int n) {
    const Grid g(cfg.dim, n);
    const auto corpus = make_corpus(g, cfg.corpus);
    const lp::DyadicCutoffBank bank(g);
    std::vector<Row> rows = audit_interpolation(bank, corpus, cfg.cases);
    for (auto& r : audit_gn_inequalities(corpus, cfg.dim)) rows.push_back(r);
    for (const auto& e : cfg.holder)
      for (auto& r : audit_commutator_product(corpus, cfg.alpha, e)) rows.push_back(r);
    return rows;
  };
  const std::vector<Row> coarse = table(cfg.n_coarse);
  const std::vector<Row> fine = table(cfg.n_fine);
  std::vector<ReportRow> out;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    if (coarse[i].evaluated == 0 || fine[i].evaluated == 0) continue;
    ReportRow r;
    r.id = coarse[i].id;
    r.coarse = coarse[i].max_ratio;
    r.fine = fine[i].max_ratio;
    r.delta = r.coarse > 0.0 ? std::abs(r.fine - r.coarse) / r.coarse : 0.0;
    r.evaluated = coarse[i].evaluated;
    r.scaling_gap = coarse[i].scaling_gap;
    out.push_back(r);
  }
  return out;
}

}  // namespace nlc::audit
