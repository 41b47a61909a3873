#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlc/error.hpp"
#include "nlc/littlewood_paley.hpp"
#include "test_support.hpp"

using namespace nlc;
using namespace nlc::testing;
namespace sp = nlc::spectral;

namespace {

constexpr double kInf = sp::kInfinity;

/// Discrete image of 2 f(2x) on the doubled grid: coefficient of k moves to
/// 2k, amplitude doubles. Grid points of the image map onto the original grid.
SpectralField dyadic_image(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(Grid(g.dim(), 2 * g.n()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (f[i] == Complex(0.0)) continue;
    std::array<int, 3> k{0, 0, 0};
    for (int a = 0; a < g.dim(); ++a) k[a] = 2 * g.wavenumber(i, a);
    out.mode(k) += 2.0 * f[i];
  }
  return out;
}

}  // namespace

TEST_CASE("profiles: supports and nonnegativity") {
  for (double r = 0.0; r <= 4.0; r += 1.0 / 512) {
    const double phi = lp::phi_profile(r);
    const double phin = lp::phi_normalized(r);
    CHECK(phi >= 0.0);
    CHECK(lp::chi_profile(r) >= 0.0);
    if (r < 0.75 || r > 8.0 / 3.0) {
      CHECK(phi == 0.0);
      CHECK(phin == 0.0);
    }
    if (r > 4.0 / 3.0) CHECK(lp::chi_profile(r) == 0.0);
  }
  CHECK(lp::phi_normalized(1.0) == 1.0);
  CHECK(lp::phi_normalized(2.0) == 0.0);
}

TEST_CASE("bank rejects grids that cannot host two shells") {
  CHECK_THROWS_AS(lp::DyadicCutoffBank(Grid(2, 8)), ConfigError);
  CHECK_NOTHROW(lp::DyadicCutoffBank(Grid(2, 16)));
}

TEST_CASE("partition of unity on every nonzero lattice mode") {
  for (auto [dim, n] : {std::pair{2, 16}, std::pair{2, 32}, std::pair{2, 64}, std::pair{3, 16}, std::pair{3, 32}}) {
    Grid g(dim, n);
    lp::DyadicCutoffBank bank(g);
    CHECK(bank.shell_count() >= 2);
    std::vector<double> sum(g.size(), 0.0);
    std::vector<int> hits(g.size(), 0);
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
      for (const auto& e : bank.shell(j)) {
        sum[e.index] += e.weight;
        ++hits[e.index];
        const double r = std::sqrt(g.k_squared(e.index));
        CHECK(r >= 0.75 * std::exp2(j));
        CHECK(r <= 8.0 / 3.0 * std::exp2(j));
        CHECK(e.weight >= 0.0);
      }
    }
    double residual = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i) {
      residual = std::max(residual, std::abs(sum[i] - 1.0));
      CHECK(hits[i] <= 2);
    }
    CHECK(residual < 1e-12);
    CHECK(sum[0] == 0.0);
  }
}

TEST_CASE("blocks of a single dyadic mode") {
  Grid g(2, 64);
  lp::DyadicCutoffBank bank(g);
  for (int j0 = 1; j0 <= 4; ++j0) {
    const int k = 1 << j0;
    const auto f = single_mode_cos(g, {k, 0, 0});
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
      const auto block = lp::lp_block(bank, f, j);
      if (j == j0) CHECK(max_abs_diff(block, f) < 1e-15);
      if (std::abs(j - j0) >= 2) CHECK(block.max_abs() == 0.0);
    }
    CHECK(lp::besov_norm(bank, f, {-1.0, kInf, kInf}) == doctest::Approx(std::exp2(-j0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lp::lp_block(bank, single_mode_cos(g, {1, 0, 0}), bank.j_max() + 1), ConfigError);
}

TEST_CASE("near orthogonality of blocks is exact") {
  Grid g(2, 64);
  lp::DyadicCutoffBank bank(g);
  const auto f = random_band_limited(g, 11, 31, 0.0);
  for (int j = bank.j_min(); j <= bank.j_max(); ++j)
    for (int l = bank.j_min(); l <= bank.j_max(); ++l)
      if (std::abs(j - l) >= 2) CHECK(lp::lp_block(bank, lp::lp_block(bank, f, j), l).max_abs() == 0.0);
}

TEST_CASE("blocks reassemble the field minus its mean; low-frequency telescoping") {
  for (int dim : {2, 3}) {
    Grid g(dim, dim == 2 ? 64 : 16);
    lp::DyadicCutoffBank bank(g);
    auto f = random_band_limited(g, 5, g.n() / 3);
    f[0] = 0.7;
    SpectralField sum(g);
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) sum += lp::lp_block(bank, f, j);
    CHECK(max_abs_diff(sum, sp::without_mean(f)) < 1e-10);

    CHECK(max_abs_diff(lp::low_freq_block(bank, f, bank.j_max() + 1), sp::without_mean(f)) < 1e-10);
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
      const auto lhs = lp::low_freq_block(bank, f, j + 1);
      const auto rhs = lp::low_freq_block(bank, f, j) + lp::lp_block(bank, f, j);
      CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
    CHECK_THROWS_AS(lp::low_freq_block(bank, f, bank.j_max() + 2), ConfigError);
  }
  Grid g(2, 32);
  lp::DyadicCutoffBank bank(g);
  SpectralField high(g);
  high.mode({8, 0, 0}) = 1.0;
  high.mode({-8, 0, 0}) = 1.0;
  CHECK(lp::low_freq_block(bank, high, bank.j_min()).max_abs() == 0.0);
}

TEST_CASE("Besov norm basics") {
  Grid g(2, 32);
  lp::DyadicCutoffBank bank(g);
  CHECK(lp::besov_norm(bank, SpectralField(g), {-1.0, kInf, kInf}) == 0.0);
  CHECK(lp::besov_norm(bank, SpectralField(g), {0.5, 2.0, 2.0}) == 0.0);
  const auto detail = lp::besov_norm_detail(bank, single_mode_cos(g, {4, 0, 0}), {-1.0, kInf, kInf});
  CHECK(detail.j_argmax == 2);
  CHECK(detail.j_min == bank.j_min());
  CHECK(detail.j_max == bank.j_max());
}

TEST_CASE("B^0_{2,2} is within 5% of the L2 norm for band-limited fields") {
  for (int n : {32, 64}) {
    Grid g(2, n);
    lp::DyadicCutoffBank bank(g);
    for (unsigned seed = 0; seed < 20; ++seed) {
      auto f = random_band_limited(g, seed, n / 3, -1.0);
      f[0] = 2.0;
      const double b = lp::besov_norm(bank, f, {0.0, 2.0, 2.0});
      const double l2 = sp::lp_norm(sp::without_mean(f), 2.0);
      CHECK(std::abs(b / l2 - 1.0) < 0.05);
    }
  }
}

TEST_CASE("Sobolev norm") {
  Grid g(2, 32);
  const auto s = sp::to_spectral(g, sample(g, [](double x, double, double) { return std::sin(x); }));
  const auto c = sp::to_spectral(g, sample(g, [](double x, double, double) { return std::cos(x); }));
  CHECK(lp::sobolev_norm(s, 1.0) == doctest::Approx(sp::lp_norm(c, 2.0)).epsilon(1e-13));

  auto f = random_band_limited(g, 3, 10);
  f[0] = 5.0;
  CHECK(lp::sobolev_norm(f, 0.0) == doctest::Approx(sp::lp_norm(sp::without_mean(f), 2.0)).epsilon(1e-12));

  const auto m = single_mode_cos(g, {2, 0, 0}, 0.3);
  for (double sexp : {-1.0, 0.5, 2.5})
    CHECK(lp::sobolev_norm(m, sexp) == doctest::Approx(std::pow(2.0, sexp) * sp::lp_norm(m, 2.0)).epsilon(1e-13));
}

TEST_CASE("fractional Laplacian") {
  Grid g(3, 16);
  auto f = random_band_limited(g, 9, 5);
  f[0] = 1.0;
  CHECK(max_abs_diff(lp::fractional_laplacian(f, 2.0), -1.0 * sp::laplacian(f)) < 1e-12);
  CHECK(max_abs_diff(lp::fractional_laplacian(f, 0.0), sp::without_mean(f)) == 0.0);
  CHECK(lp::fractional_laplacian(f, -1.0)[0] == Complex(0.0));

  const auto m = single_mode_cos(g, {4, 0, 0});
  CHECK(max_abs_diff(lp::fractional_laplacian(m, 1.0), 4.0 * m) < 1e-15);
}

TEST_CASE("interpolation audit") {
  Grid g(2, 32);
  lp::DyadicCutoffBank bank(g);
  CHECK(lp::audit_interpolation(bank, SpectralField(g), 1.0, 4.0, 2.0).ratio == 0.0);
  CHECK_THROWS_AS(lp::audit_interpolation(bank, SpectralField(g), 1.0, 2.0, 4.0), ConfigError);
  CHECK_THROWS_AS(lp::audit_interpolation(bank, SpectralField(g), 0.0, 4.0, 2.0), ConfigError);
  CHECK_THROWS_AS(lp::audit_interpolation_sobolev(bank, SpectralField(g), 1.0, 2.0), ConfigError);

  const auto f = random_band_limited(g, 4, 6);
  const auto a = lp::audit_interpolation(bank, f, 1.0, 4.0, 2.0);
  CHECK(a.beta == 1.0);
  CHECK(a.theta == 0.5);
  CHECK(std::isfinite(a.ratio));
  CHECK(a.ratio > 0.0);
  // q = 2 specialization: the high factor is the H^beta norm to the power 2/p.
  const auto s = lp::audit_interpolation_sobolev(bank, f, 1.0, 4.0);
  CHECK(s.high_factor == doctest::Approx(std::sqrt(lp::sobolev_norm(f, 1.0))).epsilon(1e-14));
  CHECK(s.low_factor == doctest::Approx(a.low_factor).epsilon(1e-14));
}

TEST_CASE("interpolation ratio of a band-limited bump is stable under refinement") {
  // Periodized Gaussian truncated to |k_i| <= 6, identical coefficients at both resolutions.
  auto bump = [](const Grid& g) {
    SpectralField f(g);
    for (int kx = -6; kx <= 6; ++kx)
      for (int ky = -6; ky <= 6; ++ky) {
        if (kx == 0 && ky == 0) continue;
        f.mode({kx, ky, 0}) = std::exp(-0.5 * 0.3 * 0.3 * (kx * kx + ky * ky) * 4.0);
      }
    return f;
  };
  Grid g32(2, 32), g64(2, 64);
  lp::DyadicCutoffBank b32(g32), b64(g64);
  const double r32 = lp::audit_interpolation(b32, bump(g32), 1.0, 4.0, 2.0).ratio;
  const double r64 = lp::audit_interpolation(b64, bump(g64), 1.0, 4.0, 2.0).ratio;
  CHECK(std::isfinite(r32));
  CHECK(std::abs(r64 / r32 - 1.0) < 0.2);
}

TEST_CASE("dyadic rescaling leaves the critical Besov norm invariant") {
  Grid g(2, 32);
  lp::DyadicCutoffBank bank(g);
  lp::DyadicCutoffBank fine(Grid(2, 64));
  for (unsigned seed = 0; seed < 10; ++seed) {
    const auto f = random_band_limited(g, seed, 8);
    const auto f2 = dyadic_image(f);
    const double a = lp::besov_norm(bank, f, {-1.0, kInf, kInf});
    const double b = lp::besov_norm(fine, f2, {-1.0, kInf, kInf});
    CHECK(std::abs(a - b) <= 1e-10 * a);
  }
}

TEST_CASE("H^s and B^s_{2,2} are equivalent with constants in [1/2, 2]") {
  Grid g(2, 32);
  lp::DyadicCutoffBank bank(g);
  double lo = 1e300, hi = 0.0;
  for (unsigned seed = 0; seed < 50; ++seed) {
    const auto f = random_band_limited(g, 1000 + seed, 10, -1.0 - 0.05 * seed);
    for (double s : {-1.0, 0.0, 1.0, 2.0}) {
      const double r = lp::besov_norm(bank, f, {s, 2.0, 2.0}) / lp::sobolev_norm(f, s);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  MESSAGE("B^s_22 / H^s over corpus: [" << lo << ", " << hi << "]");
  CHECK(lo >= 0.5);
  CHECK(hi <= 2.0);
}

TEST_CASE("B^{-1}_{inf,inf} is controlled by L^n") {
  Grid g(2, 32);
  lp::DyadicCutoffBank bank(g);
  double worst = 0.0;
  for (unsigned seed = 0; seed < 50; ++seed) {
    const auto f = random_band_limited(g, 2000 + seed, 10, -1.5);
    worst = std::max(worst, lp::besov_norm(bank, f, {-1.0, kInf, kInf}) / sp::lp_norm(f, 2.0));
  }
  MESSAGE("max B^{-1}_{inf,inf} / L^2 (n = 2) ratio: " << worst);
  CHECK(std::isfinite(worst));
  CHECK(worst < 10.0);
}
