#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlc/diagnostics.hpp"
#include "nlc/error.hpp"
#include "nlc/initial_data.hpp"
#include "nlc/run.hpp"
#include "nlc/solver.hpp"
#include "nlc/spectral_ops.hpp"
#include "test_support.hpp"

using namespace nlc;
using namespace nlc::testing;
namespace sp = nlc::spectral;

namespace {

VectorField equatorial(const Grid& g, const Fn& theta) {
  const Samples th = sample(g, theta);
  Samples c(g.size()), s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    c[i] = std::cos(th[i]);
    s[i] = std::sin(th[i]);
  }
  return sp::to_spectral(g, {c, s, Samples(g.size(), 0.0)});
}

State still(const Grid& g) { return State{0.0, 0, VectorField(g, g.dim()), init::constant_director(g)}; }

const Fn kSmallTheta = [](double x, double y, double) { return 0.2 * std::sin(x) * std::cos(2 * y) + 0.1 * std::cos(y); };

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("energy and dissipation by hand") {
  const Grid g(2, 32);
  const State z = still(g);
  CHECK(diag::energy(z) == 0.0);
  CHECK(diag::dissipation(z) == 0.0);

  const double a = 0.3;
  State s = z;
  s.u[1] = sp::to_spectral(g, sample(g, [a](double x, double, double) { return a * std::sin(2 * x); }));
  const double e = a * a * g.volume() / 2.0;
  CHECK(rel(diag::energy(s), e) < 1e-13);
  CHECK(rel(diag::dissipation(s), 4.0 * e) < 1e-13);

  // equatorial director at rest: dissipation = ||Lap theta||^2
  State q{0.0, 0, VectorField(Grid(2, 64), 2), equatorial(Grid(2, 64), [](double x, double, double) {
            return 0.1 * std::sin(x);
          })};
  CHECK(rel(diag::dissipation(q), 0.01 * 2.0 * kPi * kPi) < 1e-12);
  CHECK(rel(diag::energy(q), 0.01 * 2.0 * kPi * kPi) < 1e-12);
}

TEST_CASE("criterion quantities") {
  const Grid g(2, 32);
  const lp::DyadicCutoffBank bank(g);
  const auto q0 = diag::criterion_quantities(bank, still(g));
  CHECK(q0.besov_u == 0.0);
  CHECK(q0.besov_grad_d == 0.0);

  State s = still(g);
  s.u[1] = single_mode_cos(g, {4, 0, 0}, 0.7);
  const auto q = diag::criterion_quantities(bank, s);
  CHECK(q.besov_u == doctest::Approx(0.7 / 4.0).epsilon(1e-13));

  CHECK(diag::criterion_satisfied(2, {5.0, 0.05}, 0.1));
  CHECK_FALSE(diag::criterion_satisfied(3, {5.0, 0.05}, 0.1));
  CHECK_FALSE(diag::criterion_satisfied(2, {0.0, 0.2}, 0.1));
}

TEST_CASE("criterion quantities and Ln norm are invariant under dyadic rescaling") {
  for (int dim : {2, 3}) {
    const Grid g(dim, dim == 2 ? 32 : 16);
    init::ThetaProfile p;
    p.kind = init::ThetaProfile::Kind::Random;
    p.band = 3;
    p.amplitude = 0.3;
    p.seed = 11;
    const State s{0.0, 0, init::random_divfree(g, -2.0, 5, 0.8), init::equatorial_director(g, init::theta_field(g, p))};
    const State r = diag::rescale_dyadic(s);
    CHECK(r.grid().n() == 2 * g.n());
    const auto q = diag::criterion_quantities(lp::DyadicCutoffBank(g), s);
    const auto qr = diag::criterion_quantities(lp::DyadicCutoffBank(r.grid()), r);
    CHECK(rel(qr.besov_u, q.besov_u) < 1e-10);
    CHECK(rel(qr.besov_grad_d, q.besov_grad_d) < 1e-10);

    const double ln = sp::lp_norm(s.u, dim);
    CHECK(rel(diag::lp_norm_cell(r.u, dim, 2), ln) < 1e-10);
    // over the whole torus the image holds 2^n copies of the cell
    CHECK(rel(sp::lp_norm(r.u, dim), 2.0 * ln) < 1e-10);
  }
  CHECK(diag::lp_norm_cell(init::taylor_green(Grid(2, 16), 1.0), sp::kInfinity, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(diag::lp_norm_cell(VectorField(Grid(2, 16), 2), 2.0, 3), ConfigError);
}

TEST_CASE("identity checks") {
  const Grid g(2, 64);
  const auto zero = diag::identity_checks(still(g));
  CHECK(zero.stress_routes == 0.0);
  CHECK(zero.director_constraint == 0.0);
  CHECK(zero.divergence == 0.0);

  const State s{0.0, 0, init::taylor_green(g, 1.0), equatorial(g, kSmallTheta)};
  const auto r = diag::identity_checks(s);
  CHECK(r.stress_routes < 1e-10);
  CHECK(r.director_constraint < 1e-6);
  CHECK(r.divergence < 1e-13);

  // the identity is homogeneous in d, so a varying modulus is needed to break it
  State bent = s;
  const SpectralField m = sp::to_spectral(g, sample(g, [](double x, double, double) { return 1.0 + 0.5 * std::sin(x); }));
  for (int a = 0; a < 3; ++a) {
    Samples da = sp::from_spectral(s.d[a]);
    const Samples mm = sp::from_spectral(m);
    for (std::size_t i = 0; i < g.size(); ++i) da[i] *= mm[i];
    bent.d[a] = sp::to_spectral(g, da);
  }
  CHECK(diag::identity_checks(bent).director_constraint > 0.1);
}

TEST_CASE("pressure recovery") {
  const Grid g(2, 32);
  CHECK(diag::pressure_recover(still(g)).max_abs() == 0.0);

  const double a = 1.7;
  const State tg{0.0, 0, init::taylor_green(g, a), init::constant_director(g)};
  const SpectralField p = diag::pressure_recover(tg);
  const Samples exact =
      sample(g, [a](double x, double y, double) { return 0.25 * a * a * (std::cos(2 * x) + std::cos(2 * y)); });
  CHECK(max_abs_diff(sp::from_spectral(p), exact) < 1e-13);
  CHECK(diag::momentum_residual(tg, p) < 1e-6);

  const State eq{0.0, 0, VectorField(g, 2), equatorial(g, kSmallTheta)};
  const SpectralField pe = diag::pressure_recover(eq);
  CHECK(pe.max_abs() > 1e-3);
  CHECK(std::abs(pe[0]) == 0.0);
  CHECK(diag::momentum_residual(eq, pe) < 1e-6);
  CHECK(diag::momentum_residual(eq, SpectralField(g)) > 1e-3);

  const State mix{0.0, 0, init::random_divfree(g, -3.0, 9, 0.5), equatorial(g, kSmallTheta)};
  CHECK(diag::momentum_residual(mix, diag::pressure_recover(mix)) < 1e-6);
}

TEST_CASE("accumulate requires a positive step and keeps a zero stream at zero") {
  const Grid g(2, 16);
  const lp::DyadicCutoffBank bank(g);
  const diag::MonitorConfig cfg;
  diag::DiagnosticsRecord r = diag::initial_record(bank, still(g), cfg);
  for (int i = 0; i < 5; ++i) r = diag::accumulate(bank, r, still(g), 0.1, cfg);
  CHECK(r.acc_H2 == 0.0);
  CHECK(r.acc_bkm == 0.0);
  CHECK(r.acc_hw == 0.0);
  CHECK(r.acc_llw == 0.0);
  CHECK(r.criterion_ok);
  CHECK_THROWS_AS(diag::accumulate(bank, r, still(g), 0.0, cfg), ConfigError);

  diag::DiagnosticsRecord bad = r;
  bad.criterion_ok = false;
  CHECK_FALSE(diag::accumulate(bank, bad, still(g), 0.1, cfg).criterion_ok);
}

TEST_CASE("taylor green run: energy decay and accumulators against closed forms") {
  const Grid g(2, 64);
  const double a = 1.0;
  solver::SolverConfig cfg;
  cfg.t_end = 1.0;
  diag::MonitorConfig mon;
  mon.cadence = 100;
  const State s0{0.0, 0, init::taylor_green(g, a), init::constant_director(g)};
  const RunResult res = run(s0, cfg, mon);
  REQUIRE(res.records.size() == 11);
  const auto& last = res.records.back();
  const double t = last.t;
  CHECK(t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rel(last.energy, std::exp(-4.0 * t) * res.records.front().energy) < 1e-5);
  CHECK(std::abs(last.acc_bkm - 2.0 * a * (1.0 - std::exp(-2.0 * t)) / 2.0) < 1e-4);
  CHECK(std::abs(last.acc_H2 - 8.0 * kPi * kPi * a * a * (1.0 - std::exp(-4.0 * t)) / 4.0) < 1e-4);
  CHECK(last.acc_llw == 0.0);
  CHECK(last.acc_hw == doctest::Approx(last.acc_bkm).epsilon(1e-14));
  for (std::size_t i = 1; i < res.records.size(); ++i) {
    CHECK(res.records[i].acc_bkm >= res.records[i - 1].acc_bkm);
    CHECK(res.records[i].energy <= res.records[i - 1].energy);
  }
  CHECK_FALSE(res.blowup);
}

TEST_CASE("equatorial heat flow run: llw accumulator against the closed form") {
  const Grid g(2, 64);
  init::ThetaProfile p;
  p.amplitude = 0.1;
  const State s0{0.0, 0, VectorField(g, 2), init::equatorial_director(g, init::theta_field(g, p))};
  solver::SolverConfig cfg;
  cfg.t_end = 1.0;
  diag::MonitorConfig mon;
  mon.cadence = 1000;
  const RunResult res = run(s0, cfg, mon);
  const double t = res.records.back().t;
  const double exact = 1e-4 * 1.5 * kPi * kPi * (1.0 - std::exp(-4.0 * t)) / 4.0;
  CHECK(std::abs(res.records.back().acc_llw - exact) < 1e-4);
  CHECK(rel(res.records.back().acc_llw, exact) < 1e-5);
  CHECK(res.records.back().acc_bkm == 0.0);
}

TEST_CASE("run emission, validation and determinism") {
  const Grid g(2, 32);
  const State s0{0.0, 0, init::random_divfree(g, -3.0, 4, 0.5), equatorial(g, kSmallTheta)};
  solver::SolverConfig cfg;
  diag::MonitorConfig mon;

  cfg.t_end = 0.0;
  const RunResult zero = run(s0, cfg, mon);
  CHECK(zero.records.size() == 1);
  CHECK(max_abs_diff(zero.final_state.u, s0.u) == 0.0);

  cfg.t_end = 0.05;
  mon.cadence = 20;
  std::vector<double> seen;
  RunHooks hooks;
  hooks.on_record = [&](const diag::DiagnosticsRecord& r) { seen.push_back(r.t); };
  const RunResult a = run(s0, cfg, mon, hooks);
  REQUIRE(a.records.size() == 4);  // t = 0, 0.02, 0.04 and the final 0.05
  CHECK(seen.size() == 4);
  CHECK(a.final_state.steps == 50);
  const RunResult b = run(s0, cfg, mon);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].energy == b.records[i].energy);
    CHECK(a.records[i].acc_H2 == b.records[i].acc_H2);
    CHECK(a.records[i].besov_grad_d == b.records[i].besov_grad_d);
  }

  solver::SolverConfig fast = cfg;
  fast.dt = 1.0;
  CHECK_THROWS_AS(run(s0, fast, mon), ConfigError);
  diag::MonitorConfig bad = mon;
  bad.cadence = 0;
  CHECK_THROWS_AS(run(s0, cfg, bad), ConfigError);
}

TEST_CASE("accumulators are additive over run segmentation") {
  const Grid g(2, 32);
  const State s0{0.0, 0, init::random_divfree(g, -3.0, 8, 0.5), equatorial(g, kSmallTheta)};
  solver::SolverConfig cfg;
  cfg.t_end = 0.1;
  diag::MonitorConfig mon;
  mon.cadence = 10;
  const RunResult whole = run(s0, cfg, mon);

  solver::SolverConfig half = cfg;
  half.t_end = 0.05;
  const RunResult first = run(s0, half, mon);
  const RunResult second = run(first.final_state, cfg, mon, {}, first.monitor);
  const auto& w = whole.records.back();
  const auto& s = second.records.back();
  CHECK(s.t == w.t);
  CHECK(std::abs(s.acc_H2 - w.acc_H2) <= 1e-12 * std::max(1.0, w.acc_H2));
  CHECK(std::abs(s.acc_bkm - w.acc_bkm) <= 1e-12 * std::max(1.0, w.acc_bkm));
  CHECK(std::abs(s.acc_hw - w.acc_hw) <= 1e-12 * std::max(1.0, w.acc_hw));
  CHECK(std::abs(s.acc_llw - w.acc_llw) <= 1e-12 * std::max(1.0, w.acc_llw));
  CHECK(second.monitor.sup_besov_grad_d == whole.monitor.sup_besov_grad_d);

  MonitorState wrong = first.monitor;
  wrong.last.t = 123.0;
  CHECK_THROWS_AS(run(first.final_state, cfg, mon, {}, wrong), ConfigError);
}

TEST_CASE("blow-up ends the run with a flagged record") {
  const Grid g(2, 16);
  State s0 = still(g);
  solver::SolverConfig cfg;
  cfg.t_end = 0.01;
  // finite but beyond the blow-up threshold after one step
  s0.u = init::taylor_green(g, 2.0 * solver::kBlowupVelocity);
  cfg.dt = 1e-12;
  const RunResult res = run(s0, cfg, {});
  CHECK(res.blowup);
  CHECK(res.records.back().blowup_flag);
  CHECK(res.final_state.steps == 1);
}
