#include "nlc/run.hpp"

#include <cmath>
#include <limits>

#include "nlc/error.hpp"

namespace nlc {

namespace {

inline constexpr double kInitDivergenceTol = 1e-10;
inline constexpr double kInitSphereTol = 1e-6;

std::uint64_t target_steps(const solver::SolverConfig& cfg) {
  return static_cast<std::uint64_t>(std::llround(cfg.t_end / cfg.dt));
}

}  // namespace

Monitor::Monitor(const Grid& grid, diag::MonitorConfig config) : config_(config), bank_(grid) {
  if (config_.cadence < 1) throw ConfigError("monitor.cadence must be >= 1");
  if (!(config_.epsilon0 > 0.0)) throw ConfigError("monitor.epsilon0 must be > 0");
}

void Monitor::track_sup(const diag::DiagnosticsRecord& r) {
  if (r.besov_u > state_.sup_besov_u) {
    state_.sup_besov_u = r.besov_u;
    state_.t_sup_besov_u = r.t;
  }
  if (r.besov_grad_d > state_.sup_besov_grad_d) {
    state_.sup_besov_grad_d = r.besov_grad_d;
    state_.t_sup_besov_grad_d = r.t;
  }
}

diag::DiagnosticsRecord Monitor::start(const State& s) {
  state_ = MonitorState{};
  state_.last = diag::initial_record(bank_, s, config_);
  state_.t_sup_besov_u = state_.t_sup_besov_grad_d = s.t;
  track_sup(state_.last);
  return state_.last;
}

diag::DiagnosticsRecord Monitor::resume(const State& s, const MonitorState& saved) {
  if (saved.last.t != s.t) throw ConfigError("monitor state does not belong to the checkpointed state");
  state_ = saved;
  return state_.last;
}

diag::DiagnosticsRecord Monitor::advance(const State& s, double dt) {
  state_.last = diag::accumulate(bank_, state_.last, s, dt, config_);
  track_sup(state_.last);
  return state_.last;
}

RunResult run(const State& init, const solver::SolverConfig& cfg, const diag::MonitorConfig& monitor_cfg,
              const RunHooks& hooks, const std::optional<MonitorState>& resume_from) {
  solver::check_config(cfg, init);
  solver::validate_state(init, kInitDivergenceTol, kInitSphereTol);

  RunResult out{init, {}, {}, false};
  Monitor monitor(init.grid(), monitor_cfg);
  auto emit = [&](const diag::DiagnosticsRecord& r) {
    out.records.push_back(r);
    if (hooks.on_record) hooks.on_record(r);
  };

  emit(resume_from ? monitor.resume(init, *resume_from) : monitor.start(init));
  const std::uint64_t target = target_steps(cfg);
  State s = init;
  while (s.steps < target) {
    solver::StepResult next = solver::step(s, cfg);
    if (next.blowup) {
      diag::DiagnosticsRecord r = monitor.state().last;
      r.t = next.state.t;
      r.blowup_flag = true;
      const bool finite = next.state.u.all_finite() && next.state.d.all_finite();
      if (finite) {
        try {
          r = diag::accumulate(monitor.bank(), monitor.state().last, next.state, cfg.dt, monitor.config());
        } catch (const std::exception&) {
          r.energy = std::numeric_limits<double>::quiet_NaN();
        }
      } else {
        r.energy = r.dissipation = std::numeric_limits<double>::quiet_NaN();
      }
      r.blowup_flag = true;
      r.criterion_ok = r.criterion_ok && finite;
      emit(r);
      out.final_state = std::move(next.state);
      out.blowup = true;
      out.monitor = monitor.state();
      return out;
    }
    s = std::move(next.state);
    const diag::DiagnosticsRecord r = monitor.advance(s, cfg.dt);
    if (s.steps % std::uint64_t(monitor_cfg.cadence) == 0 || s.steps == target) emit(r);
    if (hooks.on_step) hooks.on_step(s, monitor);
  }
  out.final_state = std::move(s);
  out.monitor = monitor.state();
  return out;
}

}  // namespace nlc
