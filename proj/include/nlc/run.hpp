#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "nlc/diagnostics.hpp"
#include "nlc/littlewood_paley.hpp"
#include "nlc/solver.hpp"
#include "nlc/state.hpp"

namespace nlc {

/// Everything the monitor carries between records, so that a run can be
/// resumed from a checkpoint and continue the same accumulator stream.
struct MonitorState {
  diag::DiagnosticsRecord last;  // record at the checkpointed state
  double sup_besov_u = 0.0;
  double sup_besov_grad_d = 0.0;
  double t_sup_besov_u = 0.0;
  double t_sup_besov_grad_d = 0.0;
};

/// Tracks accumulators every step and hands out records at the configured cadence.
class Monitor {
 public:
  Monitor(const Grid& grid, diag::MonitorConfig config);

  /// Start from `state` with zero accumulators.
  diag::DiagnosticsRecord start(const State& state);
  /// Continue a stream saved in `saved`; `state` must be the state it was saved at.
  diag::DiagnosticsRecord resume(const State& state, const MonitorState& saved);
  /// Advance the accumulators over one accepted step of size dt.
  diag::DiagnosticsRecord advance(const State& state, double dt);

  const MonitorState& state() const { return state_; }
  const diag::MonitorConfig& config() const { return config_; }
  const lp::DyadicCutoffBank& bank() const { return bank_; }

 private:
  void track_sup(const diag::DiagnosticsRecord& r);

  diag::MonitorConfig config_;
  lp::DyadicCutoffBank bank_;
  MonitorState state_;
};

struct RunHooks {
  std::function<void(const diag::DiagnosticsRecord&)> on_record;
  /// Called after every accepted step with the new state and the monitor.
  std::function<void(const State&, const Monitor&)> on_step;
};

struct RunResult {
  State final_state;
  std::vector<diag::DiagnosticsRecord> records;
  MonitorState monitor;
  bool blowup = false;
};

/// Step from `init` until t_end or blow-up, emitting a record at the start, every
/// `cadence` steps, at the final step and at blow-up. With `resume_from` the
/// accumulator stream continues from a checkpoint instead of restarting at zero.
/// Step errors propagate after the records produced so far have been delivered.
RunResult run(const State& init, const solver::SolverConfig& config, const diag::MonitorConfig& monitor,
              const RunHooks& hooks = {}, const std::optional<MonitorState>& resume_from = std::nullopt);

}  // namespace nlc
