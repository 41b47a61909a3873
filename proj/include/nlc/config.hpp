#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nlc/audit.hpp"
#include "nlc/diagnostics.hpp"
#include "nlc/initial_data.hpp"
#include "nlc/solver.hpp"

/// INI-style run and audit configuration. Sections: grid, solver, init_u,
/// init_d, monitor, output, audit. Every unknown section or key is an error.
namespace nlc::cli {

struct OutputConfig {
  std::string dir = ".";
  std::string csv = "diagnostics.csv";
  int checkpoint_every = 0;  // steps between checkpoints, 0 = only the final one
  std::string checkpoint_prefix = "checkpoint";
};

struct RunConfig {
  int dim = 2;
  int n = 64;
  solver::SolverConfig solver;
  init::InitSpec init_u;
  init::InitSpec init_d;
  diag::MonitorConfig monitor;
  OutputConfig output;
  audit::AuditConfig audit;
};

enum class Mode {
  Run,    // grid, solver.dt, solver.t_end, init_u.kind and init_d.kind are required
  Audit,  // only the audit section is used; everything present is still validated
};

/// Throws ConfigError naming the offending key path ("solver.dt", "solvr.dt", ...).
RunConfig parse_config(const std::string& text, Mode mode = Mode::Run);
RunConfig load_config(const std::string& path, Mode mode = Mode::Run);

/// Canonical text with every key written out; parse_config(to_text(c)) == c.
std::string to_text(const RunConfig& config);

/// FNV-1a of the canonical text without solver.t_end and the output and audit
/// sections, i.e. of everything that must not change when a run is resumed.
std::uint64_t digest(const RunConfig& config);

/// Overrides every seed (velocity, director angle, audit corpus).
void apply_seed(RunConfig& config, std::uint64_t seed);

}  // namespace nlc::cli
