#include "nlc/commands.hpp"

#include <filesystem>
#include <optional>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "nlc/audit.hpp"
#include "nlc/checkpoint.hpp"
#include "nlc/error.hpp"
#include "nlc/initial_data.hpp"
#include "nlc/run.hpp"
#include "nlc/solver.hpp"

namespace nlc::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

fs::path ensure_output_dir(const RunConfig& config) {
  const fs::path dir(config.output.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw IoError(fmt::format("cannot create output directory '{}'", config.output.dir));
  return dir;
}

std::string csv_path(const RunConfig& config) { return (fs::path(config.output.dir) / config.output.csv).string(); }

void write_meta(const RunConfig& config, const lp::DyadicCutoffBank& bank) {
  const std::string path = csv_path(config) + ".meta.json";
  nlohmann::ordered_json meta;
  meta["columns"] = csv_columns();
  meta["besov_note"] =
      "besov_u and besov_grad_d are lattice surrogates of the B^{-1}_{inf,inf} norm: the sup runs over the dyadic "
      "shells j_min..j_max that meet the lattice";
  meta["j_min"] = bank.j_min();
  meta["j_max"] = bank.j_max();
  meta["epsilon0"] = config.monitor.epsilon0;
  meta["criterion_pair"] = config.dim == 3 ? "u and grad d" : "grad d";
  meta["dim"] = config.dim;
  meta["n"] = config.n;
  meta["dt"] = config.solver.dt;
  meta["cadence"] = config.monitor.cadence;
  meta["config_digest"] = fmt::format("{:016x}", digest(config));
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path));
  out << meta.dump(2) << "\n";
  if (!out) throw IoError(fmt::format("error writing '{}'", path));
}

std::string summary(const MonitorState& m, const RunConfig& config, bool blowup) {
  const double eps = config.monitor.epsilon0;
  return fmt::format(
      "summary: t = {:.6g}, sup besov_u = {:.6g} at t = {:.6g}, sup besov_grad_d = {:.6g} at t = {:.6g}, "
      "epsilon0 = {:g} ({}), criterion_ok = {}, blowup = {}",
      m.last.t, m.sup_besov_u, m.t_sup_besov_u, m.sup_besov_grad_d, m.t_sup_besov_grad_d, eps,
      config.dim == 3 ? (std::max(m.sup_besov_u, m.sup_besov_grad_d) < eps ? "below" : "not below")
                      : (m.sup_besov_grad_d < eps ? "below" : "not below"),
      m.last.criterion_ok ? "true" : "false", blowup ? "yes" : "no");
}

/// Shared by run and resume: steps from `init`, writing rows, checkpoints and the summary.
int drive(const RunConfig& config, const State& init, CsvWriter& csv, bool write_first,
          const std::optional<MonitorState>& resume_from, std::ostream& log, const CommandOptions& options) {
  const std::uint64_t dig = digest(config);
  const std::string scheme = solver::to_string(config.solver.scheme);
  std::uint64_t last_saved = resume_from ? init.steps : ~std::uint64_t(0);
  bool first = true;

  RunHooks hooks;
  hooks.on_record = [&](const diag::DiagnosticsRecord& r) {
    if (first && !write_first) {
      first = false;
      return;
    }
    first = false;
    csv.write(r);
  };
  hooks.on_step = [&](const State& s, const Monitor& m) {
    const int every = config.output.checkpoint_every;
    if (every > 0 && s.steps % std::uint64_t(every) == 0) {
      save_checkpoint(checkpoint_path(config, s.steps), s, scheme, dig, m.state());
      last_saved = s.steps;
    }
  };

  const RunResult result = run(init, config.solver, config.monitor, hooks, resume_from);
  if (!result.blowup && last_saved != result.final_state.steps) {
    save_checkpoint(checkpoint_path(config, result.final_state.steps), result.final_state, scheme, dig,
                    result.monitor);
  }
  log << summary(result.monitor, config, result.blowup) << "\n";
  if (!options.quiet && result.blowup)
    log << fmt::format("blow-up detected at t = {:.6g}\n", result.final_state.t);
  return result.blowup ? kExitBlowup : kExitOk;
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "t",         "energy",  "dissipation", "besov_u", "besov_grad_d", "grad_u_L2",         "delta_d_L2",
      "acc_H2",    "acc_bkm", "acc_hw",      "acc_llw", "div_u_max",    "sphere_defect_max", "criterion_ok",
      "blowup_flag"};
  return cols;
}

std::string csv_header() {
  std::string s;
  for (const auto& c : csv_columns()) s += (s.empty() ? "" : ",") + c;
  return s;
}

std::string csv_row(const diag::DiagnosticsRecord& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", num(r.t), num(r.energy), num(r.dissipation),
                     num(r.besov_u), num(r.besov_grad_d), num(r.grad_u_L2), num(r.delta_d_L2), num(r.acc_H2),
                     num(r.acc_bkm), num(r.acc_hw), num(r.acc_llw), num(r.div_u_max), num(r.sphere_defect_max),
                     r.criterion_ok ? 1 : 0, r.blowup_flag ? 1 : 0);
}

CsvWriter::CsvWriter(const std::string& path) : path_(path), out_(path, std::ios::trunc) {
  if (!out_) throw IoError(fmt::format("cannot write '{}'", path));
  out_ << csv_header() << "\n" << std::flush;
}

CsvWriter::CsvWriter(const std::string& path, double t_keep) : path_(path) {
  std::vector<std::string> kept;
  if (std::ifstream in(path); in) {
    std::string line;
    if (std::getline(in, line) && line != csv_header())
      throw IoError(fmt::format("'{}' does not have the diagnostics header", path));
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      double t = 0.0;
      try {
        t = std::stod(line.substr(0, line.find(',')));
      } catch (const std::exception&) {
        throw IoError(fmt::format("'{}' has an unreadable row: {}", path, line));
      }
      if (t < t_keep) kept.push_back(line);
    }
  }
  out_.open(path, std::ios::trunc);
  if (!out_) throw IoError(fmt::format("cannot write '{}'", path));
  out_ << csv_header() << "\n";
  for (const auto& line : kept) out_ << line << "\n";
  out_ << std::flush;
}

void CsvWriter::write(const diag::DiagnosticsRecord& record) {
  out_ << csv_row(record) << "\n" << std::flush;
  if (!out_) throw IoError(fmt::format("error writing '{}'", path_));
}

std::string checkpoint_path(const RunConfig& config, std::uint64_t steps) {
  return (fs::path(config.output.dir) / fmt::format("{}_{:08d}.nlcchk", config.output.checkpoint_prefix, steps))
      .string();
}

int cmd_run(const RunConfig& config, std::ostream& log, const CommandOptions& options) {
  ensure_output_dir(config);
  CsvWriter csv(csv_path(config));
  const Grid grid(config.dim, config.n);
  write_meta(config, lp::DyadicCutoffBank(grid));
  const State init = init::make_state(grid, config.init_u, config.init_d);
  if (!options.quiet)
    log << fmt::format("run: dim = {}, n = {}, dt = {:g}, t_end = {:g}, csv = {}\n", config.dim, config.n,
                       config.solver.dt, config.solver.t_end, csv_path(config));
  return drive(config, init, csv, true, std::nullopt, log, options);
}

int cmd_resume(const RunConfig& config, const std::string& checkpoint, std::ostream& log,
               const CommandOptions& options) {
  const CheckpointHeader header = read_checkpoint_header(checkpoint);
  const std::uint64_t expected = digest(config);
  if (header.digest != expected)
    throw ConfigError(fmt::format(
        "checkpoint '{}' was written under config digest {:016x} but the current config has digest {:016x}; "
        "only solver.t_end and the output and audit sections may change between a run and its resume",
        checkpoint, header.digest, expected));
  if (header.dim != config.dim || header.n != config.n)
    throw ConfigError(fmt::format("checkpoint grid {}^{} does not match config grid {}^{}", header.n, header.dim,
                                  config.n, config.dim));
  Checkpoint ck = load_checkpoint(checkpoint);
  ensure_output_dir(config);
  CsvWriter csv(csv_path(config), ck.state.t);
  write_meta(config, lp::DyadicCutoffBank(ck.state.grid()));
  if (!options.quiet)
    log << fmt::format("resume: t = {:g}, steps = {}, t_end = {:g}, csv = {}\n", ck.state.t, ck.state.steps,
                       config.solver.t_end, csv_path(config));
  // an unbroken run only has a row at the checkpoint when it falls on the cadence
  const bool on_cadence = ck.state.steps % std::uint64_t(config.monitor.cadence) == 0;
  return drive(config, ck.state, csv, on_cadence, ck.header.monitor, log, options);
}

int cmd_audit(const RunConfig& config, std::ostream& log, const CommandOptions& options) {
  const fs::path dir = ensure_output_dir(config);
  const std::string path = (dir / "audit.csv").string();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path));
  const auto rows = audit::run_audit(config.audit);
  out << "id,coarse_max_ratio,fine_max_ratio,delta,evaluated,scaling_gap\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{}\n", r.id, num(r.coarse), num(r.fine), num(r.delta), r.evaluated,
                       num(r.scaling_gap));
  out.flush();
  if (!out) throw IoError(fmt::format("error writing '{}'", path));
  if (!options.quiet) {
    log << fmt::format("audit: dim = {}, n = {}/{}, corpus = {} (seed {}), {} rows -> {}\n", config.audit.dim,
                       config.audit.n_coarse, config.audit.n_fine, config.audit.corpus.size,
                       config.audit.corpus.seed, rows.size(), path);
    log << fmt::format("{:<28} {:>12} {:>12} {:>9} {:>6} {:>8}\n", "id", "max@coarse", "max@fine", "delta", "used",
                       "gap");
    for (const auto& r : rows)
      log << fmt::format("{:<28} {:>12.6g} {:>12.6g} {:>9.3g} {:>6} {:>8.3g}\n", r.id, r.coarse, r.fine, r.delta,
                         r.evaluated, r.scaling_gap);
  }
  return kExitOk;
}

int cmd_inspect(const std::string& checkpoint, std::ostream& out) {
  const CheckpointHeader h = read_checkpoint_header(checkpoint);
  out << fmt::format("file: {}\ngrid: {}^{}\nt: {}\nsteps: {}\nscheme: {}\ndigest: {:016x}\n", checkpoint, h.n,
                     h.dim, num(h.t), h.steps, h.scheme, h.digest);
  out << fmt::format("payload_bytes: {}\n", payload_bytes(h.dim, h.n));
  const Checkpoint ck = load_checkpoint(checkpoint);
  out << fmt::format("energy: {}\ndiv_u_max: {:.3g}\nsphere_defect_max: {:.3g}\n", num(diag::energy(ck.state)),
                     solver::divergence_max(ck.state.u), solver::sphere_defect(ck.state.d));
  out << fmt::format("monitor: acc_H2 = {}, acc_bkm = {}, acc_hw = {}, acc_llw = {}, criterion_ok = {}\n",
                     num(h.monitor.last.acc_H2), num(h.monitor.last.acc_bkm), num(h.monitor.last.acc_hw),
                     num(h.monitor.last.acc_llw), h.monitor.last.criterion_ok ? 1 : 0);
  return kExitOk;
}

}  // namespace nlc::cli
