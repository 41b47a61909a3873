#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlc/checkpoint.hpp"
#include "nlc/commands.hpp"
#include "nlc/config.hpp"
#include "nlc/error.hpp"
#include "nlc/initial_data.hpp"
#include "nlc/run.hpp"

using namespace nlc;
using namespace nlc::cli;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"([grid]
dim = 2
n = 32

[solver]
dt = 1e-3
t_end = 0.05

[init_u]
kind = taylor_green

[init_d]
kind = constant_director
)";

std::string error_of(const std::string& text, Mode mode = Mode::Run) {
  try {
    parse_config(text, mode);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

/// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nlcsim_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == csv_header());
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    CHECK(row.size() == csv_columns().size());
    rows.push_back(row);
  }
  return rows;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("minimal config fills defaults and echoes back") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.dim == 2);
  CHECK(c.n == 32);
  CHECK(c.solver.dt == 1e-3);
  CHECK(c.solver.renormalize_every == 1);
  CHECK(c.solver.dealias);
  CHECK(c.init_u.kind == init::InitSpec::Kind::TaylorGreen);
  CHECK(c.init_d.kind == init::InitSpec::Kind::ConstantDirector);
  CHECK(c.monitor.epsilon0 == 0.1);
  CHECK(c.monitor.cadence == 1);
  CHECK(c.output.csv == "diagnostics.csv");
  const std::string echo = to_text(c);
  CHECK(to_text(parse_config(echo)) == echo);
  CHECK(digest(parse_config(echo)) == digest(c));
}

TEST_CASE("config errors name the key path") {
  CHECK(error_of(replace(kMinimal, "dt = 1e-3", "dt = 0")) == "solver.dt must be > 0");
  CHECK(error_of(std::string(kMinimal) + "[solvr]\ndt = 1\n").find("'solvr'") != std::string::npos);
  CHECK(error_of(replace(kMinimal, "dt = 1e-3", "dtt = 1e-3")).find("solver.dtt") != std::string::npos);
  CHECK(error_of(replace(kMinimal, "n = 32\n", "")).find("grid.n") != std::string::npos);
  CHECK(error_of(replace(kMinimal, "dt = 1e-3", "dt = fast")).find("solver.dt") != std::string::npos);
  CHECK(error_of(replace(kMinimal, "dt = 1e-3", "dt = 1e-3x")).find("solver.dt") != std::string::npos);
  CHECK(error_of(replace(kMinimal, "n = 32", "n = 48")).find("grid.n") != std::string::npos);
  CHECK(error_of(replace(kMinimal, "kind = constant_director", "kind = taylor_green")).find("init_d.kind") !=
        std::string::npos);
  CHECK(error_of(replace(kMinimal, "kind = constant_director", "kind = near_harmonic\nscale = 0.125")).find("init_d.scale") !=
        std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[monitor]\ncadence = 0\n") == "monitor.cadence must be >= 1");
  CHECK(error_of(std::string(kMinimal) + "[solver]\nnu = 2\n").find("syntax") != std::string::npos);
  CHECK(error_of("stray = 1\n", Mode::Audit).find("'stray'") != std::string::npos);
  CHECK(error_of("[audit]\nn_coarse = 16\nband = 5\n", Mode::Audit).find("audit.n_coarse") != std::string::npos);
  CHECK(error_of("", Mode::Audit).empty());
}

TEST_CASE("digest covers what a resume must keep") {
  const RunConfig base = parse_config(kMinimal);
  RunConfig c = base;
  c.solver.t_end = 7.0;
  c.output.dir = "elsewhere";
  c.output.checkpoint_every = 3;
  c.audit.corpus.size = 5;
  CHECK(digest(c) == digest(base));
  c.solver.dt = 2e-3;
  CHECK(digest(c) != digest(base));
  c = base;
  apply_seed(c, 9);
  CHECK(c.init_u.seed == 9);
  CHECK(c.init_d.theta.seed == 9);
  CHECK(c.audit.corpus.seed == 9);
  CHECK(digest(c) != digest(base));
}

TEST_CASE("checkpoint round trip is bit exact and damaged files are refused") {
  const fs::path dir = scratch("checkpoint");
  const Grid g(2, 32);
  init::InitSpec u{init::InitSpec::Kind::RandomDivfree};
  u.amplitude = 0.5;
  u.seed = 3;
  init::InitSpec d{init::InitSpec::Kind::Equatorial};
  d.theta.kind = init::ThetaProfile::Kind::Random;
  d.theta.seed = 4;
  State s = init::make_state(g, u, d);
  solver::SolverConfig cfg;
  cfg.t_end = 0.005;
  const RunResult res = run(s, cfg, {});
  const std::string path = (dir / "a.nlcchk").string();
  save_checkpoint(path, res.final_state, "if-rk2", 0xabcdefull, res.monitor);
  CHECK(fs::file_size(path) > payload_bytes(2, 32));

  const Checkpoint ck = load_checkpoint(path);
  CHECK(ck.header.digest == 0xabcdefull);
  CHECK(ck.header.scheme == "if-rk2");
  CHECK(ck.state.t == res.final_state.t);
  CHECK(ck.state.steps == res.final_state.steps);
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(ck.state.u[c][i] == res.final_state.u[c][i]);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(ck.state.d[c][i] == res.final_state.d[c][i]);
  CHECK(ck.header.monitor.last.acc_H2 == res.monitor.last.acc_H2);
  CHECK(ck.header.monitor.last.integrands.llw == res.monitor.last.integrands.llw);
  CHECK(ck.header.monitor.t_sup_besov_u == res.monitor.t_sup_besov_u);

  const std::string bytes = slurp(path);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream(dir / name, std::ios::binary) << content;
    return (dir / name).string();
  };
  CHECK_THROWS_AS(load_checkpoint(write("short", bytes.substr(0, bytes.size() - 16))), IoError);
  CHECK_THROWS_AS(load_checkpoint(write("header", bytes.substr(0, 20))), IoError);
  CHECK_THROWS_AS(load_checkpoint(write("long", bytes + "x")), IoError);
  std::string magic = bytes;
  magic[0] = 'X';
  CHECK_THROWS_AS(load_checkpoint(write("magic", magic)), IoError);
  // scale the mean of d_0: the director leaves the sphere
  std::string broken = bytes;
  const std::size_t d0 = bytes.size() - payload_bytes(2, 32) + 2 * g.size() * 16;
  const double big = 5.0;
  std::memcpy(broken.data() + d0, &big, 8);
  CHECK_THROWS_AS(load_checkpoint(write("sphere", broken)), IoError);
  CHECK_THROWS_AS(load_checkpoint((dir / "missing").string()), IoError);
}

TEST_CASE("run command: Taylor-Green energy column and artifacts") {
  const fs::path dir = scratch("tg");
  RunConfig c = parse_config(replace(kMinimal, "t_end = 0.05", "t_end = 0.1"));
  c.output.dir = dir.string();
  c.monitor.cadence = 10;
  std::ostringstream log;
  CHECK(cmd_run(c, log) == kExitOk);
  const auto rows = read_csv(dir / "diagnostics.csv");
  REQUIRE(rows.size() == 11);
  for (const auto& r : rows) CHECK(std::abs(r[1] - std::exp(-4.0 * r[0]) * rows[0][1]) <= 1e-5 * rows[0][1]);
  CHECK(rows.back()[0] == doctest::Approx(0.1));
  CHECK(fs::exists(dir / "diagnostics.csv.meta.json"));
  CHECK(fs::exists(checkpoint_path(c, 100)));
  CHECK(log.str().find("summary: ") != std::string::npos);
  CHECK(log.str().find("sup besov_u = 1 at t = 0") != std::string::npos);
}

TEST_CASE("run command: zero data gives zero norm columns") {
  const fs::path dir = scratch("zero");
  RunConfig c = parse_config(replace(kMinimal, "kind = taylor_green", "kind = zero"));
  c.output.dir = dir.string();
  std::ostringstream log;
  CHECK(cmd_run(c, log, {true}) == kExitOk);
  const auto rows = read_csv(dir / "diagnostics.csv");
  REQUIRE(rows.size() == 51);
  for (const auto& r : rows)
    for (std::size_t col = 1; col <= 10; ++col) CHECK(r[col] == 0.0);
}

TEST_CASE("run command: blow-up exits with its own status") {
  const fs::path dir = scratch("blowup");
  RunConfig c = parse_config(replace(replace(kMinimal, "dt = 1e-3", "dt = 1e-12"), "t_end = 0.05", "t_end = 1e-11"));
  c.n = 16;
  c.init_u.amplitude = 2e8;
  c.output.dir = dir.string();
  std::ostringstream log;
  CHECK(cmd_run(c, log) == kExitBlowup);
  const auto rows = read_csv(dir / "diagnostics.csv");
  REQUIRE(rows.size() == 2);
  CHECK(rows.back()[14] == 1.0);
  CHECK(rows.front()[14] == 0.0);
  CHECK(kExitBlowup != kExitIo);
}

TEST_CASE("resume reproduces the unbroken run") {
  const fs::path full_dir = scratch("resume_full");
  const fs::path part_dir = scratch("resume_part");
  std::string text = kMinimal;
  text = replace(text, "kind = taylor_green", "kind = random_divfree\namplitude = 0.5\nseed = 11");
  text = replace(text, "kind = constant_director", "kind = equatorial\ntheta_kind = random\ntheta_seed = 12");
  RunConfig full = parse_config(text);
  full.monitor.cadence = 3;
  full.output.dir = full_dir.string();
  std::ostringstream log;
  REQUIRE(cmd_run(full, log) == kExitOk);

  // stop at step 20 (off the cadence), then resume to the end
  RunConfig part = full;
  part.output.dir = part_dir.string();
  part.solver.t_end = 0.02;
  REQUIRE(cmd_run(part, log) == kExitOk);
  part.solver.t_end = full.solver.t_end;
  REQUIRE(cmd_resume(part, checkpoint_path(part, 20), log) == kExitOk);

  const auto a = read_csv(full_dir / "diagnostics.csv");
  const auto b = read_csv(part_dir / "diagnostics.csv");
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) CHECK(std::abs(a[i][j] - b[i][j]) <= 1e-12 * (1.0 + std::abs(a[i][j])));

  RunConfig altered = part;
  altered.solver.nu = 2.0;
  try {
    cmd_resume(altered, checkpoint_path(part, 20), log);
    FAIL("resume with an altered config was accepted");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("digest") != std::string::npos);
  }
}

TEST_CASE("audit command: zero corpus and determinism") {
  const fs::path dir = scratch("audit");
  RunConfig c = parse_config("[audit]\ncorpus_size = 1\nzero_corpus = true\n", Mode::Audit);
  c.output.dir = dir.string();
  std::ostringstream log;
  CHECK(cmd_audit(c, log) == kExitOk);
  CHECK(slurp(dir / "audit.csv") == "id,coarse_max_ratio,fine_max_ratio,delta,evaluated,scaling_gap\n");

  c = parse_config("[audit]\ncorpus_size = 6\nseed = 3\n", Mode::Audit);
  c.output.dir = dir.string();
  CHECK(cmd_audit(c, log) == kExitOk);
  const std::string first = slurp(dir / "audit.csv");
  CHECK(cmd_audit(c, log) == kExitOk);
  CHECK(slurp(dir / "audit.csv") == first);
  CHECK(first.find("interp a=1 p=4 q=2,") != std::string::npos);
}
