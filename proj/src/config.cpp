#include "nlc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "nlc/error.hpp"

namespace nlc::cli {
namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* what) {
  throw ConfigError(fmt::format("{}: cannot parse '{}' as {}", key, value, what));
}

double to_double(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    bad_value(key, raw, "a finite number");
  return out;
}

long long to_int(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, raw, "an integer");
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, raw, "a non-negative integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& raw) {
  std::string v = trim(raw);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  bad_value(key, raw, "a boolean");
}

std::array<double, 3> to_vec3(const std::string& key, const std::string& raw) {
  std::array<double, 3> out{};
  std::stringstream ss(raw);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == 3) bad_value(key, raw, "three comma-separated numbers");
    out[i++] = to_double(key, part);
  }
  if (i != 3) bad_value(key, raw, "three comma-separated numbers");
  return out;
}

bool power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

/// Setter per key.
using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"grid",
       {
           {"dim", [](RunConfig& c, auto& k, auto& v) { c.dim = int(to_int(k, v)); }},
           {"n", [](RunConfig& c, auto& k, auto& v) { c.n = int(to_int(k, v)); }},
       }},
      {"solver",
       {
           {"dt", [](RunConfig& c, auto& k, auto& v) { c.solver.dt = to_double(k, v); }},
           {"t_end", [](RunConfig& c, auto& k, auto& v) { c.solver.t_end = to_double(k, v); }},
           {"renormalize_every",
            [](RunConfig& c, auto& k, auto& v) { c.solver.renormalize_every = int(to_int(k, v)); }},
           {"dealias", [](RunConfig& c, auto& k, auto& v) { c.solver.dealias = to_bool(k, v); }},
           {"scheme", [](RunConfig& c, auto&, auto& v) { c.solver.scheme = solver::scheme_from_string(trim(v)); }},
           {"nu", [](RunConfig& c, auto& k, auto& v) { c.solver.nu = to_double(k, v); }},
           {"lambda", [](RunConfig& c, auto& k, auto& v) { c.solver.lambda = to_double(k, v); }},
           {"gamma", [](RunConfig& c, auto& k, auto& v) { c.solver.gamma = to_double(k, v); }},
       }},
      {"init_u",
       {
           {"kind", [](RunConfig& c, auto&, auto& v) { c.init_u.kind = init::kind_from_string(trim(v)); }},
           {"amplitude", [](RunConfig& c, auto& k, auto& v) { c.init_u.amplitude = to_double(k, v); }},
           {"spectrum_slope", [](RunConfig& c, auto& k, auto& v) { c.init_u.spectrum_slope = to_double(k, v); }},
           {"seed", [](RunConfig& c, auto& k, auto& v) { c.init_u.seed = to_uint(k, v); }},
       }},
      {"init_d",
       {
           {"kind", [](RunConfig& c, auto&, auto& v) { c.init_d.kind = init::kind_from_string(trim(v)); }},
           {"direction", [](RunConfig& c, auto& k, auto& v) { c.init_d.direction = to_vec3(k, v); }},
           {"scale", [](RunConfig& c, auto& k, auto& v) { c.init_d.scale = to_double(k, v); }},
           {"theta_kind",
            [](RunConfig& c, auto& k, auto& v) {
              const std::string s = trim(v);
              if (s == "sine") c.init_d.theta.kind = init::ThetaProfile::Kind::Sine;
              else if (s == "random") c.init_d.theta.kind = init::ThetaProfile::Kind::Random;
              else throw ConfigError(fmt::format("{}: expected 'sine' or 'random', got '{}'", k, s));
            }},
           {"theta_amplitude", [](RunConfig& c, auto& k, auto& v) { c.init_d.theta.amplitude = to_double(k, v); }},
           {"theta_mode", [](RunConfig& c, auto& k, auto& v) { c.init_d.theta.mode = int(to_int(k, v)); }},
           {"theta_axis", [](RunConfig& c, auto& k, auto& v) { c.init_d.theta.axis = int(to_int(k, v)); }},
           {"theta_slope", [](RunConfig& c, auto& k, auto& v) { c.init_d.theta.slope = to_double(k, v); }},
           {"theta_band", [](RunConfig& c, auto& k, auto& v) { c.init_d.theta.band = int(to_int(k, v)); }},
           {"theta_seed", [](RunConfig& c, auto& k, auto& v) { c.init_d.theta.seed = to_uint(k, v); }},
       }},
      {"monitor",
       {
           {"epsilon0", [](RunConfig& c, auto& k, auto& v) { c.monitor.epsilon0 = to_double(k, v); }},
           {"cadence", [](RunConfig& c, auto& k, auto& v) { c.monitor.cadence = int(to_int(k, v)); }},
           {"acc_h2", [](RunConfig& c, auto& k, auto& v) { c.monitor.acc_h2 = to_bool(k, v); }},
           {"acc_bkm", [](RunConfig& c, auto& k, auto& v) { c.monitor.acc_bkm = to_bool(k, v); }},
           {"acc_hw", [](RunConfig& c, auto& k, auto& v) { c.monitor.acc_hw = to_bool(k, v); }},
           {"acc_llw", [](RunConfig& c, auto& k, auto& v) { c.monitor.acc_llw = to_bool(k, v); }},
       }},
      {"output",
       {
           {"dir", [](RunConfig& c, auto&, auto& v) { c.output.dir = trim(v); }},
           {"csv", [](RunConfig& c, auto&, auto& v) { c.output.csv = trim(v); }},
           {"checkpoint_every",
            [](RunConfig& c, auto& k, auto& v) { c.output.checkpoint_every = int(to_int(k, v)); }},
           {"checkpoint_prefix", [](RunConfig& c, auto&, auto& v) { c.output.checkpoint_prefix = trim(v); }},
       }},
      {"audit",
       {
           {"dim", [](RunConfig& c, auto& k, auto& v) { c.audit.dim = int(to_int(k, v)); }},
           {"n_coarse", [](RunConfig& c, auto& k, auto& v) { c.audit.n_coarse = int(to_int(k, v)); }},
           {"n_fine", [](RunConfig& c, auto& k, auto& v) { c.audit.n_fine = int(to_int(k, v)); }},
           {"corpus_size", [](RunConfig& c, auto& k, auto& v) { c.audit.corpus.size = int(to_int(k, v)); }},
           {"seed", [](RunConfig& c, auto& k, auto& v) { c.audit.corpus.seed = to_uint(k, v); }},
           {"band", [](RunConfig& c, auto& k, auto& v) { c.audit.corpus.band = int(to_int(k, v)); }},
           {"zero_corpus", [](RunConfig& c, auto& k, auto& v) { c.audit.corpus.zero_only = to_bool(k, v); }},
           {"alpha", [](RunConfig& c, auto& k, auto& v) { c.audit.alpha = to_double(k, v); }},
       }},
  };
  return table;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void validate_run(const RunConfig& c) {
  require(c.dim == 2 || c.dim == 3, fmt::format("grid.dim must be 2 or 3, got {}", c.dim));
  require(power_of_two(c.n) && c.n >= 16, fmt::format("grid.n must be a power of two >= 16, got {}", c.n));
  require(c.solver.dt > 0.0, "solver.dt must be > 0");
  require(c.solver.t_end >= 0.0, "solver.t_end must be >= 0");
  require(c.solver.renormalize_every >= 1, "solver.renormalize_every must be >= 1");
  require(c.solver.nu > 0.0, "solver.nu must be > 0");
  require(c.solver.lambda >= 0.0, "solver.lambda must be >= 0");
  require(c.solver.gamma > 0.0, "solver.gamma must be > 0");

  using K = init::InitSpec::Kind;
  const K u = c.init_u.kind;
  require(u == K::Zero || u == K::TaylorGreen || u == K::RandomDivfree,
          fmt::format("init_u.kind '{}' is not a velocity initial condition", init::to_string(u)));
  require(c.init_u.amplitude >= 0.0, "init_u.amplitude must be >= 0");
  const K d = c.init_d.kind;
  require(d == K::ConstantDirector || d == K::Equatorial || d == K::NearHarmonic,
          fmt::format("init_d.kind '{}' is not a director initial condition", init::to_string(d)));
  if (d == K::ConstantDirector) {
    const auto& v = c.init_d.direction;
    require(v[0] != 0.0 || v[1] != 0.0 || v[2] != 0.0, "init_d.direction must be nonzero");
  }
  if (d == K::NearHarmonic) {
    require(c.dim == 2, "init_d.kind near_harmonic requires grid.dim = 2");
    require(c.init_d.scale > 0.0 && c.init_d.scale <= 1.0, "init_d.scale must lie in (0, 1]");
    require(c.init_d.scale * c.n >= 8.0,
            fmt::format("init_d.scale {:g} is unresolvable on grid.n = {} (need scale * n >= 8)", c.init_d.scale, c.n));
  }
  if (d == K::Equatorial) {
    require(c.init_d.theta.axis >= 0 && c.init_d.theta.axis < c.dim, "init_d.theta_axis must lie in [0, dim)");
    require(c.init_d.theta.band >= 1, "init_d.theta_band must be >= 1");
    require(c.init_d.theta.amplitude >= 0.0, "init_d.theta_amplitude must be >= 0");
  }
  require(c.monitor.epsilon0 > 0.0, "monitor.epsilon0 must be > 0");
  require(c.monitor.cadence >= 1, "monitor.cadence must be >= 1");
  require(!c.output.dir.empty(), "output.dir must not be empty");
  require(!c.output.csv.empty(), "output.csv must not be empty");
  require(c.output.checkpoint_every >= 0, "output.checkpoint_every must be >= 0");
  require(!c.output.checkpoint_prefix.empty(), "output.checkpoint_prefix must not be empty");
}

void validate_audit(const RunConfig& c) {
  const auto& a = c.audit;
  require(a.dim == 2 || a.dim == 3, fmt::format("audit.dim must be 2 or 3, got {}", a.dim));
  require(power_of_two(a.n_coarse) && a.n_coarse >= 16, "audit.n_coarse must be a power of two >= 16");
  require(power_of_two(a.n_fine) && a.n_fine > a.n_coarse, "audit.n_fine must be a power of two > audit.n_coarse");
  require(a.corpus.size >= 1, "audit.corpus_size must be >= 1");
  require(a.corpus.band >= 1, "audit.band must be >= 1");
  require(a.n_coarse > 4 * a.corpus.band, "audit.n_coarse must exceed 4 * audit.band");
  require(a.alpha > 0.0, "audit.alpha must be > 0");
}

std::string num(double v) { return fmt::format("{:.17g}", v); }
std::string flag(bool v) { return v ? "true" : "false"; }

std::string text(const RunConfig& c, bool for_digest) {
  std::string s;
  auto line = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
  s += "[grid]\n";
  line("dim", std::to_string(c.dim));
  line("n", std::to_string(c.n));
  s += "\n[solver]\n";
  line("dt", num(c.solver.dt));
  if (!for_digest) line("t_end", num(c.solver.t_end));
  line("renormalize_every", std::to_string(c.solver.renormalize_every));
  line("dealias", flag(c.solver.dealias));
  line("scheme", solver::to_string(c.solver.scheme));
  line("nu", num(c.solver.nu));
  line("lambda", num(c.solver.lambda));
  line("gamma", num(c.solver.gamma));
  s += "\n[init_u]\n";
  line("kind", init::to_string(c.init_u.kind));
  line("amplitude", num(c.init_u.amplitude));
  line("spectrum_slope", num(c.init_u.spectrum_slope));
  line("seed", std::to_string(c.init_u.seed));
  s += "\n[init_d]\n";
  line("kind", init::to_string(c.init_d.kind));
  const auto& dir = c.init_d.direction;
  line("direction", num(dir[0]) + "," + num(dir[1]) + "," + num(dir[2]));
  line("scale", num(c.init_d.scale));
  line("theta_kind", c.init_d.theta.kind == init::ThetaProfile::Kind::Sine ? "sine" : "random");
  line("theta_amplitude", num(c.init_d.theta.amplitude));
  line("theta_mode", std::to_string(c.init_d.theta.mode));
  line("theta_axis", std::to_string(c.init_d.theta.axis));
  line("theta_slope", num(c.init_d.theta.slope));
  line("theta_band", std::to_string(c.init_d.theta.band));
  line("theta_seed", std::to_string(c.init_d.theta.seed));
  s += "\n[monitor]\n";
  line("epsilon0", num(c.monitor.epsilon0));
  line("cadence", std::to_string(c.monitor.cadence));
  line("acc_h2", flag(c.monitor.acc_h2));
  line("acc_bkm", flag(c.monitor.acc_bkm));
  line("acc_hw", flag(c.monitor.acc_hw));
  line("acc_llw", flag(c.monitor.acc_llw));
  if (!for_digest) {
    s += "\n[output]\n";
    line("dir", c.output.dir);
    line("csv", c.output.csv);
    line("checkpoint_every", std::to_string(c.output.checkpoint_every));
    line("checkpoint_prefix", c.output.checkpoint_prefix);
  }
  if (for_digest) return s;
  s += "\n[audit]\n";
  line("dim", std::to_string(c.audit.dim));
  line("n_coarse", std::to_string(c.audit.n_coarse));
  line("n_fine", std::to_string(c.audit.n_fine));
  line("corpus_size", std::to_string(c.audit.corpus.size));
  line("seed", std::to_string(c.audit.corpus.seed));
  line("band", std::to_string(c.audit.corpus.band));
  line("zero_corpus", flag(c.audit.corpus.zero_only));
  line("alpha", num(c.audit.alpha));
  return s;
}

}  // namespace

RunConfig parse_config(const std::string& input, Mode mode) {
  pt::ptree tree;
  std::istringstream in(input);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config syntax error at line {}: {}", e.line(), e.message()));
  }

  RunConfig c;
  std::set<std::string> seen;
  for (const auto& [section, body] : tree) {
    const auto sec = schema().find(section);
    if (body.empty() || sec == schema().end()) {
      // top-level keys without a section land here as leaves
      throw ConfigError(fmt::format("unknown config {} '{}'", body.empty() ? "key" : "section", section));
    }
    for (const auto& [key, value] : body) {
      const std::string path = section + "." + key;
      const auto setter = sec->second.find(key);
      if (setter == sec->second.end()) throw ConfigError(fmt::format("unknown config key '{}'", path));
      try {
        setter->second(c, path, value.data());
      } catch (const ConfigError& e) {
        const std::string what = e.what();
        throw ConfigError(what.rfind(path, 0) == 0 ? what : path + ": " + what);
      }
      seen.insert(path);
    }
  }

  if (mode == Mode::Run) {
    for (const char* key : {"grid.dim", "grid.n", "solver.dt", "solver.t_end", "init_u.kind", "init_d.kind"})
      if (!seen.count(key)) throw ConfigError(fmt::format("missing required key '{}'", key));
    validate_run(c);
  }
  validate_audit(c);
  return c;
}

RunConfig load_config(const std::string& path, Mode mode) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config file '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), mode);
}

std::string to_text(const RunConfig& config) { return text(config, false); }

std::uint64_t digest(const RunConfig& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : text(config, true)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

void apply_seed(RunConfig& config, std::uint64_t seed) {
  config.init_u.seed = seed;
  config.init_d.theta.seed = seed;
  config.audit.corpus.seed = seed;
}

}  // namespace nlc::cli
