#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nlc/commands.hpp"
#include "nlc/config.hpp"
#include "nlc/error.hpp"

using namespace nlc;

namespace {

struct Flags {
  std::string config;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
};

cli::RunConfig load(const Flags& flags, cli::Mode mode) {
  cli::RunConfig config =
      flags.config.empty() ? cli::parse_config("", mode) : cli::load_config(flags.config, mode);
  if (!flags.output_dir.empty()) config.output.dir = flags.output_dir;
  if (flags.seed) cli::apply_seed(config, *flags.seed);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlcsim: pseudo-spectral nematic liquid crystal flow with regularity-criterion monitoring"};
  app.require_subcommand(1);
  Flags flags;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", flags.config, "configuration file")->check(CLI::ExistingFile);
    if (config_required) opt->required();
    sub->add_option("--output-dir", flags.output_dir, "overrides output.dir");
    sub->add_option("--seed", flags.seed, "overrides every seed");
    sub->add_flag("--quiet", flags.quiet, "only print the summary line and errors");
  };

  auto* run = app.add_subcommand("run", "integrate a configured run, writing the diagnostics CSV and checkpoints");
  add_common(run, true);
  auto* audit = app.add_subcommand("audit", "measure inequality constants over a seeded corpus");
  add_common(audit, false);
  std::string checkpoint;
  auto* resume = app.add_subcommand("resume", "continue a run from a checkpoint");
  resume->add_option("checkpoint", checkpoint, "checkpoint file")->required()->check(CLI::ExistingFile);
  add_common(resume, true);
  auto* inspect = app.add_subcommand("inspect-checkpoint", "print a checkpoint header and invariant residuals");
  inspect->add_option("checkpoint", checkpoint, "checkpoint file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  try {
    const cli::CommandOptions options{flags.quiet};
    if (run->parsed()) return cli::cmd_run(load(flags, cli::Mode::Run), std::cout, options);
    if (audit->parsed()) return cli::cmd_audit(load(flags, cli::Mode::Audit), std::cout, options);
    if (resume->parsed()) return cli::cmd_resume(load(flags, cli::Mode::Run), checkpoint, std::cout, options);
    return cli::cmd_inspect(checkpoint, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitConfig;
  } catch (const ConstraintLoss& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return cli::kExitBlowup;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return cli::kExitIo;
  } catch (const CorruptField& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return cli::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitIo;
  }
}
