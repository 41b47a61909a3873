#pragma once

#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "nlc/config.hpp"
#include "nlc/diagnostics.hpp"

/// Subcommands of the nlcsim tool. Errors propagate as exceptions; the tool
/// maps them to exit statuses.
namespace nlc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitBlowup = 2;
inline constexpr int kExitIo = 3;

/// Exact column order of the diagnostics CSV.
const std::vector<std::string>& csv_columns();
std::string csv_header();
std::string csv_row(const diag::DiagnosticsRecord& record);

/// Sole owner of one diagnostics CSV; every row is flushed as it is written.
class CsvWriter {
 public:
  /// Fresh file with the header row.
  explicit CsvWriter(const std::string& path);
  /// Keep the header and the rows with t < t_keep of an existing file, then append.
  CsvWriter(const std::string& path, double t_keep);

  void write(const diag::DiagnosticsRecord& record);

 private:
  std::string path_;
  std::ofstream out_;
};

struct CommandOptions {
  bool quiet = false;
};

/// Returns kExitOk or kExitBlowup. Writes the CSV, its .meta.json sidecar and
/// checkpoints into config.output.dir.
int cmd_run(const RunConfig& config, std::ostream& log, const CommandOptions& options = {});

/// Continues from a checkpoint to config.solver.t_end. Throws ConfigError when
/// the checkpoint digest does not match the config.
int cmd_resume(const RunConfig& config, const std::string& checkpoint, std::ostream& log,
               const CommandOptions& options = {});

/// Writes audit.csv (id, coarse_max_ratio, fine_max_ratio, delta, evaluated,
/// scaling_gap) into config.output.dir.
int cmd_audit(const RunConfig& config, std::ostream& log, const CommandOptions& options = {});

/// Prints the header and invariant residuals of a checkpoint.
int cmd_inspect(const std::string& checkpoint, std::ostream& out);

/// Path of the checkpoint written after `steps` steps.
std::string checkpoint_path(const RunConfig& config, std::uint64_t steps);

}  // namespace nlc::cli
