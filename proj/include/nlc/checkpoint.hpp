#pragma once

#include <cstdint>
#include <string>

#include "nlc/run.hpp"
#include "nlc/state.hpp"

/// Binary checkpoints, little-endian:
///   "NLCSIM1\0", u32 dim, u32 n, f64 t, u64 steps, char[16] scheme tag,
///   u64 config digest, u32 count + count f64 of monitor state,
///   payload: u_0..u_{dim-1}, d_0..d_2, each n^dim (re, im) f64 pairs in lattice order.
namespace nlc::cli {

inline constexpr char kCheckpointMagic[8] = {'N', 'L', 'C', 'S', 'I', 'M', '1', '\0'};

struct CheckpointHeader {
  int dim = 0;
  int n = 0;
  double t = 0.0;
  std::uint64_t steps = 0;
  std::string scheme;
  std::uint64_t digest = 0;
  MonitorState monitor;
};

struct Checkpoint {
  CheckpointHeader header;
  State state;
};

/// Written to a temporary file and renamed into place. Throws IoError.
void save_checkpoint(const std::string& path, const State& state, const std::string& scheme, std::uint64_t digest,
                     const MonitorState& monitor);

/// Throws IoError on a bad magic, truncated or oversized file, or a state that
/// fails the divergence and unit-length invariants.
Checkpoint load_checkpoint(const std::string& path);

/// Header only; the payload length is still checked against the file size.
CheckpointHeader read_checkpoint_header(const std::string& path);

std::uint64_t payload_bytes(int dim, int n);

}  // namespace nlc::cli
