#pragma once

#include <cstdint>

#include "nlc/spectral_field.hpp"

namespace nlc {

/// Velocity and director at one instant. u has dim components and is
/// divergence free; d has three components and unit length pointwise.
struct State {
  double t = 0.0;
  std::uint64_t steps = 0;  // accepted steps since the run started at t = 0
  VectorField u;
  VectorField d;

  const Grid& grid() const { return u.grid(); }
};

}  // namespace nlc
