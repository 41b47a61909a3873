#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "nlc/grid.hpp"
#include "nlc/spectral_field.hpp"
#include "nlc/state.hpp"

/// Constructors for initial velocity and director fields.
namespace nlc::init {

/// 2D: a (sin x cos y, -cos x sin y). 3D: a (sin x cos y cos z, -cos x sin y cos z, 0).
VectorField taylor_green(const Grid& grid, double amplitude);

/// Gaussian coefficients with amplitude |k|^slope, Hermitian-symmetrized,
/// dealiased, Leray-projected and scaled to ||u||_L2 = amplitude.
VectorField random_divfree(const Grid& grid, double slope, std::uint64_t seed, double amplitude);

/// Scalar angle field for the equatorial director.
struct ThetaProfile {
  enum class Kind { Sine, Random };
  Kind kind = Kind::Sine;
  double amplitude = 0.1;
  int mode = 1;               // Sine: amplitude * sin(mode * x_axis)
  int axis = 0;
  double slope = -3.0;        // Random: spectrum |k|^slope on 0 < |k_i| <= band
  int band = 4;
  std::uint64_t seed = 0;     // Random: amplitude is the RMS value
};

SpectralField theta_field(const Grid& grid, const ThetaProfile& profile);

/// d = (cos theta, sin theta, 0) formed pointwise.
VectorField equatorial_director(const Grid& grid, const SpectralField& theta);

/// Constant unit director along `direction` (normalized).
VectorField constant_director(const Grid& grid, std::array<double, 3> direction = {0.0, 0.0, 1.0});

/// 2D degree-one stereographic profile of width `scale` centred at (pi, pi),
/// with polar angle 2 atan(scale / r) from the north pole, tapered by a smooth
/// window so that d is exactly the north pole for r >= kWindowOuter.
/// Throws ConfigError if dim != 2, scale is outside (0, 1] or scale * n < 8.
inline constexpr double kWindowInner = 1.5;
inline constexpr double kWindowOuter = 2.8;
VectorField near_harmonic(const Grid& grid, double scale);

/// Full description of one initial field (velocity or director).
struct InitSpec {
  enum class Kind { Zero, TaylorGreen, RandomDivfree, ConstantDirector, Equatorial, NearHarmonic };
  Kind kind = Kind::Zero;
  double amplitude = 1.0;
  double spectrum_slope = -3.0;
  std::uint64_t seed = 0;
  ThetaProfile theta;
  double scale = 1.0;
  std::array<double, 3> direction{0.0, 0.0, 1.0};
};

std::string to_string(InitSpec::Kind kind);
InitSpec::Kind kind_from_string(const std::string& name);

VectorField make_velocity(const Grid& grid, const InitSpec& spec);
VectorField make_director(const Grid& grid, const InitSpec& spec);
State make_state(const Grid& grid, const InitSpec& velocity, const InitSpec& director);

}  // namespace nlc::init
