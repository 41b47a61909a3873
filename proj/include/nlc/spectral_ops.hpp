#pragma once

#include <limits>
#include <span>
#include <vector>

#include "nlc/grid.hpp"
#include "nlc/spectral_field.hpp"

/// Spectral calculus on the periodic grid. All operations are pure: inputs are
/// never modified and a fresh field is returned.
namespace nlc::spectral {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Tolerance for Hermitian symmetry, relative to max(1, max |c_k|).
inline constexpr double kSymmetryTolerance = 1e-10;

/// Forward transform of real samples. Throws CorruptField on size mismatch.
SpectralField to_spectral(const Grid& grid, std::span<const double> samples);

/// Inverse transform to real samples. Throws CorruptField if the coefficients
/// are not Hermitian-symmetric within kSymmetryTolerance.
Samples from_spectral(const SpectralField& f);

std::vector<Samples> from_spectral(const VectorField& v);
VectorField to_spectral(const Grid& grid, const std::vector<Samples>& components);

/// Maximum of |c(-k) - conj(c(k))| over the lattice.
double hermitian_defect(const SpectralField& f);

/// Multiplier (i k_axis)^order. Modes with any Nyquist component are zeroed.
SpectralField derivative(const SpectralField& f, int axis, int order = 1);

VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
SpectralField laplacian(const SpectralField& f);

/// Scalar vorticity d1 v2 - d2 v1 of a 2D field.
SpectralField curl_2d(const VectorField& v);
/// Vorticity vector of a 3D field.
VectorField curl_3d(const VectorField& v);

/// L2-orthogonal projection onto divergence-free fields: v - k (k.v)/|k|^2.
/// The mean passes through; modes with a Nyquist component are zeroed (their
/// -k partner is not on the lattice).
VectorField leray_project(const VectorField& v);

/// Two-thirds rule: zero every mode with some |k_i| > n/3.
SpectralField dealias(const SpectralField& f);
VectorField dealias(const VectorField& v);

/// Lp norm by equal-weight quadrature; p = kInfinity gives the max norm.
double lp_norm(const SpectralField& f, double p);
double lp_norm(const Grid& grid, std::span<const double> samples, double p);

/// Lp norm of the pointwise Euclidean modulus of a vector field.
double lp_norm(const VectorField& v, double p);

/// ||f||_{L2}^2 = (2pi)^n sum_k |c_k|^2.
double l2_norm_squared(const SpectralField& f);
double l2_norm_squared(const VectorField& v);

/// L2 inner product Re <f, g>.
double inner(const SpectralField& f, const SpectralField& g);

/// Mean value (the k = 0 coefficient, real part).
double mean(const SpectralField& f);

/// Copy of f with the k = 0 coefficient removed.
SpectralField without_mean(const SpectralField& f);

/// Pointwise modulus |v(x)| of a vector field given as samples.
Samples modulus(const std::vector<Samples>& components);

}  // namespace nlc::spectral
