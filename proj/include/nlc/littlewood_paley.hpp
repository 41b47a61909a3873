#pragma once

#include <cstddef>
#include <vector>

#include "nlc/grid.hpp"
#include "nlc/spectral_field.hpp"
#include "nlc/spectral_ops.hpp"

/// Homogeneous Littlewood-Paley decomposition on the periodic lattice and the
/// Besov / Sobolev norms built from it.
///
/// Blocks act as Fourier multipliers phi(2^-j xi); the convolution kernels are
/// never formed. The k = 0 mode belongs to no block, so every norm here is
/// homogeneous (mean excluded). Only shells that meet the lattice exist, which
/// is the torus stand-in for the sum over all j in Z.
namespace nlc::lp {

/// Radial profiles before lattice normalization.
///
/// chi(r) is a C-infinity step from 1 (r <= kPlateauEdge) to 0 (r >= 1) built
/// on exp(-1/x); phi(r) = chi(r/2) - chi(r) is supported in
/// [kPlateauEdge, 2], a subset of [3/4, 8/3], and equals 1 on [1, 2*kPlateauEdge].
inline constexpr double kPlateauEdge = 0.9;

double smooth_step(double x);
double chi_profile(double r);
double phi_profile(double r);

/// phi(r) / sum_{l in Z} phi(2^-l r): the pointwise-normalized annulus profile.
double phi_normalized(double r);

/// Exponent triple of a homogeneous Besov space B^s_{p,q}; p, q may be infinite.
struct BesovIndex {
  double s = -1.0;
  double p = spectral::kInfinity;
  double q = spectral::kInfinity;
};

/// Precomputed multipliers phi(2^-j xi) for every shell j in [j_min, j_max]
/// that meets a nonzero lattice wavenumber. Stored sparsely: each mode
/// belongs to at most two consecutive shells. Immutable once built.
class DyadicCutoffBank {
 public:
  /// Throws ConfigError for n < 16 (fewer than two usable shells).
  explicit DyadicCutoffBank(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  int shell_count() const { return j_max_ - j_min_ + 1; }

  struct Entry {
    std::size_t index;
    double weight;
  };
  /// Nonzero entries of phi(2^-j xi).
  const std::vector<Entry>& shell(int j) const;

  /// Dense multiplier phi(2^-j xi) over the lattice.
  std::vector<double> phi(int j) const;
  /// Dense multiplier chi(2^-j xi) = 1 - sum_{l >= j} phi(2^-l xi), with the
  /// k = 0 entry set to 0 (homogeneous). Valid for j in [j_min, j_max + 1].
  std::vector<double> chi(int j) const;

 private:
  Grid grid_;
  int j_min_ = 0;
  int j_max_ = 0;
  std::vector<std::vector<Entry>> shells_;
};

/// Delta_j f. Throws ConfigError when j is outside [j_min, j_max].
SpectralField lp_block(const DyadicCutoffBank& bank, const SpectralField& f, int j);

/// S_j f. Throws ConfigError when j is outside [j_min, j_max + 1].
SpectralField low_freq_block(const DyadicCutoffBank& bank, const SpectralField& f, int j);

struct BesovResult {
  double value = 0.0;
  int j_min = 0;      // shells actually aggregated (the lattice truncation)
  int j_max = 0;
  int j_argmax = 0;   // shell attaining the largest weighted block norm
};

BesovResult besov_norm_detail(const DyadicCutoffBank& bank, const SpectralField& f, const BesovIndex& idx);
double besov_norm(const DyadicCutoffBank& bank, const SpectralField& f, const BesovIndex& idx);

/// Exact multiplier norm (sum_{k != 0} |k|^{2s} |f_k|^2 vol)^{1/2}.
double sobolev_norm(const SpectralField& f, double s);

/// Multiplier |k|^alpha; the k = 0 mode is always mapped to 0, also for alpha < 0.
SpectralField fractional_laplacian(const SpectralField& f, double alpha);

/// One evaluation of the interpolation inequality
///   ||f||_Lp <= C ||f||_{B^{-alpha}_{inf,inf}}^{1-theta} ||f||_{B^beta_{q,q}}^theta,
/// beta = alpha (p/q - 1), theta = q/p, applied to f minus its mean.
struct InterpolationAudit {
  double lhs = 0.0;
  double low_factor = 0.0;   // ||f||_{B^{-alpha}_{inf,inf}}^{1-theta}
  double high_factor = 0.0;  // ||f||_{B^beta_{q,q}}^theta (or H^beta for the Sobolev form)
  double ratio = 0.0;        // lhs / (low_factor * high_factor); 0 for f = 0
  double beta = 0.0;
  double theta = 0.0;
};

/// Requires alpha > 0 and 1 <= q < p < inf.
InterpolationAudit audit_interpolation(const DyadicCutoffBank& bank, const SpectralField& f, double alpha,
                                       double p, double q);

/// The q = 2 specialization with the Sobolev norm:
///   ||f||_Lp <= C ||f||_{H^{alpha(p/2-1)}}^{2/p} ||f||_{B^{-alpha}_{inf,inf}}^{1-2/p}, 2 < p < inf.
InterpolationAudit audit_interpolation_sobolev(const DyadicCutoffBank& bank, const SpectralField& f,
                                               double alpha, double p);

}  // namespace nlc::lp
