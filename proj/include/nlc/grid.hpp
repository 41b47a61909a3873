#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

namespace nlc {

/// Per-grid wavenumber tables, shared by every Grid with the same (dim, n).
struct Lattice {
  std::array<std::vector<int>, 3> k;  // integer wavenumber per flat index and axis
  std::vector<double> k2;             // |k|^2
  std::vector<std::size_t> neg;       // flat index of -k
  std::vector<std::uint8_t> nyquist;  // 1 if any component equals n/2
  std::vector<std::uint8_t> aliased;  // 1 if any |k_i| > n/3
};

/// Uniform periodic grid on [0, 2pi)^dim with n points per axis.
///
/// Flat indices are row-major with axis 0 slowest. Wavenumbers along an axis
/// run over {-n/2+1, ..., n/2}; the component n/2 is the Nyquist (unbalanced)
/// mode.
class Grid {
 public:
  Grid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }

  static constexpr double box_length() { return 2.0 * std::numbers::pi; }
  double cell_volume() const;
  double volume() const;

  int wavenumber(std::size_t idx, int axis) const { return lattice_->k[axis][idx]; }
  double k_squared(std::size_t idx) const { return lattice_->k2[idx]; }
  std::size_t negated(std::size_t idx) const { return lattice_->neg[idx]; }
  bool is_nyquist(std::size_t idx) const { return lattice_->nyquist[idx] != 0; }
  bool is_aliased(std::size_t idx) const { return lattice_->aliased[idx] != 0; }

  /// Flat index of the mode with the given wavenumber; components are reduced mod n.
  std::size_t index_of(std::array<int, 3> k) const;

  /// Physical coordinate of grid point `idx` along `axis`.
  double coordinate(std::size_t idx, int axis) const;

  /// Largest |k| present on the lattice.
  double max_modulus() const;

  friend bool operator==(const Grid& a, const Grid& b) { return a.dim_ == b.dim_ && a.n_ == b.n_; }

 private:
  int dim_;
  int n_;
  std::size_t size_;
  std::shared_ptr<const Lattice> lattice_;
};

}  // namespace nlc
