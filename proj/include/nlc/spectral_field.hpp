#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include "nlc/grid.hpp"

namespace nlc {

using Complex = std::complex<double>;

/// 64-byte aligned storage so that transforms run on SIMD plans.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlign)); }
  void deallocate(T* p, std::size_t) { ::operator delete(p, kAlign); }
  template <class U>
  bool operator==(const AlignedAllocator<U>&) const { return true; }
};

using CoeffVector = std::vector<Complex, AlignedAllocator<Complex>>;

/// Real samples of a scalar field on the grid points, flat row-major layout.
using Samples = std::vector<double>;

/// One scalar field stored as Fourier-series coefficients on the full lattice.
///
/// Coefficients are normalized so that f(x) = sum_k c_k exp(i k.x); a constant
/// field c has c_0 = c.
class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, CoeffVector coeffs);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }

  Complex& operator[](std::size_t idx) { return coeffs_[idx]; }
  const Complex& operator[](std::size_t idx) const { return coeffs_[idx]; }

  /// Coefficient of wavenumber k (components reduced mod n).
  Complex mode(std::array<int, 3> k) const { return coeffs_[grid_.index_of(k)]; }
  Complex& mode(std::array<int, 3> k) { return coeffs_[grid_.index_of(k)]; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

  /// Max |c_k|.
  double max_abs() const;
  bool all_finite() const;

 private:
  Grid grid_;
  CoeffVector coeffs_;
};

/// Stack of scalar fields on one grid: velocity (dim components) or director (3).
class VectorField {
 public:
  VectorField(Grid grid, int components);
  explicit VectorField(std::vector<SpectralField> components);

  const Grid& grid() const { return components_.front().grid(); }
  int size() const { return int(components_.size()); }

  SpectralField& operator[](int i) { return components_[i]; }
  const SpectralField& operator[](int i) const { return components_[i]; }

  auto begin() { return components_.begin(); }
  auto end() { return components_.end(); }
  auto begin() const { return components_.begin(); }
  auto end() const { return components_.end(); }

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double scale);

  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(double s, VectorField a) { return a *= s; }

  double max_abs() const;
  bool all_finite() const;

 private:
  std::vector<SpectralField> components_;
};

}  // namespace nlc
