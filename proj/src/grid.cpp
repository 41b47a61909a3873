#include "nlc/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "nlc/error.hpp"

namespace nlc {
namespace {

int signed_wavenumber(int m, int n) { return m <= n / 2 ? m : m - n; }

std::shared_ptr<const Lattice> build_lattice(int dim, int n) {
  const std::size_t size = dim == 2 ? std::size_t(n) * n : std::size_t(n) * n * n;
  auto lat = std::make_shared<Lattice>();
  for (auto& axis : lat->k) axis.assign(size, 0);
  lat->k2.resize(size);
  lat->neg.resize(size);
  lat->nyquist.resize(size);
  lat->aliased.resize(size);

  std::size_t stride[3] = {0, 0, 0};
  stride[dim - 1] = 1;
  for (int a = dim - 2; a >= 0; --a) stride[a] = stride[a + 1] * n;

  for (std::size_t idx = 0; idx < size; ++idx) {
    double k2 = 0.0;
    bool nyq = false;
    bool alias = false;
    std::size_t neg = 0;
    for (int a = 0; a < dim; ++a) {
      const int m = int((idx / stride[a]) % n);
      const int k = signed_wavenumber(m, n);
      lat->k[a][idx] = k;
      k2 += double(k) * k;
      nyq = nyq || (k == n / 2);
      alias = alias || (3 * std::abs(k) > n);
      neg += std::size_t((n - m) % n) * stride[a];
    }
    lat->k2[idx] = k2;
    lat->neg[idx] = neg;
    lat->nyquist[idx] = nyq ? 1 : 0;
    lat->aliased[idx] = alias ? 1 : 0;
  }
  return lat;
}

std::shared_ptr<const Lattice> shared_lattice(int dim, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::weak_ptr<const Lattice>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{dim, n}];
  if (auto existing = slot.lock()) return existing;
  auto lat = build_lattice(dim, n);
  slot = lat;
  return lat;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 2 && dim != 3) throw ConfigError("grid.dim must be 2 or 3, got " + std::to_string(dim));
  if (n < 8 || !is_power_of_two(n))
    throw ConfigError("grid.n must be a power of two >= 8, got " + std::to_string(n));
  size_ = dim == 2 ? std::size_t(n) * n : std::size_t(n) * n * n;
  lattice_ = shared_lattice(dim, n);
}

double Grid::cell_volume() const { return std::pow(box_length() / n_, dim_); }

double Grid::volume() const { return std::pow(box_length(), dim_); }

std::size_t Grid::index_of(std::array<int, 3> k) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) {
    const int m = ((k[a] % n_) + n_) % n_;
    idx = idx * n_ + std::size_t(m);
  }
  return idx;
}

double Grid::coordinate(std::size_t idx, int axis) const {
  std::size_t stride = 1;
  for (int a = dim_ - 1; a > axis; --a) stride *= n_;
  const auto m = (idx / stride) % std::size_t(n_);
  return box_length() * double(m) / n_;
}

double Grid::max_modulus() const {
  const double half = n_ / 2.0;
  return std::sqrt(dim_ * half * half);
}

}  // namespace nlc
