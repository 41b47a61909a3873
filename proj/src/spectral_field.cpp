#include "nlc/spectral_field.hpp"

#include <algorithm>
#include <cmath>

#include "nlc/error.hpp"

namespace nlc {
namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw ConfigError("field grids differ");
}

}  // namespace

SpectralField::SpectralField(Grid grid) : grid_(std::move(grid)), coeffs_(grid_.size()) {}

SpectralField::SpectralField(Grid grid, CoeffVector coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw CorruptField("coefficient count " + std::to_string(coeffs_.size()) +
                       " does not match grid size " + std::to_string(grid_.size()));
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

double SpectralField::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool SpectralField::all_finite() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

VectorField::VectorField(Grid grid, int components) {
  components_.reserve(components);
  for (int i = 0; i < components; ++i) components_.emplace_back(grid);
}

VectorField::VectorField(std::vector<SpectralField> components) : components_(std::move(components)) {
  if (components_.empty()) throw ConfigError("vector field needs at least one component");
  for (const auto& c : components_) require_same_grid(components_.front().grid(), c.grid());
}

VectorField& VectorField::operator+=(const VectorField& other) {
  if (other.size() != size()) throw ConfigError("vector field component counts differ");
  for (int i = 0; i < size(); ++i) components_[i] += other.components_[i];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  if (other.size() != size()) throw ConfigError("vector field component counts differ");
  for (int i = 0; i < size(); ++i) components_[i] -= other.components_[i];
  return *this;
}

VectorField& VectorField::operator*=(double scale) {
  for (auto& c : components_) c *= scale;
  return *this;
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& c : components_) m = std::max(m, c.max_abs());
  return m;
}

bool VectorField::all_finite() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const SpectralField& c) { return c.all_finite(); });
}

}  // namespace nlc
