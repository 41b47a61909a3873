#include "nlc/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "nlc/error.hpp"
#include "nlc/fft.hpp"

namespace nlc::spectral {
namespace {

Complex i_power(int order) {
  switch (((order % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

SpectralField to_spectral(const Grid& grid, std::span<const double> samples) {
  if (samples.size() != grid.size())
    throw CorruptField("expected " + std::to_string(grid.size()) + " samples, got " +
                       std::to_string(samples.size()));
  CoeffVector in(samples.begin(), samples.end());
  CoeffVector out(grid.size());
  fft::forward(grid, in, out);
  const double scale = 1.0 / double(grid.size());
  for (auto& c : out) c *= scale;
  return SpectralField(grid, std::move(out));
}

double hermitian_defect(const SpectralField& f) {
  const Grid& g = f.grid();
  double defect = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) defect = std::max(defect, std::norm(f[g.negated(i)] - std::conj(f[i])));
  return std::sqrt(defect);
}

Samples from_spectral(const SpectralField& f) {
  double peak = 1.0;
  for (const Complex& c : f.coeffs()) peak = std::max(peak, std::norm(c));
  const double scale = std::sqrt(peak);
  const double defect = hermitian_defect(f);
  if (!(defect <= kSymmetryTolerance * scale))
    throw CorruptField(fmt::format("field is not Hermitian-symmetric (defect {:g})", defect));
  CoeffVector out(f.size());
  fft::backward(f.grid(), f.coeffs(), out);
  Samples samples(out.size());
  std::transform(out.begin(), out.end(), samples.begin(), [](const Complex& c) { return c.real(); });
  return samples;
}

std::vector<Samples> from_spectral(const VectorField& v) {
  std::vector<Samples> out;
  out.reserve(v.size());
  for (const auto& c : v) out.push_back(from_spectral(c));
  return out;
}

VectorField to_spectral(const Grid& grid, const std::vector<Samples>& components) {
  std::vector<SpectralField> out;
  out.reserve(components.size());
  for (const auto& s : components) out.push_back(to_spectral(grid, s));
  return VectorField(std::move(out));
}

SpectralField derivative(const SpectralField& f, int axis, int order) {
  const Grid& g = f.grid();
  if (axis < 0 || axis >= g.dim()) throw ConfigError("derivative axis out of range: " + std::to_string(axis));
  if (order < 0) throw ConfigError("derivative order must be >= 0");
  SpectralField out(g);
  const Complex ip = i_power(order);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (g.is_nyquist(i)) continue;
    const double k = g.wavenumber(i, axis);
    double kp = 1.0;
    for (int o = 0; o < order; ++o) kp *= k;
    out[i] = ip * kp * f[i];
  }
  return out;
}

VectorField gradient(const SpectralField& f) {
  std::vector<SpectralField> comps;
  for (int a = 0; a < f.grid().dim(); ++a) comps.push_back(derivative(f, a));
  return VectorField(std::move(comps));
}

SpectralField divergence(const VectorField& v) {
  const Grid& g = v.grid();
  if (v.size() != g.dim()) throw ConfigError("divergence needs dim components");
  SpectralField out(g);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (g.is_nyquist(i)) continue;
    Complex acc = 0.0;
    for (int a = 0; a < g.dim(); ++a) acc += double(g.wavenumber(i, a)) * v[a][i];
    out[i] = Complex(0.0, 1.0) * acc;
  }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (g.is_nyquist(i)) continue;
    out[i] = -g.k_squared(i) * f[i];
  }
  return out;
}

SpectralField curl_2d(const VectorField& v) {
  if (v.grid().dim() != 2 || v.size() != 2) throw ConfigError("curl_2d needs a 2D two-component field");
  return derivative(v[1], 0) - derivative(v[0], 1);
}

VectorField curl_3d(const VectorField& v) {
  if (v.grid().dim() != 3 || v.size() != 3) throw ConfigError("curl_3d needs a 3D three-component field");
  std::vector<SpectralField> w;
  w.push_back(derivative(v[2], 1) - derivative(v[1], 2));
  w.push_back(derivative(v[0], 2) - derivative(v[2], 0));
  w.push_back(derivative(v[1], 0) - derivative(v[0], 1));
  return VectorField(std::move(w));
}

VectorField leray_project(const VectorField& v) {
  const Grid& g = v.grid();
  const int dim = g.dim();
  if (v.size() != dim) throw ConfigError("leray_project needs dim components");
  VectorField out(g, dim);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.is_nyquist(i)) continue;
    const double k2 = g.k_squared(i);
    if (k2 == 0.0) {
      for (int a = 0; a < dim; ++a) out[a][i] = v[a][i];
      continue;
    }
    Complex kv = 0.0;
    for (int a = 0; a < dim; ++a) kv += double(g.wavenumber(i, a)) * v[a][i];
    for (int a = 0; a < dim; ++a) out[a][i] = v[a][i] - double(g.wavenumber(i, a)) * kv / k2;
  }
  return out;
}

SpectralField dealias(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out = f;
  for (std::size_t i = 0; i < out.size(); ++i)
    if (g.is_aliased(i)) out[i] = 0.0;
  return out;
}

VectorField dealias(const VectorField& v) {
  std::vector<SpectralField> comps;
  for (const auto& c : v) comps.push_back(dealias(c));
  return VectorField(std::move(comps));
}

double lp_norm(const Grid& grid, std::span<const double> samples, double p) {
  if (!(p >= 1.0)) throw ConfigError(fmt::format("Lp exponent must be >= 1, got {:g}", p));
  if (std::isinf(p)) {
    double m = 0.0;
    for (double s : samples) m = std::max(m, std::abs(s));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (double s : samples) acc += s * s;
  } else {
    for (double s : samples) acc += std::pow(std::abs(s), p);
  }
  return std::pow(acc * grid.cell_volume(), 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) {
  const Samples s = from_spectral(f);
  return lp_norm(f.grid(), s, p);
}

double lp_norm(const VectorField& v, double p) {
  return lp_norm(v.grid(), modulus(from_spectral(v)), p);
}

double l2_norm_squared(const SpectralField& f) {
  double acc = 0.0;
  for (const auto& c : f.coeffs()) acc += std::norm(c);
  return acc * f.grid().volume();
}

double l2_norm_squared(const VectorField& v) {
  double acc = 0.0;
  for (const auto& c : v) acc += l2_norm_squared(c);
  return acc;
}

double inner(const SpectralField& f, const SpectralField& g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += (std::conj(f[i]) * g[i]).real();
  return acc * f.grid().volume();
}

double mean(const SpectralField& f) { return f[0].real(); }

SpectralField without_mean(const SpectralField& f) {
  SpectralField out = f;
  out[0] = 0.0;
  return out;
}

Samples modulus(const std::vector<Samples>& components) {
  if (components.empty()) return {};
  Samples out(components.front().size(), 0.0);
  for (const auto& c : components)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i] * c[i];
  for (auto& x : out) x = std::sqrt(x);
  return out;
}

}  // namespace nlc::spectral
