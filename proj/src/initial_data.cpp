#include "nlc/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "nlc/error.hpp"
#include "nlc/littlewood_paley.hpp"
#include "nlc/spectral_ops.hpp"

namespace nlc::init {
namespace sp = nlc::spectral;

namespace {

template <class Fn>
Samples sample(const Grid& g, Fn&& fn) {
  Samples s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(i, 0);
    const double y = g.coordinate(i, 1);
    const double z = g.dim() == 3 ? g.coordinate(i, 2) : 0.0;
    s[i] = fn(x, y, z);
  }
  return s;
}

/// Projection of the coefficients onto real-valued fields: (c(k) + conj c(-k)) / 2.
SpectralField hermitian_part(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = 0.5 * (f[i] + std::conj(f[g.negated(i)]));
  return out;
}

}  // namespace

VectorField taylor_green(const Grid& g, double a) {
  if (g.dim() == 2) {
    return sp::to_spectral(g, {sample(g, [a](double x, double y, double) { return a * std::sin(x) * std::cos(y); }),
                               sample(g, [a](double x, double y, double) { return -a * std::cos(x) * std::sin(y); })});
  }
  return sp::to_spectral(
      g, {sample(g, [a](double x, double y, double z) { return a * std::sin(x) * std::cos(y) * std::cos(z); }),
          sample(g, [a](double x, double y, double z) { return -a * std::cos(x) * std::sin(y) * std::cos(z); }),
          Samples(g.size(), 0.0)});
}

VectorField random_divfree(const Grid& g, double slope, std::uint64_t seed, double amplitude) {
  if (!(amplitude >= 0.0)) throw ConfigError("random_divfree amplitude must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<SpectralField> comps;
  for (int c = 0; c < g.dim(); ++c) {
    SpectralField f(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      const double k2 = g.k_squared(i);
      if (k2 == 0.0) continue;
      f[i] = std::pow(k2, 0.5 * slope) * Complex(re, im);
    }
    comps.push_back(sp::dealias(hermitian_part(f)));
  }
  VectorField u = sp::leray_project(VectorField(std::move(comps)));
  const double norm = std::sqrt(sp::l2_norm_squared(u));
  if (norm > 0.0) u *= amplitude / norm;
  return u;
}

SpectralField theta_field(const Grid& g, const ThetaProfile& p) {
  if (p.kind == ThetaProfile::Kind::Sine) {
    if (p.axis < 0 || p.axis >= g.dim()) throw ConfigError("theta axis out of range");
    const double a = p.amplitude;
    const int m = p.mode;
    const int axis = p.axis;
    return sp::to_spectral(g, sample(g, [&](double x, double y, double z) {
                             const double coord[3] = {x, y, z};
                             return a * std::sin(m * coord[axis]);
                           }));
  }
  std::mt19937_64 rng(p.seed);
  std::normal_distribution<double> normal;
  SpectralField f(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    bool inside = g.k_squared(i) > 0.0;
    for (int a = 0; a < g.dim(); ++a) inside = inside && std::abs(g.wavenumber(i, a)) <= p.band;
    if (!inside) continue;
    f[i] = std::pow(g.k_squared(i), 0.5 * p.slope) * Complex(re, im);
  }
  f = hermitian_part(f);
  const double rms = std::sqrt(sp::l2_norm_squared(f) / g.volume());
  if (rms > 0.0) f *= p.amplitude / rms;
  return f;
}

VectorField equatorial_director(const Grid& g, const SpectralField& theta) {
  const Samples th = sp::from_spectral(theta);
  Samples c(g.size()), s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    c[i] = std::cos(th[i]);
    s[i] = std::sin(th[i]);
  }
  return sp::to_spectral(g, {c, s, Samples(g.size(), 0.0)});
}

VectorField constant_director(const Grid& g, std::array<double, 3> dir) {
  const double norm = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  if (!(norm > 0.0)) throw ConfigError("director direction must be nonzero");
  VectorField d(g, 3);
  for (int a = 0; a < 3; ++a) d[a][0] = dir[a] / norm;
  return d;
}

VectorField near_harmonic(const Grid& g, double scale) {
  if (g.dim() != 2) throw ConfigError("near_harmonic director is defined in 2D only");
  if (!(scale > 0.0 && scale <= 1.0)) throw ConfigError("near_harmonic scale must lie in (0, 1]");
  if (scale * g.n() < 8.0)
    throw ConfigError(
        fmt::format("near_harmonic scale {:g} is unresolvable on n = {} (need scale * n >= 8)", scale, g.n()));
  constexpr double pi = std::numbers::pi;
  Samples d1(g.size()), d2(g.size()), d3(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(i, 0) - pi;
    const double y = g.coordinate(i, 1) - pi;
    const double r = std::hypot(x, y);
    const double window = 1.0 - lp::smooth_step((r - kWindowInner) / (kWindowOuter - kWindowInner));
    const double polar = (r == 0.0 ? pi : 2.0 * std::atan(scale / r)) * window;
    const double ca = r == 0.0 ? 1.0 : x / r;
    const double sa = r == 0.0 ? 0.0 : y / r;
    d1[i] = std::sin(polar) * ca;
    d2[i] = std::sin(polar) * sa;
    d3[i] = std::cos(polar);
  }
  return sp::to_spectral(g, {d1, d2, d3});
}

std::string to_string(InitSpec::Kind kind) {
  switch (kind) {
    case InitSpec::Kind::Zero: return "zero";
    case InitSpec::Kind::TaylorGreen: return "taylor_green";
    case InitSpec::Kind::RandomDivfree: return "random_divfree";
    case InitSpec::Kind::ConstantDirector: return "constant_director";
    case InitSpec::Kind::Equatorial: return "equatorial";
    case InitSpec::Kind::NearHarmonic: return "near_harmonic";
  }
  return "unknown";
}

InitSpec::Kind kind_from_string(const std::string& name) {
  for (auto k : {InitSpec::Kind::Zero, InitSpec::Kind::TaylorGreen, InitSpec::Kind::RandomDivfree,
                 InitSpec::Kind::ConstantDirector, InitSpec::Kind::Equatorial, InitSpec::Kind::NearHarmonic})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown initial-data kind '" + name + "'");
}

VectorField make_velocity(const Grid& g, const InitSpec& spec) {
  if (!(spec.amplitude >= 0.0)) throw ConfigError("velocity amplitude must be >= 0");
  switch (spec.kind) {
    case InitSpec::Kind::Zero: return VectorField(g, g.dim());
    case InitSpec::Kind::TaylorGreen: return taylor_green(g, spec.amplitude);
    case InitSpec::Kind::RandomDivfree: return random_divfree(g, spec.spectrum_slope, spec.seed, spec.amplitude);
    default: throw ConfigError("'" + to_string(spec.kind) + "' is not a velocity initial condition");
  }
}

VectorField make_director(const Grid& g, const InitSpec& spec) {
  switch (spec.kind) {
    case InitSpec::Kind::ConstantDirector: return constant_director(g, spec.direction);
    case InitSpec::Kind::Equatorial: return equatorial_director(g, theta_field(g, spec.theta));
    case InitSpec::Kind::NearHarmonic: return near_harmonic(g, spec.scale);
    default: throw ConfigError("'" + to_string(spec.kind) + "' is not a director initial condition");
  }
}

State make_state(const Grid& g, const InitSpec& velocity, const InitSpec& director) {
  return State{0.0, 0, make_velocity(g, velocity), make_director(g, director)};
}

}  // namespace nlc::init
