#include "nlc/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "nlc/error.hpp"
#include "nlc/solver.hpp"
#include "nlc/spectral_ops.hpp"

namespace nlc::cli {

namespace {

inline constexpr std::size_t kSchemeTagBytes = 16;
inline constexpr double kLoadDivergenceTol = 1e-10;
inline constexpr double kLoadSphereTol = 1e-6;

class Writer {
 public:
  void bytes(const void* p, std::size_t n) { buf_.append(static_cast<const char*>(p), n); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(char((v >> (8 * i)) & 0xffu));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(char((v >> (8 * i)) & 0xffu));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  const std::string& data() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(const std::string& buf, std::string path) : buf_(buf), path_(std::move(path)) {}

  const char* bytes(std::size_t n) {
    if (buf_.size() - pos_ < n) throw IoError(fmt::format("checkpoint '{}' is truncated", path_));
    const char* p = buf_.data() + pos_;
    pos_ += n;
    return p;
  }
  std::uint32_t u32() {
    const auto* p = reinterpret_cast<const unsigned char*>(bytes(4));
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    const auto* p = reinterpret_cast<const unsigned char*>(bytes(8));
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::size_t remaining() const { return buf_.size() - pos_; }

 private:
  const std::string& buf_;
  std::string path_;
  std::size_t pos_ = 0;
};

std::vector<double> monitor_values(const MonitorState& m) {
  const auto& r = m.last;
  return {r.t,
          r.energy,
          r.dissipation,
          r.besov_u,
          r.besov_grad_d,
          r.grad_u_L2,
          r.delta_d_L2,
          r.acc_H2,
          r.acc_bkm,
          r.acc_hw,
          r.acc_llw,
          r.div_u_max,
          r.sphere_defect_max,
          r.criterion_ok ? 1.0 : 0.0,
          r.blowup_flag ? 1.0 : 0.0,
          r.integrands.h2,
          r.integrands.bkm,
          r.integrands.hw,
          r.integrands.llw,
          m.sup_besov_u,
          m.sup_besov_grad_d,
          m.t_sup_besov_u,
          m.t_sup_besov_grad_d};
}

MonitorState monitor_from(const std::vector<double>& v) {
  MonitorState m;
  auto& r = m.last;
  double* fields[] = {&r.t,           &r.energy,         &r.dissipation,       &r.besov_u,     &r.besov_grad_d,
                      &r.grad_u_L2,   &r.delta_d_L2,     &r.acc_H2,            &r.acc_bkm,     &r.acc_hw,
                      &r.acc_llw,     &r.div_u_max,      &r.sphere_defect_max};
  std::size_t i = 0;
  for (double* f : fields) *f = v[i++];
  r.criterion_ok = v[i++] != 0.0;
  r.blowup_flag = v[i++] != 0.0;
  r.integrands = {v[i], v[i + 1], v[i + 2], v[i + 3]};
  i += 4;
  m.sup_besov_u = v[i++];
  m.sup_besov_grad_d = v[i++];
  m.t_sup_besov_u = v[i++];
  m.t_sup_besov_grad_d = v[i++];
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open checkpoint '{}'", path));
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError(fmt::format("error reading checkpoint '{}'", path));
  return buf;
}

CheckpointHeader parse_header(Reader& r, const std::string& path) {
  if (std::memcmp(r.bytes(8), kCheckpointMagic, 8) != 0)
    throw IoError(fmt::format("'{}' is not a checkpoint (bad magic)", path));
  CheckpointHeader h;
  h.dim = int(r.u32());
  h.n = int(r.u32());
  if ((h.dim != 2 && h.dim != 3) || h.n < 8 || h.n > (1 << 14) || (h.n & (h.n - 1)) != 0)
    throw IoError(fmt::format("checkpoint '{}' has an invalid grid {}^{}", path, h.n, h.dim));
  h.t = r.f64();
  h.steps = r.u64();
  const char* tag = r.bytes(kSchemeTagBytes);
  h.scheme.assign(tag, strnlen(tag, kSchemeTagBytes));
  h.digest = r.u64();
  const std::uint32_t count = r.u32();
  const std::size_t expected = monitor_values(MonitorState{}).size();
  if (count != expected)
    throw IoError(fmt::format("checkpoint '{}' has {} monitor values, expected {}", path, count, expected));
  std::vector<double> values(count);
  for (double& v : values) v = r.f64();
  h.monitor = monitor_from(values);
  if (r.remaining() != payload_bytes(h.dim, h.n))
    throw IoError(fmt::format("checkpoint '{}' payload is {} bytes, expected {}", path, r.remaining(),
                              payload_bytes(h.dim, h.n)));
  return h;
}

}  // namespace

std::uint64_t payload_bytes(int dim, int n) {
  std::uint64_t points = 1;
  for (int i = 0; i < dim; ++i) points *= std::uint64_t(n);
  return std::uint64_t(dim + 3) * points * 16;
}

void save_checkpoint(const std::string& path, const State& state, const std::string& scheme, std::uint64_t digest,
                     const MonitorState& monitor) {
  if (scheme.size() >= kSchemeTagBytes) throw ConfigError(fmt::format("scheme tag '{}' is too long", scheme));
  const Grid& g = state.grid();
  Writer w;
  w.bytes(kCheckpointMagic, 8);
  w.u32(std::uint32_t(g.dim()));
  w.u32(std::uint32_t(g.n()));
  w.f64(state.t);
  w.u64(state.steps);
  char tag[kSchemeTagBytes] = {};
  std::memcpy(tag, scheme.data(), scheme.size());
  w.bytes(tag, kSchemeTagBytes);
  w.u64(digest);
  const auto values = monitor_values(monitor);
  w.u32(std::uint32_t(values.size()));
  for (double v : values) w.f64(v);
  for (const VectorField* f : {&state.u, &state.d})
    for (const auto& comp : *f)
      for (const Complex& c : comp.coeffs()) {
        w.f64(c.real());
        w.f64(c.imag());
      }

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(fmt::format("cannot write checkpoint '{}'", tmp));
    out.write(w.data().data(), std::streamsize(w.data().size()));
    out.flush();
    if (!out) throw IoError(fmt::format("error writing checkpoint '{}'", tmp));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError(fmt::format("cannot move checkpoint into '{}': {}", path, ec.message()));
}

CheckpointHeader read_checkpoint_header(const std::string& path) {
  const std::string buf = read_file(path);
  Reader r(buf, path);
  return parse_header(r, path);
}

Checkpoint load_checkpoint(const std::string& path) {
  const std::string buf = read_file(path);
  Reader r(buf, path);
  CheckpointHeader h = parse_header(r, path);
  const Grid g(h.dim, h.n);
  auto read_field = [&](int components) {
    VectorField f(g, components);
    for (auto& comp : f)
      for (Complex& c : comp.coeffs()) {
        const double re = r.f64();
        c = Complex(re, r.f64());
      }
    return f;
  };
  VectorField u = read_field(h.dim);
  VectorField d = read_field(3);
  State s{h.t, h.steps, std::move(u), std::move(d)};

  for (const VectorField* f : {&s.u, &s.d})
    for (const auto& comp : *f)
      if (!(spectral::hermitian_defect(comp) <= spectral::kSymmetryTolerance))
        throw IoError(fmt::format("checkpoint '{}' holds a field that is not real", path));
  try {
    solver::validate_state(s, kLoadDivergenceTol, kLoadSphereTol);
  } catch (const ConstraintLoss& e) {
    throw IoError(fmt::format("checkpoint '{}' fails the state invariants: {}", path, e.what()));
  }
  if (h.monitor.last.t != h.t)
    throw IoError(fmt::format("checkpoint '{}' monitor time {} differs from state time {}", path, h.monitor.last.t, h.t));
  return {std::move(h), std::move(s)};
}

}  // namespace nlc::cli
