#include "nlc/fft.hpp"

#include <fftw3.h>

#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "nlc/error.hpp"

namespace nlc::fft {
namespace {

// Small transforms do not benefit from threading; plans for them stay serial.
constexpr std::size_t kThreadedMinSize = std::size_t(1) << 15;

int threads_from_env() {
  if (const char* env = std::getenv("NLCSIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return int(v);
  }
  return 1;
}

std::atomic<int>& thread_setting() {
  static std::atomic<int> value{threads_from_env()};
  return value;
}

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(const Grid& grid, int sign, bool aligned) {
    const int nthreads = grid.size() >= kThreadedMinSize ? thread_setting().load() : 1;
    const auto key = std::make_tuple(grid.dim(), grid.n(), sign, nthreads, aligned);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    if (!threads_initialized_) {
      fftw_init_threads();
      threads_initialized_ = true;
    }
    fftw_plan_with_nthreads(nthreads);
    int dims[3] = {grid.n(), grid.n(), grid.n()};
    auto* in = fftw_alloc_complex(grid.size());
    auto* out = fftw_alloc_complex(grid.size());
    fftw_plan plan = fftw_plan_dft(grid.dim(), dims, in, out, sign, aligned ? FFTW_ESTIMATE : FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  bool threads_initialized_ = false;
  std::map<std::tuple<int, int, int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(const Grid& grid, int sign, std::span<const Complex> in, std::span<Complex> out) {
  if (in.size() != grid.size() || out.size() != grid.size())
    throw CorruptField("transform buffer size does not match grid");
  // fftw_complex is layout-compatible with std::complex<double>; new-array
  // execution is thread-safe on a shared plan.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  const bool aligned = fftw_alignment_of(reinterpret_cast<double*>(src)) == 0 &&
                       fftw_alignment_of(reinterpret_cast<double*>(dst)) == 0;
  fftw_execute_dft(cache().get(grid, sign, aligned), src, dst);
}

}  // namespace

void forward(const Grid& grid, std::span<const Complex> in, std::span<Complex> out) {
  execute(grid, FFTW_FORWARD, in, out);
}

void backward(const Grid& grid, std::span<const Complex> in, std::span<Complex> out) {
  execute(grid, FFTW_BACKWARD, in, out);
}

void set_threads(int threads) {
  if (threads < 1) throw ConfigError("thread count must be >= 1, got " + std::to_string(threads));
  thread_setting().store(threads);
}

int threads() { return thread_setting().load(); }

}  // namespace nlc::fft
