#pragma once

#include <span>

#include "nlc/grid.hpp"
#include "nlc/spectral_field.hpp"

/// Thin FFTW backend. Both directions are unnormalized complex-to-complex
/// transforms over the full lattice; `in` and `out` must not alias.
namespace nlc::fft {

/// out_k = sum_x in_x exp(-i k.x)
void forward(const Grid& grid, std::span<const Complex> in, std::span<Complex> out);

/// out_x = sum_k in_k exp(+i k.x)
void backward(const Grid& grid, std::span<const Complex> in, std::span<Complex> out);

/// Worker threads used by newly created plans. Initialized from NLCSIM_THREADS
/// when set, otherwise 1.
void set_threads(int threads);
int threads();

}  // namespace nlc::fft
