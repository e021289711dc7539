#pragma once

#include "tentlab/grid.hpp"

#include <span>

namespace tentlab {

/// Forward DFT normalized so that f(x) = Σ c_m e^{ik·x}: c = FFT(f)/N^n.
void fft_forward(const Grid& grid, std::span<const cplx> in, std::span<cplx> out);

/// Inverse of fft_forward (unnormalized backward transform).
void fft_backward(const Grid& grid, std::span<const cplx> in, std::span<cplx> out);

}  // namespace tentlab
