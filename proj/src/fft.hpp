// Cached real-to-complex 3D FFTW plans on n^3 periodic grids (x fastest).
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fvbench::fft {

using Complex = std::complex<double>;

/// Number of complex coefficients of an n^3 real transform: n * n * (n/2 + 1).
inline std::size_t spectral_size(int n) { return static_cast<std::size_t>(n) * n * (n / 2 + 1); }

/// Signed wavenumber of FFT index i on an n-point axis.
inline int wavenumber(int i, int n) { return i <= n / 2 ? i : i - n; }

/// Unnormalized forward transform. `in` has n^3 values; `out` is resized.
void forward(int n, const double* in, std::vector<Complex>& out);
/// Unnormalized inverse transform (result is n^3 times the inverse DFT).
void backward(int n, const std::vector<Complex>& in, double* out);

}  // namespace fvbench::fft
