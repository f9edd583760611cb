#pragma once

#include <complex>
#include <vector>

namespace gsctrack::fft {

/// Real-to-complex 2D FFT of a row-major h x w grid. Output is the half
/// spectrum with w/2 + 1 columns per row (FFTW r2c layout), unnormalized.
void rfft2(const double* in, int h, int w, std::complex<double>* out);

/// Inverse of rfft2, including the 1/(h*w) normalization. The input spectrum
/// is not modified.
void irfft2(const std::complex<double>* in, int h, int w, double* out);

inline int spectrum_width(int w) { return w / 2 + 1; }
inline int spectrum_size(int h, int w) { return h * spectrum_width(w); }

}  // namespace gsctrack::fft
