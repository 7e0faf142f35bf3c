#ifndef QFORCE_FFT_HPP
#define QFORCE_FFT_HPP

#include <complex>
#include <span>
#include <vector>

namespace qforce::fft {

using Complex = std::complex<double>;

// Physics sign convention throughout:
//   forward  X_k = sum_j x_j exp(+2 pi i j k / n)
//   inverse  x_j = (1/n) sum_k X_k exp(-2 pi i j k / n)
// so that bin k of a record sampled at t_j = j dt carries exp(+i w_k t).

std::vector<Complex> forward(std::span<const double> samples);
std::vector<Complex> forward(std::span<const Complex> samples);

std::vector<Complex> inverse(std::span<const Complex> coefficients);

/// Inverse transform of Hermitian coefficients; the imaginary residue is dropped.
std::vector<double> inverse_real(std::span<const Complex> coefficients);

}  // namespace qforce::fft

#endif  // QFORCE_FFT_HPP
