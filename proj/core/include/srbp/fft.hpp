#ifndef SRBP_FFT_HPP
#define SRBP_FFT_HPP

#include <complex>
#include <vector>

namespace srbp {
namespace fft {

/// In-place radix-2 complex transform, a.size() a power of two.
/// Unnormalized forward: A[k] = sum_j a[j] exp(-2*pi*i*j*k/N).
/// `inverse` flips the exponent sign and divides by N.
void transform(std::vector<std::complex<double>>& a, bool inverse);

/// Real periodic synthesis from mode coefficients c[k], k = 0..N/2
/// (Hermitian extension implied): out[j] = sum_{k in (-N/2, N/2]} c_k e^{2*pi*i*j*k/N}.
/// c[0] and c[N/2] must be real for a real result.
std::vector<double> synthesize_real(const std::vector<std::complex<double>>& half_modes,
                                    std::size_t n);

/// Forward half-spectrum of a real array: c[k] = (1/N) sum_j x[j] e^{-2*pi*i*j*k/N}.
std::vector<std::complex<double>> analyze_real(const std::vector<double>& x);

} // namespace fft
} // namespace srbp

#endif
