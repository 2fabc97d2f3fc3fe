#include "srbp/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace srbp {
namespace fft {

void transform(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

std::vector<double> synthesize_real(const std::vector<std::complex<double>>& half_modes,
                                    std::size_t n) {
    if (half_modes.size() != n / 2 + 1) throw std::invalid_argument("synthesize_real: need N/2+1 modes");
    std::vector<std::complex<double>> full(n);
    full[0] = half_modes[0];
    for (std::size_t k = 1; k < n / 2; ++k) {
        full[k] = half_modes[k];
        full[n - k] = std::conj(half_modes[k]);
    }
    full[n / 2] = half_modes[n / 2];
    transform(full, true);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = full[j].real() * static_cast<double>(n);
    return out;
}

std::vector<std::complex<double>> analyze_real(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> full(n);
    for (std::size_t j = 0; j < n; ++j) full[j] = x[j];
    transform(full, false);
    std::vector<std::complex<double>> half(n / 2 + 1);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k <= n / 2; ++k) half[k] = full[k] * inv;
    return half;
}

} // namespace fft
} // namespace srbp
