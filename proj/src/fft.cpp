#include "ltci/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace ltci {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

Fft::Fft(std::size_t n) : n_(n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("Fft: size must be a power of two");
    log2n_ = 0;
    while ((std::size_t{1} << log2n_) < n_) ++log2n_;

    bitrev_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < log2n_; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n_ - 1 - b);
        bitrev_[i] = r;
    }

    twiddle_.resize(n_ / 2);
    for (std::size_t k = 0; k < n_ / 2; ++k) {
        double ang = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n_);
        twiddle_[k] = cplx(std::cos(ang), std::sin(ang));
    }
}

void Fft::transform(cplx* x, bool conjugate) const {
    for (std::size_t i = 0; i < n_; ++i) {
        std::size_t j = bitrev_[i];
        if (j > i) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
        std::size_t half = len >> 1;
        std::size_t step = n_ / len;
        for (std::size_t base = 0; base < n_; base += len) {
            for (std::size_t k = 0; k < half; ++k) {
                cplx w = twiddle_[k * step];
                if (conjugate) w = std::conj(w);
                cplx u = x[base + k];
                cplx v = x[base + k + half] * w;
                x[base + k] = u + v;
                x[base + k + half] = u - v;
            }
        }
    }
}

void Fft::dft_plus(cplx* x) const { transform(x, false); }
void Fft::dft_minus(cplx* x) const { transform(x, true); }

}  // namespace ltci
