#pragma once

#include <cstddef>
#include <vector>

#include "ltci/common.hpp"

namespace ltci {

// Radix-2 transform for power-of-two sizes. Both directions are
// unnormalized sums; "plus" uses the kernel exp(+j*2*pi*k*n/N) (the inverse
// kernel in the usual convention) and "minus" uses exp(-j*2*pi*k*n/N).
// Plain sequential butterflies, so results are bit-identical regardless of
// the caller's threading.
class Fft {
public:
    explicit Fft(std::size_t n);

    std::size_t size() const { return n_; }

    // In-place, unnormalized. dft_plus(x)[k] = sum_n x[n] exp(+j 2 pi k n / N).
    void dft_plus(cplx* x) const;
    void dft_minus(cplx* x) const;

    void dft_plus(std::vector<cplx>& x) const { dft_plus(x.data()); }
    void dft_minus(std::vector<cplx>& x) const { dft_minus(x.data()); }

private:
    void transform(cplx* x, bool conjugate) const;

    std::size_t n_;
    std::size_t log2n_;
    std::vector<std::size_t> bitrev_;
    std::vector<cplx> twiddle_;  // exp(+j 2 pi k / N), k = 0 .. N/2-1
};

bool is_power_of_two(std::size_t n);

}  // namespace ltci
