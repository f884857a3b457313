#pragma once

#include <vector>

#include "ltci/common.hpp"
#include "ltci/radar_params.hpp"

namespace ltci {

// K x M (frequency x pulse) complex matrix, column-major: sample (k, m) is
// at data[k + K*m], so each pulse's spectrum is contiguous.
struct FreqPulseCube {
    RadarParams params;
    std::vector<cplx> data;

    FreqPulseCube() = default;
    explicit FreqPulseCube(const RadarParams& p)
        : params(p), data(static_cast<std::size_t>(p.K) * p.M, cplx(0.0, 0.0)) {}

    cplx& at(int k, int m) { return data[static_cast<std::size_t>(k) + params.K * static_cast<std::size_t>(m)]; }
    const cplx& at(int k, int m) const {
        return data[static_cast<std::size_t>(k) + params.K * static_cast<std::size_t>(m)];
    }
    cplx* column(int m) { return data.data() + static_cast<std::size_t>(params.K) * m; }
    const cplx* column(int m) const { return data.data() + static_cast<std::size_t>(params.K) * m; }
};

// N0 x M (range bin x pulse), same storage rule: data[n + N0*m].
struct RangePulseCube {
    RadarParams params;
    std::vector<cplx> data;

    RangePulseCube() = default;
    explicit RangePulseCube(const RadarParams& p)
        : params(p), data(static_cast<std::size_t>(p.n0()) * p.M, cplx(0.0, 0.0)) {}

    cplx& at(int n, int m) {
        return data[static_cast<std::size_t>(n) + params.n0() * static_cast<std::size_t>(m)];
    }
    const cplx& at(int n, int m) const {
        return data[static_cast<std::size_t>(n) + params.n0() * static_cast<std::size_t>(m)];
    }
    cplx* column(int m) { return data.data() + static_cast<std::size_t>(params.n0()) * m; }
    const cplx* column(int m) const {
        return data.data() + static_cast<std::size_t>(params.n0()) * m;
    }
};

}  // namespace ltci
