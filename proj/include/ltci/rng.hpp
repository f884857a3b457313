#pragma once

#include <cstdint>

#include "ltci/common.hpp"

namespace ltci {

// Deterministic generator for the noise path. splitmix64 state + Box-Muller,
// so sequences are pinned to the seed independent of the standard library.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform01();      // (0, 1]
    double normal();         // standard normal
    cplx circular_normal(double variance);  // complex, total variance as given

    // Decorrelated child seed for per-trial streams.
    static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ltci
