#include "ltci/rng.hpp"

#include <cmath>

namespace ltci {

namespace {
std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

std::uint64_t GaussianRng::next_u64() { return splitmix64(state_); }

double GaussianRng::uniform01() {
    // 53-bit mantissa in (0, 1]; never 0 so log() is safe.
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * kPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

cplx GaussianRng::circular_normal(double variance) {
    double s = std::sqrt(variance / 2.0);
    double re = normal();
    double im = normal();
    return cplx(s * re, s * im);
}

std::uint64_t GaussianRng::derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed ^ (0x632be59bd9b4e019ULL * (index + 1));
    return splitmix64(s);
}

}  // namespace ltci
