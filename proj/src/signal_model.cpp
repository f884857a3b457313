#include "ltci/signal_model.hpp"

#include <algorithm>
#include <cmath>

#include "ltci/fft.hpp"
#include "ltci/rng.hpp"

namespace ltci {

double asinc(double tau, const RadarParams& params) {
    params.validate();
    // Reduce x = delta_f * tau to its nearest-integer offset so both sines
    // are evaluated on small arguments; keeps the grating-lobe structure
    // exact for large tau.
    double x = params.delta_f * tau;
    double j = std::nearbyint(x);
    double xr = x - j;
    long long ji = static_cast<long long>(j);
    int kv = params.K_valid;
    double num_sign = (static_cast<long long>(kv) * ji) % 2 == 0 ? 1.0 : -1.0;
    double den_sign = ji % 2 == 0 ? 1.0 : -1.0;
    if (xr == 0.0) {
        // Removable singularity: limit is +-1.
        return num_sign * den_sign;
    }
    double num = num_sign * std::sin(kPi * kv * xr);
    double den = den_sign * static_cast<double>(kv) * std::sin(kPi * xr);
    return num / den;
}

FreqPulseCube synthesize_cube(const RadarParams& params, const std::vector<Target>& targets) {
    params.validate();
    FreqPulseCube cube(params);
    const double c4pi = -4.0 * kPi / kSpeedOfLight;
    for (int m = 0; m < params.M; ++m) {
        double tm = params.slow_time(m);
        cplx* col = cube.column(m);
        for (int g = -params.K_valid / 2; g < params.K_valid / 2; ++g) {
            int r = params.row_of_index(g);
            double fk = params.delta_f * static_cast<double>(g);
            cplx acc(0.0, 0.0);
            for (const Target& tgt : targets) {
                double range = tgt.motion.slant_range(tm);
                acc += tgt.amplitude * std::polar(1.0, c4pi * (fk + params.fc) * range);
            }
            col[r] = acc;
        }
    }
    return cube;
}

FreqPulseCube add_noise(const FreqPulseCube& cube, double sigma2, std::uint64_t seed) {
    if (sigma2 < 0) throw std::invalid_argument("add_noise: sigma2 must be >= 0");
    FreqPulseCube out = cube;
    if (sigma2 == 0.0) return out;
    GaussianRng rng(seed);
    for (cplx& v : out.data) v += rng.circular_normal(sigma2);
    return out;
}

double estimate_noise_variance(const FreqPulseCube& cube) {
    const RadarParams& p = cube.params;
    if (p.K_valid < p.K) {
        double sum = 0;
        std::size_t count = 0;
        for (int m = 0; m < p.M; ++m) {
            const cplx* col = cube.column(m);
            for (int k = 0; k < p.K; ++k)
                if (!p.row_in_band(k)) {
                    sum += std::norm(col[k]);
                    ++count;
                }
        }
        return sum / static_cast<double>(count);
    }
    // |y|^2 of circular Gaussian noise is exponential; median = sigma2*ln(2).
    std::vector<double> power(cube.data.size());
    for (std::size_t i = 0; i < power.size(); ++i) power[i] = std::norm(cube.data[i]);
    std::size_t mid = power.size() / 2;
    std::nth_element(power.begin(), power.begin() + mid, power.end());
    return power[mid] / std::log(2.0);
}

RangePulseCube range_ifft(const FreqPulseCube& cube) {
    RangePulseCube out(cube.params);
    Fft fft(static_cast<std::size_t>(cube.params.K));
    for (int m = 0; m < cube.params.M; ++m) {
        cplx* dst = out.column(m);
        const cplx* src = cube.column(m);
        std::copy(src, src + cube.params.K, dst);
        fft.dft_plus(dst);
    }
    return out;
}

FreqPulseCube range_fft(const RangePulseCube& cube) {
    FreqPulseCube out(cube.params);
    Fft fft(static_cast<std::size_t>(cube.params.K));
    for (int m = 0; m < cube.params.M; ++m) {
        cplx* dst = out.column(m);
        const cplx* src = cube.column(m);
        std::copy(src, src + cube.params.K, dst);
        fft.dft_minus(dst);
    }
    return out;
}

}  // namespace ltci
