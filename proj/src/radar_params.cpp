#include "ltci/radar_params.hpp"

#include <cmath>
#include <stdexcept>

#include "ltci/fft.hpp"

namespace ltci {

RadarParams RadarParams::create(double fc, double fs, double br_nominal, double prf, int pulses,
                                int freq_bins, int k_valid) {
    RadarParams p;
    p.fc = fc;
    p.fs = fs;
    p.PRF = prf;
    p.M = pulses;
    p.K = freq_bins;
    p.delta_f = fs / static_cast<double>(freq_bins);
    if (k_valid == 0) {
        k_valid = static_cast<int>(std::lround(br_nominal / p.delta_f));
        if (k_valid % 2 != 0) --k_valid;
        if (k_valid < 2) k_valid = 2;
        if (k_valid > freq_bins) k_valid = freq_bins;
    }
    p.K_valid = k_valid;
    p.Br = p.delta_f * static_cast<double>(k_valid);
    p.validate();
    return p;
}

void RadarParams::validate() const {
    if (!(fc > 0) || !(fs > 0) || !(Br > 0) || !(PRF > 0) || M <= 0 || K <= 0)
        throw std::invalid_argument("RadarParams: fc, fs, Br, PRF, M, K must be positive");
    if (!is_power_of_two(static_cast<std::size_t>(M)) ||
        !is_power_of_two(static_cast<std::size_t>(K)))
        throw std::invalid_argument("RadarParams: M and K must be powers of two");
    if (fs < Br) throw std::invalid_argument("RadarParams: fs must be >= Br (Nyquist)");
    if (K_valid <= 0 || K_valid > K || K_valid % 2 != 0)
        throw std::invalid_argument("RadarParams: K_valid must be even and in (0, K]");
    double realized = delta_f * static_cast<double>(K_valid);
    if (std::abs(realized - Br) > 1e-6 * Br)
        throw std::invalid_argument("RadarParams: Br must equal K_valid * delta_f");
    if (std::abs(delta_f * static_cast<double>(K) - fs) > 1e-6 * fs)
        throw std::invalid_argument("RadarParams: delta_f must equal fs / K");
}

}  // namespace ltci
