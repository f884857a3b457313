#pragma once

#include <cstdint>

#include "ltci/common.hpp"

namespace ltci {

// Waveform and sampling constants plus the derived resolutions everything
// else is built from. Frequency-domain data uses K bins spanning the full
// sampling bandwidth fs at spacing delta_f = fs/K; the occupied band is the
// K_valid bins closest to zero frequency (the rest is a zero-padded guard).
// Rows are stored in transform-natural (wrapped) order: row r carries
// frequency r*delta_f for r < K/2 and (r-K)*delta_f otherwise.
struct RadarParams {
    double fc = 0;       // carrier frequency, Hz
    double fs = 0;       // sampling frequency, Hz
    double Br = 0;       // realized bandwidth = K_valid * delta_f, Hz
    double delta_f = 0;  // frequency-bin spacing = fs / K, Hz
    double PRF = 0;      // pulse repetition frequency, Hz
    int M = 0;           // pulse count (power of two)
    int K = 0;           // frequency bins per pulse == range bins N0 (power of two)
    int K_valid = 0;     // occupied frequency bins (even)

    double lambda() const { return kSpeedOfLight / fc; }
    double T() const { return static_cast<double>(M) / PRF; }       // coherent interval
    double Va() const { return lambda() * PRF / 2.0; }              // blind velocity
    double delta_R() const { return kSpeedOfLight / (2.0 * fs); }   // range-bin size
    double delta_fd() const { return 1.0 / T(); }                   // Doppler resolution
    double Ts() const { return 1.0 / fs; }
    int n0() const { return K; }  // range bins

    // Slow time t_m = m * PRT with m starting at 1; argument is 0-based.
    double slow_time(int m) const { return static_cast<double>(m + 1) / PRF; }

    // Frequency of a stored row (wrapped layout).
    double freq_of_row(int r) const {
        return delta_f * static_cast<double>(r < K / 2 ? r : r - K);
    }
    // Row holding grid frequency index g in [-K/2, K/2).
    int row_of_index(int g) const { return g >= 0 ? g : g + K; }
    // Occupied band: grid indices [-K_valid/2, K_valid/2).
    bool row_in_band(int r) const {
        int g = r < K / 2 ? r : r - K;
        return g >= -K_valid / 2 && g < K_valid / 2;
    }

    // Builds a parameter set, deriving delta_f from K and realizing the
    // bandwidth as the nearest even multiple of delta_f when k_valid == 0.
    static RadarParams create(double fc, double fs, double br_nominal, double prf, int pulses,
                              int freq_bins, int k_valid = 0);

    void validate() const;  // throws std::invalid_argument
};

}  // namespace ltci
