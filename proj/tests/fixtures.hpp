#pragma once

#include "ltci/radar_params.hpp"

namespace ltci::fixtures {

// Millimeter-wave profile used by the full-scale checks: 28 GHz carrier,
// 491.52 MHz sampling, 400 MHz bandwidth, PRF 1905 Hz, 512 pulses, 2048 bins.
inline RadarParams mmwave() {
    return RadarParams::create(28e9, 491.52e6, 400e6, 1905.0, 512, 2048);
}

// Small configurable instance for oracle-sized tests.
inline RadarParams small(int K, int M, double fc_over_fs, double br_frac = 0.5,
                         double fs = 100e6, double prf = 2000.0) {
    return RadarParams::create(fc_over_fs * fs, fs, br_frac * fs, prf, M, K);
}

}  // namespace ltci::fixtures
