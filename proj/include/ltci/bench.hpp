#pragma once

#include <cstdint>
#include <vector>

#include "ltci/cube.hpp"
#include "ltci/detectors.hpp"

namespace ltci {

// One experiment description: radar constants, the scene (Pd runs use the
// first target as truth), the SNR sweep, and the search configuration shared
// by all detectors. SNR is pulse-compressed: 10*log10(K_valid*|A1|^2/sigma2).
struct Scenario {
    RadarParams params;
    std::vector<Target> targets;  // unit-scale amplitudes; scaled per SNR point

    std::vector<double> snr_db;
    int trials = 200;
    double pfa = 1e-4;
    double sigma2 = 1.0;
    std::uint64_t seed = 0;

    std::vector<DetectorKind> detectors;

    int P = 2;
    std::vector<Bounds> bounds;   // per order 1..P
    std::vector<double> alpha;    // per order 1..P
    RangeRoi roi;                 // Doppler-stage range bins of interest
    int keystone_taps = 8;
    int threads = 0;
};

struct PdPoint {
    double snr_db = 0;
    double pd = 0;
    int trials = 0;
    double ci_lo = 0;  // 95% Wilson interval
    double ci_hi = 0;
};

struct PdCurve {
    DetectorKind kind;
    std::vector<PdPoint> points;
};

// Per SNR point and detector: fraction of trials in which some cell above
// the design threshold estimates the truth within one cell on every axis.
// All detectors see the same noisy cube in a given trial; trials run in
// parallel with per-trial derived seeds, so results are schedule-independent.
std::vector<PdCurve> run_pd(const Scenario& scenario);

// Linear interpolation of the SNR at which the curve first crosses pd;
// throws if it never does.
double snr_at_pd(const PdCurve& curve, double pd);

// Grid cardinalities entering the complexity formulas.
struct ComplexityDims {
    int M = 0;
    int N0 = 0;        // range bins (= K)
    int Ntilde0 = 0;   // range bins of interest
    int N0_td = 0;     // time-domain search range bins
    std::uint64_t single_cells = 1;  // product of single-scale motion grids
    std::uint64_t coarse_cells = 1;  // product of coarse grids
    std::uint64_t fine_cells = 1;    // product of fine grids for orders >= 2
    std::uint64_t N1 = 0, N2 = 0, Na = 0, N1c = 0, N2c = 0, N2f = 0;
    double fs_over_fc = 0;
};

ComplexityDims complexity_dims(const RadarParams& params, const SingleScaleSpace& single,
                               const DualScaleSpace& dual, const AmbiguitySpace& amb);

// Basic-operation tallies each detector performs on those grids; equals the
// instrumented counters exactly.
OpCounters predict_counters(DetectorKind kind, const ComplexityDims& dims);

// Weighted total: kt*M^2*N0 + mf*M + ifft*0.5*N0*log2(N0) + fft*0.5*M*log2(M).
double bo_total(const OpCounters& counts, int M, int N0);

struct TimingRow {
    DetectorKind kind;
    double seconds = 0;
    OpCounters measured;
};

// Runs each detector once on the noiseless scene and wall-clocks it.
// Refuses scenarios whose predicted basic-operation total exceeds budget.
std::vector<TimingRow> run_timing(const Scenario& scenario, double budget_bo = 1e12);

// Search spaces implied by a scenario (shared across the bench entry points
// and the CLI).
struct ScenarioSpaces {
    SingleScaleSpace single;      // full range axis (frequency-domain search)
    SingleScaleSpace single_roi;  // same grids, C0 restricted to the roi
    DualScaleSpace dual;          // (time-domain and keystone searches)
    AmbiguitySpace amb;
};

ScenarioSpaces build_spaces(const Scenario& scenario);

}  // namespace ltci
