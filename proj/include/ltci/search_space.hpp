#pragma once

#include <vector>

#include "ltci/motion.hpp"
#include "ltci/radar_params.hpp"

namespace ltci {

// Uniform grid [start : step : start + (count-1)*step].
struct Grid {
    double start = 0;
    double step = 0;
    int count = 0;

    double value(int i) const { return start + step * static_cast<double>(i); }
    double back() const { return value(count - 1); }
    int nearest_index(double x) const;
    bool contains(double x) const { return x >= start - 1e-9 * (std::abs(step) + 1) && x <= back() + 1e-9 * (std::abs(step) + 1); }
};

struct Bounds {
    double lo = 0;
    double hi = 0;
};

// Inclusive range-bin interval [first, last]; the region of interest for
// Doppler processing.
struct RangeRoi {
    int first = 0;
    int last = 0;

    int count() const { return last - first + 1; }
    static RangeRoi full(const RadarParams& p) { return RangeRoi{0, p.n0() - 1}; }
};

// Per-order step sizes. rm[p-1] = alpha_p*c/(2*fs*T^p) keeps residual range
// walk under half a range cell; dfm[p-1] = alpha_p*c/(2*fc*T^p) keeps
// residual Doppler drift under half a Doppler cell.
struct StepSizes {
    std::vector<double> rm;
    std::vector<double> dfm;
    std::vector<double> alpha;

    int order() const { return static_cast<int>(rm.size()); }
};

StepSizes step_sizes(const RadarParams& params, int P, const std::vector<double>& alpha);

// Single-scale search space: per-order grids at the DFM step (the fine one).
struct SingleScaleSpace {
    RadarParams params;
    StepSizes steps;
    std::vector<Grid> c;  // index p-1 for order p = 1..P
    RangeRoi roi;

    int order() const { return static_cast<int>(c.size()); }
    std::size_t cells() const;  // product of grid counts (motion axes only)
};

SingleScaleSpace build_single_scale(const RadarParams& params, int P,
                                    const std::vector<Bounds>& bounds,
                                    const std::vector<double>& alpha, RangeRoi roi);

// Dual-scale space: coarse grids at the RM step spanning the bounds, fine
// grids at the DFM step spanning one coarse cell (both endpoints included).
// kappa = 1 - Br/(2*fc) scales the fine compensation values.
struct DualScaleSpace {
    RadarParams params;
    StepSizes steps;
    std::vector<Grid> coarse;  // p = 1..P
    std::vector<Grid> fine;    // p = 1..P, centered on 0
    double kappa = 1.0;
    RangeRoi roi;

    int order() const { return static_cast<int>(coarse.size()); }
};

DualScaleSpace build_dual_scale(const RadarParams& params, int P,
                                const std::vector<Bounds>& bounds,
                                const std::vector<double>& alpha, RangeRoi roi);

// Folding-factor grid plus the baseband-velocity readout grid.
struct AmbiguitySpace {
    int q_min = 0;
    int q_max = 0;

    int count() const { return q_max - q_min + 1; }
    int q_of(int i) const { return q_min + i; }
};

AmbiguitySpace build_ambiguity(const RadarParams& params, Bounds velocity);

struct DualScaleDecomposition {
    std::vector<double> coarse;  // per order p = 1..P
    std::vector<double> fine;    // quantized residual, per order
};

// Coarse value rounds to the coarse grid; fine is the residual quantized to
// the fine grid. |c_p - coarse - fine| <= fine_step/2.
DualScaleDecomposition decompose(const MotionParams& c_true, const DualScaleSpace& space);

// Inverse of the dual-scale estimate: c_p = coarse_p + fine_scaled_p / kappa
// for p >= 1; c_0 comes from the range bin.
MotionParams recompose(const std::vector<double>& coarse, const std::vector<double>& fine_scaled,
                       const DualScaleSpace& space, int range_bin);

struct VelocitySplit {
    int q = 0;          // folding factor
    double base = 0.0;  // baseband velocity in [-Va/2, Va/2)
};

VelocitySplit split_velocity(double c1, const RadarParams& params);

}  // namespace ltci
