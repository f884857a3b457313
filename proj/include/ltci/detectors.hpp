#pragma once

#include "ltci/cube.hpp"
#include "ltci/detection.hpp"
#include "ltci/search_space.hpp"
#include "ltci/transforms.hpp"

namespace ltci {

// Trajectory samples that round outside the cube: contribute zero (default),
// wrap modulo N0, or raise.
enum class TrajectoryPolicy { ZeroOutside, Wrap, Error };

struct DetectorOptions {
    double retain_threshold = 0.0;  // keep cells with magnitude > this
    bool keep_dense = false;        // store the full complex map
    int threads = 1;                // 0 = auto
    int keystone_taps = 8;
    TrajectoryPolicy trajectory = TrajectoryPolicy::ZeroOutside;
};

// Frequency-domain search: for every motion-grid point the compensated
// spectrum is summed over pulses and inverse-transformed once, giving all
// range bins of that cell in one pass.
DetectionMap fd_grft(const FreqPulseCube& cube, const SingleScaleSpace& space,
                     const DetectorOptions& opt = {});

// Time-domain search along rounded trajectories.
DetectionMap td_grft(const RangePulseCube& cube, const SingleScaleSpace& space,
                     const DetectorOptions& opt = {});

// Keystone once, then matched filtering over (folding factor, acceleration);
// space must have order 2 (its velocity grid is unused: the baseband
// velocity is read off the Doppler axis).
DetectionMap kt_mfp(const FreqPulseCube& cube, const AmbiguitySpace& amb,
                    const SingleScaleSpace& space, const DetectorOptions& opt = {});

// Dual-scale cascade: coarse range compensation (mgift) per coarse cell,
// then Doppler processing (gft) per fine cell over the range bins of
// interest. Fine velocity is read off the Doppler axis truncated to
// kappa*[-coarse_step/2, coarse_step/2].
DetectionMap ds_grft(const FreqPulseCube& cube, const DualScaleSpace& space,
                     const DetectorOptions& opt = {});

// Dual-scale keystone variant: coarse cells are (folding factor, coarse
// acceleration); the baseband velocity is read off the full Doppler axis.
DetectionMap ds_kt_mfp(const FreqPulseCube& cube, const AmbiguitySpace& amb,
                       const DualScaleSpace& space, const DetectorOptions& opt = {});

// gamma = sqrt(-M * bins * sigma2 * ln(pfa)); bins defaults to K, the
// per-pulse sample count entering the coherent sum (noise occupies the full
// band, so the guard bins contribute too). Pass K_valid to get the
// occupied-band-only variant.
double detection_threshold(const RadarParams& params, double sigma2, double pfa, int bins = 0);

// Statistic of the frequency-domain search at one arbitrary parameter point
// (ctilde = [c1..cP], any values) and range bin; the grid detectors above
// match this evaluator on their grid points.
cplx fd_grft_point(const FreqPulseCube& cube, const std::vector<double>& ctilde, int range_bin);

// Same for the keystone detector: input is the keystoned cube, parameters
// (q, c2), a range bin and a centered Doppler bin index.
cplx kt_mfp_point(const FreqPulseCube& keystoned, int q, double c2, int range_bin,
                  int doppler_bin);

}  // namespace ltci
