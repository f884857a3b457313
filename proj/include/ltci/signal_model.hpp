#pragma once

#include <cstdint>
#include <vector>

#include "ltci/cube.hpp"
#include "ltci/motion.hpp"

namespace ltci {

// Aliased (periodic) sinc: sin(pi*Br*tau) / (K_valid * sin(pi*delta_f*tau)),
// with the analytic limit +-1 at the removable singularities.
double asinc(double tau, const RadarParams& params);

// Multi-target echo in the range-frequency / slow-time domain:
//   y(f_k, t_m) = sum_l A1_l * exp(-j*(4*pi/c)*(f_k + fc)*R_l(t_m))
// on the occupied band, zero on the guard bins. Noiseless; targets add
// in the order given, so superposition is bit-exact.
FreqPulseCube synthesize_cube(const RadarParams& params, const std::vector<Target>& targets);

// Adds i.i.d. circular complex Gaussian noise of total variance sigma2
// to every bin (occupied and guard). sigma2 == 0 returns the input unchanged.
FreqPulseCube add_noise(const FreqPulseCube& cube, double sigma2, std::uint64_t seed);

// Sample estimate of the per-bin noise variance. Uses the mean power of the
// guard bins when a guard band exists (they carry noise only); otherwise
// falls back to the median power over all bins, which is robust to a few
// strong targets. The detectors take sigma2 as known; this is a
// convenience for configuring them from recorded data.
double estimate_noise_variance(const FreqPulseCube& cube);

// Column-wise unnormalized inverse transform, kernel exp(+j*2*pi*k*n/K).
RangePulseCube range_ifft(const FreqPulseCube& cube);

// Column-wise forward transform, kernel exp(-j*2*pi*n*k/K), unnormalized.
// range_fft(range_ifft(x)) == K * x up to round-off.
FreqPulseCube range_fft(const RangePulseCube& cube);

}  // namespace ltci
