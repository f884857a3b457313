#pragma once

#include <vector>

#include "ltci/cube.hpp"
#include "ltci/search_space.hpp"

namespace ltci {

enum class MfKind { RM, DFM, KtRm, PreDfm };
enum class DetectorVariant { Grft, KtMfp };

// Matched-filter phase coefficients. All entries are unit modulus.
// Parameter layout depends on kind:
//   RM      ctilde = [c1..cP]   H(k,m) = exp(+j 4pi/c * f_k * sum_p c_p t_m^p)
//   DFM     ctilde = [c2..cP]   H(m)   = exp(+j 4pi/lambda * sum_{p>=2} c_p t_m^p)
//   KtRm    ctilde = [q, c2]    H(k,m) = exp(+j 4pi/c * f_k * (fbar q Va t_m - c2 t_m^2)),
//                               fbar = 1 - f_k/fc (first-order)
//   PreDfm  Grft:  ctilde = [c1..cP]  H(m) = exp(+j 4pi/lambda * sum_{p>=1} c_p t_m^p)
//           KtMfp: ctilde = [c2]      H(m) = exp(+j 4pi/lambda * c2 t_m^2)
struct MFCoefficients {
    MfKind kind = MfKind::RM;
    int rows = 0;  // K for RM/KtRm, 1 for DFM/PreDfm
    int cols = 0;  // M
    std::vector<cplx> values;  // column-major, same rule as the cubes
    std::vector<double> ctilde;

    const cplx& at(int k, int m) const {
        return values[static_cast<std::size_t>(k) + rows * static_cast<std::size_t>(m)];
    }
};

MFCoefficients build_mf(MfKind kind, const RadarParams& params, const std::vector<double>& ctilde,
                        DetectorVariant variant = DetectorVariant::Grft);

// Keystone transform: per frequency row, slow time is rescaled t -> fbar*t
// with exact fbar = fc/(f_k + fc), realized by truncated-sinc interpolation
// over the sampled pulses (tap indices clamped at the edges). Removes the
// linear range walk of the baseband velocity without knowing it.
FreqPulseCube keystone(const FreqPulseCube& cube, int taps = 8);

// Range compression with motion compensation: per pulse,
//   out(n, m) = sum_k y(f_k, t_m) H_RM(f_k, t_m) exp(+j 4pi/c f_k n dR),
// i.e. an unnormalized inverse transform of the compensated spectrum.
// For the KtMfp variant the KtRm coefficients are used instead
// (ctilde = [q, c2]).
RangePulseCube gift(const FreqPulseCube& cube, const std::vector<double>& ctilde,
                    DetectorVariant variant = DetectorVariant::Grft);

// gift followed by the per-pulse pre-compensation phase H_preDFM, which
// cancels the coarse part of the Doppler phase ahead of the fine search.
RangePulseCube mgift(const FreqPulseCube& cube, const std::vector<double>& ctilde_coarse,
                     DetectorVariant variant = DetectorVariant::Grft);

// Doppler-domain output of the fine compensation. Column j maps to baseband
// velocity (j - M/2) * Va / M, spanning [-Va/2, Va/2).
struct RangeDopplerMap {
    RadarParams params;
    RangeRoi roi;
    std::vector<cplx> data;  // roi.count() x M, (r, j) at data[r + roi.count()*j]

    const cplx& at(int r, int j) const {
        return data[static_cast<std::size_t>(r) + roi.count() * static_cast<std::size_t>(j)];
    }
    double velocity_of_bin(int j) const {
        return (static_cast<double>(j) - params.M / 2.0) * params.Va() / params.M;
    }
    int bin_of_velocity(double v) const;
};

// Per range bin of interest: multiply the slow-time row by H_DFM built from
// fine_higher (values for orders p >= 2, already scaled by the caller where
// required) and transform over slow time with kernel exp(+j 4pi/lambda v t_m).
RangeDopplerMap gft(const RangePulseCube& rows, const std::vector<double>& fine_higher,
                    RangeRoi roi);

}  // namespace ltci
