#include "ltci/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "ltci/fft.hpp"

namespace ltci {

namespace {

double poly_from(const std::vector<double>& coeffs, double t, int first_order) {
    // sum_{p>=first_order} coeffs[p-first_order] * t^p
    double tp = 1.0;
    for (int p = 1; p < first_order; ++p) tp *= t;
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        tp *= t;
        acc += coeffs[i] * tp;
    }
    return acc;
}

double sinc(double u) {
    if (u == 0.0) return 1.0;
    double x = kPi * u;
    return std::sin(x) / x;
}

}  // namespace

MFCoefficients build_mf(MfKind kind, const RadarParams& params, const std::vector<double>& ctilde,
                        DetectorVariant variant) {
    MFCoefficients mf;
    mf.kind = kind;
    mf.cols = params.M;
    mf.ctilde = ctilde;

    switch (kind) {
        case MfKind::RM: {
            if (ctilde.empty()) throw std::invalid_argument("build_mf: RM needs c1..cP");
            mf.rows = params.K;
            mf.values.resize(static_cast<std::size_t>(params.K) * params.M);
            const double scale = 4.0 * kPi / kSpeedOfLight;
            for (int m = 0; m < params.M; ++m) {
                double s = poly_from(ctilde, params.slow_time(m), 1);
                for (int k = 0; k < params.K; ++k)
                    mf.values[k + static_cast<std::size_t>(params.K) * m] =
                        std::polar(1.0, scale * params.freq_of_row(k) * s);
            }
            break;
        }
        case MfKind::KtRm: {
            if (ctilde.size() != 2) throw std::invalid_argument("build_mf: KtRm needs [q, c2]");
            mf.rows = params.K;
            mf.values.resize(static_cast<std::size_t>(params.K) * params.M);
            const double scale = 4.0 * kPi / kSpeedOfLight;
            const double qva = ctilde[0] * params.Va();
            const double c2 = ctilde[1];
            for (int m = 0; m < params.M; ++m) {
                double tm = params.slow_time(m);
                for (int k = 0; k < params.K; ++k) {
                    double fk = params.freq_of_row(k);
                    double fbar = 1.0 - fk / params.fc;
                    mf.values[k + static_cast<std::size_t>(params.K) * m] =
                        std::polar(1.0, scale * fk * (fbar * qva * tm - c2 * tm * tm));
                }
            }
            break;
        }
        case MfKind::DFM: {
            mf.rows = 1;
            mf.values.resize(params.M);
            const double scale = 4.0 * kPi / params.lambda();
            for (int m = 0; m < params.M; ++m)
                mf.values[m] = std::polar(1.0, scale * poly_from(ctilde, params.slow_time(m), 2));
            break;
        }
        case MfKind::PreDfm: {
            mf.rows = 1;
            mf.values.resize(params.M);
            const double scale = 4.0 * kPi / params.lambda();
            for (int m = 0; m < params.M; ++m) {
                double tm = params.slow_time(m);
                double s = variant == DetectorVariant::Grft
                               ? poly_from(ctilde, tm, 1)
                               : (ctilde.empty() ? 0.0 : ctilde[0] * tm * tm);
                mf.values[m] = std::polar(1.0, scale * s);
            }
            break;
        }
    }
    return mf;
}

FreqPulseCube keystone(const FreqPulseCube& cube, int taps) {
    if (taps < 2) throw std::invalid_argument("keystone: need at least 2 taps");
    const RadarParams& p = cube.params;
    FreqPulseCube out(p);
    int half = taps / 2;
    // Hamming-windowed sinc taps, renormalized to unit sum. The bare
    // truncated sinc droops several percent at half-sample offsets, which
    // would dominate the interpolation budget.
    auto tap_weight = [&](double u) {
        return sinc(u) * (0.54 + 0.46 * std::cos(kPi * u / half));
    };
    for (int k = 0; k < p.K; ++k) {
        double fk = p.freq_of_row(k);
        double fbar = p.fc / (fk + p.fc);
        for (int m = 0; m < p.M; ++m) {
            // 1-based pulse position of the resampled point.
            double x = fbar * static_cast<double>(m + 1);
            int j0 = static_cast<int>(std::lround(x));
            if (x == static_cast<double>(j0)) {
                out.at(k, m) = cube.at(k, std::clamp(j0 - 1, 0, p.M - 1));
                continue;
            }
            cplx acc(0.0, 0.0);
            double wsum = 0.0;
            for (int j = j0 - half + 1; j <= j0 + half; ++j) {
                double w = tap_weight(x - static_cast<double>(j));
                wsum += w;
                int src = std::clamp(j - 1, 0, p.M - 1);
                acc += w * cube.at(k, src);
            }
            out.at(k, m) = acc / wsum;
        }
    }
    return out;
}

namespace {

RangePulseCube compensated_ifft(const FreqPulseCube& cube, const MFCoefficients& rm) {
    const RadarParams& p = cube.params;
    RangePulseCube out(p);
    Fft fft(static_cast<std::size_t>(p.K));
    for (int m = 0; m < p.M; ++m) {
        cplx* dst = out.column(m);
        const cplx* src = cube.column(m);
        const cplx* h = rm.values.data() + static_cast<std::size_t>(p.K) * m;
        for (int k = 0; k < p.K; ++k) dst[k] = src[k] * h[k];
        fft.dft_plus(dst);
    }
    return out;
}

}  // namespace

RangePulseCube gift(const FreqPulseCube& cube, const std::vector<double>& ctilde,
                    DetectorVariant variant) {
    MFCoefficients rm = build_mf(variant == DetectorVariant::KtMfp ? MfKind::KtRm : MfKind::RM,
                                 cube.params, ctilde, variant);
    return compensated_ifft(cube, rm);
}

RangePulseCube mgift(const FreqPulseCube& cube, const std::vector<double>& ctilde_coarse,
                     DetectorVariant variant) {
    RangePulseCube out = gift(cube, ctilde_coarse, variant);
    std::vector<double> pre = ctilde_coarse;
    if (variant == DetectorVariant::KtMfp) {
        // Coarse vector is [q, c2]; only c2 is pre-compensated.
        pre.erase(pre.begin());
    }
    MFCoefficients h = build_mf(MfKind::PreDfm, cube.params, pre, variant);
    const RadarParams& p = cube.params;
    for (int m = 0; m < p.M; ++m) {
        cplx w = h.values[m];
        cplx* col = out.column(m);
        for (int n = 0; n < p.n0(); ++n) col[n] *= w;
    }
    return out;
}

int RangeDopplerMap::bin_of_velocity(double v) const {
    int j = static_cast<int>(std::lround(v * params.M / params.Va() + params.M / 2.0));
    return std::clamp(j, 0, params.M - 1);
}

RangeDopplerMap gft(const RangePulseCube& rows, const std::vector<double>& fine_higher,
                    RangeRoi roi) {
    const RadarParams& p = rows.params;
    if (roi.count() <= 0 || roi.first < 0 || roi.last >= p.n0())
        throw std::invalid_argument("gft: empty or out-of-range roi");

    RangeDopplerMap map;
    map.params = p;
    map.roi = roi;
    const int R = roi.count();
    map.data.resize(static_cast<std::size_t>(R) * p.M);

    MFCoefficients dfm = build_mf(MfKind::DFM, p, fine_higher);

    // Slow time starts at m = 1, so the transform over the stored samples
    // (index m-1) picks up a per-bin twiddle exp(+j 2 pi d / M).
    Fft fft(static_cast<std::size_t>(p.M));
    std::vector<cplx> twiddle(p.M);
    for (int j = 0; j < p.M; ++j) {
        double dtilde = static_cast<double>(j) - p.M / 2.0;
        twiddle[j] = std::polar(1.0, 2.0 * kPi * dtilde / p.M);
    }

    std::vector<cplx> scratch(p.M);
    for (int r = 0; r < R; ++r) {
        int n = roi.first + r;
        for (int m = 0; m < p.M; ++m) scratch[m] = rows.at(n, m) * dfm.values[m];
        fft.dft_plus(scratch.data());
        for (int j = 0; j < p.M; ++j) {
            int wrapped = (j - p.M / 2 + p.M) % p.M;
            map.data[r + static_cast<std::size_t>(R) * j] = scratch[wrapped] * twiddle[j];
        }
    }
    return map;
}

}  // namespace ltci
