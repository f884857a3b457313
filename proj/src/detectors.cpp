#include "ltci/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltci/fft.hpp"
#include "ltci/parallel.hpp"

namespace ltci {

namespace {

// Per-parallel-unit scan results, merged in unit order so the assembled map
// is schedule-independent.
struct UnitScan {
    std::vector<std::pair<std::uint64_t, cplx>> candidates;
    std::uint64_t argmax = 0;
    double argmax_mag = -1.0;
    cplx argmax_value{0.0, 0.0};
    OpCounters counters;

    void consider(std::uint64_t idx, cplx v, double retain) {
        double m = std::abs(v);
        if (m > retain) candidates.emplace_back(idx, v);
        if (m > argmax_mag || (m == argmax_mag && idx < argmax)) {
            argmax_mag = m;
            argmax = idx;
            argmax_value = v;
        }
    }
};

void merge_units(DetectionMap& map, std::vector<UnitScan>& units) {
    std::size_t total = 0;
    for (const UnitScan& u : units) total += u.candidates.size();
    map.candidates.reserve(total);
    double best = -1.0;
    for (UnitScan& u : units) {
        map.counters += u.counters;
        map.candidates.insert(map.candidates.end(), u.candidates.begin(), u.candidates.end());
        if (u.argmax_mag > best || (u.argmax_mag == best && u.argmax < map.argmax)) {
            best = u.argmax_mag;
            map.argmax = u.argmax;
            map.argmax_value = u.argmax_value;
        }
    }
    std::sort(map.candidates.begin(), map.candidates.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
}

void check_same_params(const RadarParams& a, const RadarParams& b) {
    if (a.K != b.K || a.M != b.M || a.fc != b.fc || a.fs != b.fs || a.PRF != b.PRF)
        throw std::invalid_argument("detector: cube and search space use different radar parameters");
}

// Cells are scanned in fixed-size blocks, one UnitScan per block, keeping
// the scan memory bounded on large grids. Merged results are identical for
// any thread count: candidates get sorted by index and the argmax tie-break
// is a total order.
constexpr std::uint64_t kUnitBlock = 256;

template <typename Body>
std::vector<UnitScan> blocked_scan(std::uint64_t cells, int threads, Body&& body) {
    std::uint64_t nblocks = (cells + kUnitBlock - 1) / kUnitBlock;
    std::vector<UnitScan> units(nblocks);
    parallel_for(nblocks, threads, [&](std::size_t b) {
        std::uint64_t lo = b * kUnitBlock;
        std::uint64_t hi = std::min(cells, lo + kUnitBlock);
        for (std::uint64_t cidx = lo; cidx < hi; ++cidx) body(cidx, units[b]);
    });
    return units;
}

// Motion-cell value sum at all orders: S_m = sum_p c_p t_m^p for p = 1..P.
std::vector<double> cell_values(const SingleScaleSpace& space, const std::vector<int>& mi) {
    std::vector<double> c(space.order());
    for (int p = 1; p <= space.order(); ++p) c[p - 1] = space.c[p - 1].value(mi[p - 1]);
    return c;
}

// Decodes a flat motion-cell index into per-order grid indices, matching the
// axis order [c_P, ..., c_2, c_1].
std::vector<int> decode_motion(std::uint64_t cidx, const SingleScaleSpace& space) {
    int P = space.order();
    std::vector<int> mi(P);  // mi[p-1] is the index for order p
    for (int p = 1; p <= P; ++p) {
        mi[p - 1] = static_cast<int>(cidx % static_cast<std::uint64_t>(space.c[p - 1].count));
        cidx /= static_cast<std::uint64_t>(space.c[p - 1].count);
    }
    return mi;
}

std::vector<AxisDesc> single_scale_axes(const SingleScaleSpace& space, int range_count) {
    std::vector<AxisDesc> axes;
    for (int p = space.order(); p >= 2; --p)
        axes.push_back({AxisDesc::Role::Higher, p, space.c[p - 1].count});
    axes.push_back({AxisDesc::Role::Velocity, 1, space.c[0].count});
    axes.push_back({AxisDesc::Role::Range, 0, range_count});
    return axes;
}

}  // namespace

DetectionMap fd_grft(const FreqPulseCube& cube, const SingleScaleSpace& space,
                     const DetectorOptions& opt) {
    check_same_params(cube.params, space.params);
    const RadarParams& p = cube.params;
    const int K = p.K;
    const int M = p.M;
    const int R = space.roi.count();

    DetectionMap map;
    map.kind = DetectorKind::FdGrft;
    map.params = p;
    map.single = space;
    map.axes = single_scale_axes(space, R);
    map.retain_threshold = opt.retain_threshold;
    if (opt.keep_dense) {
        map.dense_stored = true;
        map.dense.assign(map.cell_count(), cplx(0.0, 0.0));
    }

    std::uint64_t cells = space.cells();
    Fft fft(static_cast<std::size_t>(K));
    const double freq_scale = 4.0 * kPi * p.delta_f / kSpeedOfLight;
    const double dop_scale = 4.0 * kPi / p.lambda();

    std::vector<UnitScan> units =
        blocked_scan(cells, opt.threads, [&](std::uint64_t cidx, UnitScan& unit) {
        std::vector<int> mi = decode_motion(cidx, space);
        std::vector<double> cvals = cell_values(space, mi);

        std::vector<cplx> acc(K, cplx(0.0, 0.0));
        // Several pulse columns per pass: the per-bin rotor recurrences are
        // serial, so independent chains hide the multiply latency and cut
        // the accumulator traffic.
        constexpr int kWay = 4;
        int group = M >= kWay ? kWay : M;
        for (int m = 0; m < M; m += group) {
            cplx base[kWay], rot[kWay], w[kWay];
            const cplx* col[kWay];
            for (int h = 0; h < group; ++h) {
                double tm = p.slow_time(m + h);
                double s = 0.0, tp = 1.0;
                for (double cv : cvals) {
                    tp *= tm;
                    s += cv * tp;
                }
                col[h] = cube.column(m + h);
                // Row phase over the wrapped frequency grid advances by a
                // fixed rotor per bin, split at the positive/negative seam.
                base[h] = std::polar(1.0, dop_scale * s);
                rot[h] = std::polar(1.0, freq_scale * s);
                w[h] = base[h];
            }
            if (group == kWay) {
                for (int r = 0; r < K / 2; ++r) {
                    acc[r] += (w[0] * col[0][r] + w[1] * col[1][r]) +
                              (w[2] * col[2][r] + w[3] * col[3][r]);
                    for (int h = 0; h < kWay; ++h) w[h] *= rot[h];
                }
                for (int h = 0; h < kWay; ++h) w[h] = base[h] * std::conj(w[h] / base[h]);
                for (int r = K / 2; r < K; ++r) {
                    acc[r] += (w[0] * col[0][r] + w[1] * col[1][r]) +
                              (w[2] * col[2][r] + w[3] * col[3][r]);
                    for (int h = 0; h < kWay; ++h) w[h] *= rot[h];
                }
            } else {
                for (int h = 0; h < group; ++h) {
                    for (int r = 0; r < K / 2; ++r) {
                        acc[r] += w[h] * col[h][r];
                        w[h] *= rot[h];
                    }
                    w[h] = base[h] * std::conj(w[h] / base[h]);
                    for (int r = K / 2; r < K; ++r) {
                        acc[r] += w[h] * col[h][r];
                        w[h] *= rot[h];
                    }
                }
            }
        }
        fft.dft_plus(acc.data());
        unit.counters.mf += static_cast<std::uint64_t>(p.n0());
        unit.counters.ifft += 1;

        std::uint64_t base_idx = cidx * static_cast<std::uint64_t>(R);
        for (int r = 0; r < R; ++r) {
            std::uint64_t idx = base_idx + static_cast<std::uint64_t>(r);
            cplx v = acc[space.roi.first + r];
            if (map.dense_stored) map.dense[idx] = v;
            unit.consider(idx, v, opt.retain_threshold);
        }
    });
    merge_units(map, units);
    return map;
}

DetectionMap td_grft(const RangePulseCube& cube, const SingleScaleSpace& space,
                     const DetectorOptions& opt) {
    check_same_params(cube.params, space.params);
    const RadarParams& p = cube.params;
    const int M = p.M;
    const int N0 = p.n0();
    const int R = space.roi.count();

    DetectionMap map;
    map.kind = DetectorKind::TdGrft;
    map.params = p;
    map.single = space;
    map.axes = single_scale_axes(space, R);
    map.retain_threshold = opt.retain_threshold;
    if (opt.keep_dense) {
        map.dense_stored = true;
        map.dense.assign(map.cell_count(), cplx(0.0, 0.0));
    }

    std::uint64_t cells = space.cells();
    const double dop_scale = 4.0 * kPi / p.lambda();
    const double bin_scale = 2.0 * p.fs / kSpeedOfLight;  // meters -> range bins

    std::vector<UnitScan> units =
        blocked_scan(cells, opt.threads, [&](std::uint64_t cidx, UnitScan& unit) {
        std::vector<int> mi = decode_motion(cidx, space);
        std::vector<double> cvals = cell_values(space, mi);

        std::vector<double> offset(M);
        std::vector<cplx> phase(M);
        for (int m = 0; m < M; ++m) {
            double tm = p.slow_time(m);
            double s = 0.0, tp = 1.0;
            for (double cv : cvals) {
                tp *= tm;
                s += cv * tp;
            }
            offset[m] = bin_scale * s;
            phase[m] = std::polar(1.0, dop_scale * s);
        }

        std::uint64_t base_idx = cidx * static_cast<std::uint64_t>(R);
        for (int r = 0; r < R; ++r) {
            int n0 = space.roi.first + r;
            cplx acc(0.0, 0.0);
            for (int m = 0; m < M; ++m) {
                long n = std::lround(static_cast<double>(n0) + offset[m]);
                if (n < 0 || n >= N0) {
                    switch (opt.trajectory) {
                        case TrajectoryPolicy::ZeroOutside: continue;
                        case TrajectoryPolicy::Wrap: n = ((n % N0) + N0) % N0; break;
                        case TrajectoryPolicy::Error:
                            throw std::out_of_range("td_grft: trajectory leaves the cube");
                    }
                }
                acc += cube.at(static_cast<int>(n), m) * phase[m];
            }
            unit.counters.mf += 1;
            std::uint64_t idx = base_idx + static_cast<std::uint64_t>(r);
            if (map.dense_stored) map.dense[idx] = acc;
            unit.consider(idx, acc, opt.retain_threshold);
        }
    });
    merge_units(map, units);
    return map;
}

DetectionMap kt_mfp(const FreqPulseCube& cube, const AmbiguitySpace& amb,
                    const SingleScaleSpace& space, const DetectorOptions& opt) {
    check_same_params(cube.params, space.params);
    if (space.order() != 2) throw std::invalid_argument("kt_mfp: needs a P = 2 search space");
    const RadarParams& p = cube.params;
    const int M = p.M;
    const int R = space.roi.count();
    const Grid& accel = space.c[1];

    DetectionMap map;
    map.kind = DetectorKind::KtMfp;
    map.params = p;
    map.single = space;
    map.amb = amb;
    map.axes = {{AxisDesc::Role::Folding, 0, amb.count()},
                {AxisDesc::Role::Higher, 2, accel.count},
                {AxisDesc::Role::Range, 0, R},
                {AxisDesc::Role::Doppler, 0, M}};
    map.retain_threshold = opt.retain_threshold;
    if (opt.keep_dense) {
        map.dense_stored = true;
        map.dense.assign(map.cell_count(), cplx(0.0, 0.0));
    }

    FreqPulseCube ykt = keystone(cube, opt.keystone_taps);
    map.counters.kt += 1;

    std::uint64_t cells = static_cast<std::uint64_t>(amb.count()) * accel.count;
    int threads = resolve_threads(opt.threads);
    std::vector<UnitScan> units(cells);
    parallel_for(cells, threads, [&](std::size_t cidx) {
        UnitScan& unit = units[cidx];
        int i2 = static_cast<int>(cidx % static_cast<std::uint64_t>(accel.count));
        int iq = static_cast<int>(cidx / static_cast<std::uint64_t>(accel.count));
        double c2 = accel.value(i2);

        // H_KT splits into the range part (applied before the range
        // transform) and the Doppler part (applied inside gft); the per-pulse
        // factors commute with the per-pulse range transform.
        RangePulseCube compensated =
            gift(ykt, {static_cast<double>(amb.q_of(iq)), c2}, DetectorVariant::KtMfp);
        RangeDopplerMap rd = gft(compensated, {c2}, space.roi);
        unit.counters.mf += static_cast<std::uint64_t>(p.n0());
        unit.counters.ifft += static_cast<std::uint64_t>(M);
        unit.counters.fft += static_cast<std::uint64_t>(R);

        std::uint64_t base_idx = cidx * static_cast<std::uint64_t>(R) * M;
        for (int r = 0; r < R; ++r)
            for (int j = 0; j < M; ++j) {
                std::uint64_t idx =
                    base_idx + static_cast<std::uint64_t>(r) * M + static_cast<std::uint64_t>(j);
                cplx v = rd.at(r, j);
                if (map.dense_stored) map.dense[idx] = v;
                unit.consider(idx, v, opt.retain_threshold);
            }
    });
    merge_units(map, units);
    return map;
}

namespace {

// Shared dual-scale cascade: outer coarse cells, inner fine cells, Doppler
// readout window [dop_first, dop_first + dop_count).
struct DualScalePlan {
    std::vector<Grid> coarse_axes;       // iteration order matches map axes
    std::vector<Grid> fine_axes;         // orders 2..P
    int dop_first = 0;
    int dop_count = 0;
};

void run_dual_scale(DetectionMap& map, const FreqPulseCube& input, const DualScaleSpace& space,
                    const DualScalePlan& plan, DetectorVariant variant, const AmbiguitySpace* amb,
                    const DetectorOptions& opt) {
    const RadarParams& p = input.params;
    const int M = p.M;
    const int R = space.roi.count();
    const double kappa = space.kappa;

    std::uint64_t coarse_cells = 1;
    for (const Grid& g : plan.coarse_axes) coarse_cells *= static_cast<std::uint64_t>(g.count);
    if (amb) coarse_cells *= static_cast<std::uint64_t>(amb->count());
    std::uint64_t fine_cells = 1;
    for (const Grid& g : plan.fine_axes) fine_cells *= static_cast<std::uint64_t>(g.count);

    if (opt.keep_dense) {
        map.dense_stored = true;
        map.dense.assign(map.cell_count(), cplx(0.0, 0.0));
    }

    int threads = resolve_threads(opt.threads);
    std::vector<UnitScan> units(coarse_cells);
    parallel_for(coarse_cells, threads, [&](std::size_t cidx) {
        UnitScan& unit = units[cidx];

        // Decode coarse indices; axis order is [q?, coarse_1.., coarse_P].
        std::uint64_t rem = cidx;
        std::vector<int> ci(plan.coarse_axes.size());
        for (std::size_t i = plan.coarse_axes.size(); i-- > 0;) {
            ci[i] = static_cast<int>(rem % static_cast<std::uint64_t>(plan.coarse_axes[i].count));
            rem /= static_cast<std::uint64_t>(plan.coarse_axes[i].count);
        }
        int iq = amb ? static_cast<int>(rem) : 0;

        std::vector<double> coarse_vals;
        if (variant == DetectorVariant::KtMfp) {
            coarse_vals = {static_cast<double>(amb->q_of(iq)), plan.coarse_axes[0].value(ci[0])};
        } else {
            coarse_vals.resize(plan.coarse_axes.size());
            for (std::size_t i = 0; i < plan.coarse_axes.size(); ++i)
                coarse_vals[i] = plan.coarse_axes[i].value(ci[i]);
        }

        RangePulseCube mg = mgift(input, coarse_vals, variant);
        unit.counters.ifft += static_cast<std::uint64_t>(M);

        for (std::uint64_t fidx = 0; fidx < fine_cells; ++fidx) {
            std::uint64_t frem = fidx;
            std::vector<int> fi(plan.fine_axes.size());
            for (std::size_t i = plan.fine_axes.size(); i-- > 0;) {
                fi[i] = static_cast<int>(frem % static_cast<std::uint64_t>(plan.fine_axes[i].count));
                frem /= static_cast<std::uint64_t>(plan.fine_axes[i].count);
            }
            std::vector<double> fine_scaled(plan.fine_axes.size());
            for (std::size_t i = 0; i < plan.fine_axes.size(); ++i)
                fine_scaled[i] = kappa * plan.fine_axes[i].value(fi[i]);

            RangeDopplerMap rd = gft(mg, fine_scaled, space.roi);
            unit.counters.mf += static_cast<std::uint64_t>(R);
            unit.counters.fft += static_cast<std::uint64_t>(R);

            std::uint64_t base_idx = (cidx * fine_cells + fidx) *
                                     static_cast<std::uint64_t>(R) * plan.dop_count;
            for (int r = 0; r < R; ++r)
                for (int j = 0; j < plan.dop_count; ++j) {
                    std::uint64_t idx = base_idx + static_cast<std::uint64_t>(r) * plan.dop_count +
                                        static_cast<std::uint64_t>(j);
                    cplx v = rd.at(r, plan.dop_first + j);
                    if (map.dense_stored) map.dense[idx] = v;
                    unit.consider(idx, v, opt.retain_threshold);
                }
        }
    });
    merge_units(map, units);
}

}  // namespace

DetectionMap ds_grft(const FreqPulseCube& cube, const DualScaleSpace& space,
                     const DetectorOptions& opt) {
    check_same_params(cube.params, space.params);
    const RadarParams& p = cube.params;
    const int M = p.M;

    // Doppler readout truncated to kappa*[-coarse_vel_step/2, +coarse_vel_step/2].
    // The outermost bin touching the interval is kept, so every residual
    // velocity has an in-window bin within half a Doppler cell (coarse cells
    // may overlap by one bin at the seams).
    double dop_bin = p.Va() / M;
    int keep = static_cast<int>(std::ceil(space.kappa * space.steps.rm[0] / 2.0 / dop_bin - 1e-9));
    keep = std::min(keep, M / 2 - 1);

    DualScalePlan plan;
    plan.coarse_axes = space.coarse;
    for (int ord = 2; ord <= space.order(); ++ord) plan.fine_axes.push_back(space.fine[ord - 1]);
    plan.dop_first = M / 2 - keep;
    plan.dop_count = 2 * keep + 1;

    DetectionMap map;
    map.kind = DetectorKind::DsGrft;
    map.params = p;
    map.dual = space;
    map.retain_threshold = opt.retain_threshold;
    map.doppler_first = plan.dop_first;
    for (int ord = 1; ord <= space.order(); ++ord)
        map.axes.push_back({AxisDesc::Role::Coarse, ord, space.coarse[ord - 1].count});
    for (int ord = 2; ord <= space.order(); ++ord)
        map.axes.push_back({AxisDesc::Role::Fine, ord, space.fine[ord - 1].count});
    map.axes.push_back({AxisDesc::Role::Range, 0, space.roi.count()});
    map.axes.push_back({AxisDesc::Role::Doppler, 0, plan.dop_count});

    run_dual_scale(map, cube, space, plan, DetectorVariant::Grft, nullptr, opt);
    return map;
}

DetectionMap ds_kt_mfp(const FreqPulseCube& cube, const AmbiguitySpace& amb,
                       const DualScaleSpace& space, const DetectorOptions& opt) {
    check_same_params(cube.params, space.params);
    if (space.order() != 2) throw std::invalid_argument("ds_kt_mfp: needs a P = 2 search space");
    const RadarParams& p = cube.params;

    DualScalePlan plan;
    plan.coarse_axes = {space.coarse[1]};  // acceleration only; q comes from amb
    plan.fine_axes = {space.fine[1]};
    plan.dop_first = 0;
    plan.dop_count = p.M;  // baseband velocity spans the full Doppler axis

    DetectionMap map;
    map.kind = DetectorKind::DsKtMfp;
    map.params = p;
    map.dual = space;
    map.amb = amb;
    map.retain_threshold = opt.retain_threshold;
    map.doppler_first = 0;
    map.axes = {{AxisDesc::Role::Folding, 0, amb.count()},
                {AxisDesc::Role::Coarse, 2, space.coarse[1].count},
                {AxisDesc::Role::Fine, 2, space.fine[1].count},
                {AxisDesc::Role::Range, 0, space.roi.count()},
                {AxisDesc::Role::Doppler, 0, p.M}};

    FreqPulseCube ykt = keystone(cube, opt.keystone_taps);
    map.counters.kt += 1;

    run_dual_scale(map, ykt, space, plan, DetectorVariant::KtMfp, &amb, opt);
    return map;
}

double detection_threshold(const RadarParams& params, double sigma2, double pfa, int bins) {
    if (!(pfa > 0.0) || !(pfa < 1.0))
        throw std::invalid_argument("detection_threshold: pfa must be in (0, 1)");
    if (sigma2 < 0) throw std::invalid_argument("detection_threshold: sigma2 must be >= 0");
    if (bins == 0) bins = params.K;
    return std::sqrt(-static_cast<double>(params.M) * bins * sigma2 * std::log(pfa));
}

cplx fd_grft_point(const FreqPulseCube& cube, const std::vector<double>& ctilde, int range_bin) {
    const RadarParams& p = cube.params;
    const double freq_scale = 4.0 * kPi / kSpeedOfLight;
    const double dop_scale = 4.0 * kPi / p.lambda();
    const double c0 = range_bin * p.delta_R();
    cplx acc(0.0, 0.0);
    for (int m = 0; m < p.M; ++m) {
        double tm = p.slow_time(m);
        double s = 0.0, tp = 1.0;
        for (double cv : ctilde) {
            tp *= tm;
            s += cv * tp;
        }
        const cplx* col = cube.column(m);
        cplx inner(0.0, 0.0);
        for (int k = 0; k < p.K; ++k) {
            double fk = p.freq_of_row(k);
            inner += col[k] * std::polar(1.0, freq_scale * fk * (s + c0));
        }
        acc += inner * std::polar(1.0, dop_scale * s);
    }
    return acc;
}

cplx kt_mfp_point(const FreqPulseCube& keystoned, int q, double c2, int range_bin,
                  int doppler_bin) {
    const RadarParams& p = keystoned.params;
    const double freq_scale = 4.0 * kPi / kSpeedOfLight;
    const double dop_scale = 4.0 * kPi / p.lambda();
    const double c0 = range_bin * p.delta_R();
    const double vd = (static_cast<double>(doppler_bin) - p.M / 2.0) * p.Va() / p.M;
    const double qva = q * p.Va();
    cplx acc(0.0, 0.0);
    for (int m = 0; m < p.M; ++m) {
        double tm = p.slow_time(m);
        const cplx* col = keystoned.column(m);
        cplx inner(0.0, 0.0);
        for (int k = 0; k < p.K; ++k) {
            double fk = p.freq_of_row(k);
            double fbar = 1.0 - fk / p.fc;
            inner += col[k] * std::polar(1.0, freq_scale * fk *
                                                  (fbar * qva * tm - c2 * tm * tm + c0));
        }
        acc += inner * std::polar(1.0, dop_scale * (c2 * tm * tm + vd * tm));
    }
    return acc;
}

}  // namespace ltci
