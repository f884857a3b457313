#include "ltci/bench.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "ltci/parallel.hpp"
#include "ltci/rng.hpp"
#include "ltci/signal_model.hpp"

namespace ltci {

ScenarioSpaces build_spaces(const Scenario& sc) {
    ScenarioSpaces s{
        build_single_scale(sc.params, sc.P, sc.bounds, sc.alpha, RangeRoi::full(sc.params)),
        build_single_scale(sc.params, sc.P, sc.bounds, sc.alpha, sc.roi),
        build_dual_scale(sc.params, sc.P, sc.bounds, sc.alpha, sc.roi),
        build_ambiguity(sc.params, sc.bounds[0]),
    };
    return s;
}

namespace {

double a1_for_snr(const Scenario& sc, double snr_db) {
    return std::sqrt(sc.sigma2 * std::pow(10.0, snr_db / 10.0) / sc.params.K_valid);
}

// A trial succeeds when some cell above gamma estimates the truth within one
// cell on every axis (the per-cell hypothesis test's H1 region around the
// target).
bool detection_success(const DetectionMap& map, const Target& truth) {
    CellSizes cs = estimate_cell_sizes(map);
    for (const auto& [idx, value] : map.candidates) {
        Detection d = detection_from_cell(map, map.decode(idx), value);
        if (std::abs(d.estimate.c[0] - truth.motion.c[0]) > cs.range * 1.0001) continue;
        if (truth.motion.order() >= 1 &&
            std::abs(d.estimate.c[1] - truth.motion.c[1]) > cs.velocity * 1.0001)
            continue;
        if (truth.motion.order() >= 2 && d.estimate.order() >= 2 &&
            std::abs(d.estimate.c[2] - truth.motion.c[2]) > cs.accel * 1.0001)
            continue;
        return true;
    }
    return false;
}

DetectionMap run_detector(DetectorKind kind, const FreqPulseCube& cube,
                          const RangePulseCube* range_cube, const ScenarioSpaces& sp,
                          const DetectorOptions& opt) {
    switch (kind) {
        case DetectorKind::FdGrft: return fd_grft(cube, sp.single, opt);
        case DetectorKind::TdGrft: return td_grft(*range_cube, sp.single_roi, opt);
        case DetectorKind::KtMfp: return kt_mfp(cube, sp.amb, sp.single_roi, opt);
        case DetectorKind::DsGrft: return ds_grft(cube, sp.dual, opt);
        case DetectorKind::DsKtMfp: return ds_kt_mfp(cube, sp.amb, sp.dual, opt);
    }
    throw std::logic_error("unknown detector");
}

void wilson_interval(int successes, int n, double& lo, double& hi) {
    const double z = 1.959963984540054;
    double phat = static_cast<double>(successes) / n;
    double z2n = z * z / n;
    double center = (phat + z2n / 2.0) / (1.0 + z2n);
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n)) / (1.0 + z2n);
    lo = std::max(0.0, center - half);
    hi = std::min(1.0, center + half);
}

}  // namespace

std::vector<PdCurve> run_pd(const Scenario& sc) {
    if (sc.trials < 1) throw std::invalid_argument("run_pd: trials must be >= 1");
    if (sc.targets.empty()) throw std::invalid_argument("run_pd: scenario needs a target");
    ScenarioSpaces sp = build_spaces(sc);
    double gamma = detection_threshold(sc.params, sc.sigma2, sc.pfa);

    bool needs_range_cube = false;
    for (DetectorKind k : sc.detectors) needs_range_cube |= k == DetectorKind::TdGrft;

    std::vector<PdCurve> curves(sc.detectors.size());
    for (std::size_t d = 0; d < sc.detectors.size(); ++d) curves[d].kind = sc.detectors[d];

    for (std::size_t pt = 0; pt < sc.snr_db.size(); ++pt) {
        double a1 = a1_for_snr(sc, sc.snr_db[pt]);
        std::vector<Target> scaled = sc.targets;
        for (Target& t : scaled) t.amplitude *= a1;
        FreqPulseCube clean = synthesize_cube(sc.params, scaled);

        // successes[trial][detector]; written by exactly one worker each.
        std::vector<std::uint8_t> success(static_cast<std::size_t>(sc.trials) *
                                          sc.detectors.size());
        parallel_for(static_cast<std::size_t>(sc.trials), sc.threads, [&](std::size_t trial) {
            std::uint64_t trial_seed =
                GaussianRng::derive_seed(sc.seed, pt * static_cast<std::uint64_t>(sc.trials) + trial);
            FreqPulseCube noisy = add_noise(clean, sc.sigma2, trial_seed);
            RangePulseCube range_cube;
            if (needs_range_cube) range_cube = range_ifft(noisy);

            DetectorOptions opt;
            opt.retain_threshold = gamma;
            opt.threads = 1;
            opt.keystone_taps = sc.keystone_taps;
            for (std::size_t d = 0; d < sc.detectors.size(); ++d) {
                DetectionMap map = run_detector(sc.detectors[d], noisy, &range_cube, sp, opt);
                success[trial * sc.detectors.size() + d] =
                    detection_success(map, sc.targets[0]) ? 1 : 0;
            }
        });

        for (std::size_t d = 0; d < sc.detectors.size(); ++d) {
            int wins = 0;
            for (int t = 0; t < sc.trials; ++t) wins += success[t * sc.detectors.size() + d];
            PdPoint p;
            p.snr_db = sc.snr_db[pt];
            p.trials = sc.trials;
            p.pd = static_cast<double>(wins) / sc.trials;
            wilson_interval(wins, sc.trials, p.ci_lo, p.ci_hi);
            curves[d].points.push_back(p);
        }
    }
    return curves;
}

double snr_at_pd(const PdCurve& curve, double pd) {
    if (curve.points.empty()) throw std::invalid_argument("snr_at_pd: empty curve");
    if (curve.points.front().pd >= pd) return curve.points.front().snr_db;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const PdPoint& a = curve.points[i - 1];
        const PdPoint& b = curve.points[i];
        if (a.pd < pd && b.pd >= pd) {
            double f = (pd - a.pd) / (b.pd - a.pd);
            return a.snr_db + f * (b.snr_db - a.snr_db);
        }
    }
    throw std::runtime_error("snr_at_pd: curve never reaches the requested Pd");
}

ComplexityDims complexity_dims(const RadarParams& params, const SingleScaleSpace& single,
                               const DualScaleSpace& dual, const AmbiguitySpace& amb) {
    ComplexityDims d;
    d.M = params.M;
    d.N0 = params.n0();
    d.Ntilde0 = dual.roi.count();
    d.N0_td = single.roi.count();
    for (const Grid& g : single.c) d.single_cells *= static_cast<std::uint64_t>(g.count);
    for (const Grid& g : dual.coarse) d.coarse_cells *= static_cast<std::uint64_t>(g.count);
    for (std::size_t i = 1; i < dual.fine.size(); ++i)
        d.fine_cells *= static_cast<std::uint64_t>(dual.fine[i].count);
    d.N1 = single.c[0].count;
    d.N2 = single.order() >= 2 ? single.c[1].count : 1;
    d.Na = static_cast<std::uint64_t>(amb.count());
    d.N1c = dual.coarse[0].count;
    d.N2c = dual.order() >= 2 ? dual.coarse[1].count : 1;
    d.N2f = dual.order() >= 2 ? dual.fine[1].count : 1;
    d.fs_over_fc = params.fs / params.fc;
    return d;
}

OpCounters predict_counters(DetectorKind kind, const ComplexityDims& d) {
    OpCounters c;
    std::uint64_t M = static_cast<std::uint64_t>(d.M);
    std::uint64_t N0 = static_cast<std::uint64_t>(d.N0);
    std::uint64_t Nt = static_cast<std::uint64_t>(d.Ntilde0);
    switch (kind) {
        case DetectorKind::TdGrft:
            c.mf = d.single_cells * static_cast<std::uint64_t>(d.N0_td);
            break;
        case DetectorKind::FdGrft:
            c.mf = d.single_cells * N0;
            c.ifft = d.single_cells;
            break;
        case DetectorKind::KtMfp:
            c.kt = 1;
            c.mf = d.Na * d.N2 * N0;
            c.ifft = d.Na * d.N2 * M;
            c.fft = d.Na * d.N2 * Nt;
            break;
        case DetectorKind::DsGrft:
            c.ifft = d.coarse_cells * M;
            c.mf = d.coarse_cells * d.fine_cells * Nt;
            c.fft = d.coarse_cells * d.fine_cells * Nt;
            break;
        case DetectorKind::DsKtMfp:
            c.kt = 1;
            c.ifft = d.Na * d.N2c * M;
            c.mf = d.Na * d.N2c * d.N2f * Nt;
            c.fft = d.Na * d.N2c * d.N2f * Nt;
            break;
    }
    return c;
}

double bo_total(const OpCounters& counts, int M, int N0) {
    double m = static_cast<double>(M);
    double n0 = static_cast<double>(N0);
    return static_cast<double>(counts.kt) * m * m * n0 + static_cast<double>(counts.mf) * m +
           static_cast<double>(counts.ifft) * 0.5 * n0 * std::log2(n0) +
           static_cast<double>(counts.fft) * 0.5 * m * std::log2(m);
}

std::vector<TimingRow> run_timing(const Scenario& sc, double budget_bo) {
    ScenarioSpaces sp = build_spaces(sc);
    ComplexityDims dims = complexity_dims(sc.params, sp.single_roi, sp.dual, sp.amb);
    double predicted = 0;
    for (DetectorKind k : sc.detectors) predicted += bo_total(predict_counters(k, dims), dims.M, dims.N0);
    if (predicted > budget_bo)
        throw std::runtime_error("run_timing: predicted operation total exceeds the budget");

    double a1 = sc.snr_db.empty() ? 1.0 : a1_for_snr(sc, sc.snr_db.back());
    std::vector<Target> scaled = sc.targets;
    for (Target& t : scaled) t.amplitude *= a1;
    FreqPulseCube cube = synthesize_cube(sc.params, scaled);
    RangePulseCube range_cube = range_ifft(cube);

    DetectorOptions opt;
    opt.retain_threshold = 0.5 * sc.params.M * static_cast<double>(sc.params.K_valid) * a1;
    opt.threads = sc.threads;
    opt.keystone_taps = sc.keystone_taps;

    std::vector<TimingRow> rows;
    for (DetectorKind k : sc.detectors) {
        auto t0 = std::chrono::steady_clock::now();
        DetectionMap map = run_detector(k, cube, &range_cube, sp, opt);
        auto t1 = std::chrono::steady_clock::now();
        TimingRow row;
        row.kind = k;
        row.seconds = std::chrono::duration<double>(t1 - t0).count();
        row.measured = map.counters;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ltci
