// Command-line front end: cube synthesis, detection runs, and the benchmark
// table generators. All file outputs are written to a temporary name and
// renamed on success. Exit codes: 0 ok, 2 config error, 3 I/O error,
// 4 precondition violation.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ltci/bench.hpp"
#include "ltci/cube_io.hpp"
#include "ltci/detectors.hpp"
#include "ltci/run_config.hpp"
#include "ltci/signal_model.hpp"

namespace {

using namespace ltci;

void write_text_file(const std::string& path, const std::string& body) {
    std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw IoError("cannot open " + tmp + " for writing");
    bool ok = std::fwrite(body.data(), 1, body.size(), f) == body.size();
    ok = std::fclose(f) == 0 && ok;
    if (!ok) {
        std::remove(tmp.c_str());
        throw IoError("failed writing " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void check_cube_matches_config(const CubeFile& cube, const RadarParams& cfg) {
    const RadarParams& p = cube.params;
    if (p.K != cfg.K || p.M != cfg.M || p.fc != cfg.fc || p.fs != cfg.fs || p.PRF != cfg.PRF)
        throw ConfigError("cube header does not match the [radar] section", 1);
}

int run_simulate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_flag) {
    FileConfig cfg = load_config(config_path);
    std::uint64_t seed = seed_flag.value_or(cfg.seed);
    FreqPulseCube cube = synthesize_cube(cfg.params, cfg.targets);
    cube = add_noise(cube, cfg.sigma2, seed);
    if (cfg.domain == 0) {
        write_cube_file(out_path, CubeFile::from(cube, cfg.sigma2));
    } else {
        write_cube_file(out_path, CubeFile::from(range_ifft(cube), cfg.sigma2));
    }
    return 0;
}

int run_detect(const std::string& detector_flag, const std::string& cube_path,
               const std::string& config_path, const std::string& out_path, int threads) {
    FileConfig cfg = load_config(config_path);
    std::string name = detector_flag.empty() ? cfg.detector_name : detector_flag;
    std::optional<DetectorKind> kind = detector_from_name(name);
    if (!kind) throw ConfigError("unknown or missing detector '" + name + "'", 1);
    if (!cfg.has_space) throw ConfigError("missing [space] section", 1);

    CubeFile file = read_cube_file(cube_path);
    check_cube_matches_config(file, cfg.params);
    bool wants_range = *kind == DetectorKind::TdGrft;
    if (file.domain != (wants_range ? 1 : 0))
        throw ConditionViolated(std::string(name) + " needs a " +
                                (wants_range ? "range-pulse" : "freq-pulse") + " cube");

    RangeRoi roi = cfg.roi.value_or(RangeRoi::full(cfg.params));
    SingleScaleSpace single =
        build_single_scale(cfg.params, cfg.order, cfg.bounds, cfg.alpha, roi);
    DetectorOptions opt;
    opt.threads = threads;
    opt.keystone_taps = cfg.keystone_taps;

    double sigma2 = file.sigma2 > 0 ? file.sigma2 : cfg.sigma2;
    auto run = [&](double retain) {
        opt.retain_threshold = retain;
        switch (*kind) {
            case DetectorKind::FdGrft: return fd_grft(file.to_freq_cube(), single, opt);
            case DetectorKind::TdGrft: return td_grft(file.to_range_cube(), single, opt);
            case DetectorKind::KtMfp:
                return kt_mfp(file.to_freq_cube(), build_ambiguity(cfg.params, cfg.bounds[0]),
                              single, opt);
            case DetectorKind::DsGrft:
                return ds_grft(file.to_freq_cube(),
                               build_dual_scale(cfg.params, cfg.order, cfg.bounds, cfg.alpha, roi),
                               opt);
            case DetectorKind::DsKtMfp:
                return ds_kt_mfp(file.to_freq_cube(), build_ambiguity(cfg.params, cfg.bounds[0]),
                                 build_dual_scale(cfg.params, cfg.order, cfg.bounds, cfg.alpha, roi),
                                 opt);
        }
        throw std::logic_error("unreachable");
    };

    double gamma;
    DetectionMap map;
    if (sigma2 > 0) {
        gamma = detection_threshold(cfg.params, sigma2, cfg.pfa);
        map = run(gamma);
    } else {
        // Noiseless input: threshold at half the strongest statistic.
        DetectionMap probe = run(std::numeric_limits<double>::infinity());
        gamma = std::abs(probe.argmax_value) / 2;
        map = run(gamma);
    }
    std::vector<Detection> dets = extract_detections(map, gamma);

    bool kt_family = *kind == DetectorKind::KtMfp || *kind == DetectorKind::DsKtMfp;
    std::ostringstream out;
    out << "statistic,range_m,velocity_mps,accel_mps2";
    if (kt_family) out << ",q,c1_base_mps";
    out << "\n";
    for (const Detection& d : dets) {
        double accel = d.estimate.order() >= 2 ? d.estimate.c[2] : 0.0;
        out << fmt(d.statistic) << ',' << fmt(d.estimate.c[0]) << ',' << fmt(d.estimate.c[1])
            << ',' << fmt(accel);
        if (kt_family) out << ',' << *d.q << ',' << fmt(*d.baseband_velocity);
        out << "\n";
    }
    write_text_file(out_path, out.str());
    return 0;
}

int run_bench_pd(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_flag, int threads) {
    FileConfig cfg = load_config(config_path);
    Scenario sc = cfg.to_scenario();
    if (seed_flag) sc.seed = *seed_flag;
    sc.threads = threads;
    if (sc.detectors.empty()) throw ConfigError("missing [bench] detectors", 1);
    if (sc.snr_db.empty()) throw ConfigError("missing [bench] snr_db", 1);
    if (sc.targets.empty()) throw ConfigError("missing [target] section", 1);

    std::ostringstream out;
    out << "snr_db,detector,pd,ci_lo,ci_hi\n";
    for (const PdCurve& curve : run_pd(sc))
        for (const PdPoint& p : curve.points)
            out << fmt(p.snr_db) << ',' << detector_name(curve.kind) << ',' << fmt(p.pd) << ','
                << fmt(p.ci_lo) << ',' << fmt(p.ci_hi) << "\n";
    write_text_file(out_path, out.str());
    return 0;
}

std::vector<DetectorKind> bench_detectors(const Scenario& sc) {
    if (!sc.detectors.empty()) return sc.detectors;
    return {DetectorKind::TdGrft, DetectorKind::FdGrft, DetectorKind::DsGrft, DetectorKind::KtMfp,
            DetectorKind::DsKtMfp};
}

int run_bench_complexity(const std::string& config_path, const std::string& out_path,
                         int threads) {
    FileConfig cfg = load_config(config_path);
    Scenario sc = cfg.to_scenario();
    sc.threads = threads;
    std::vector<DetectorKind> kinds = bench_detectors(sc);

    std::ostringstream out;
    out << "detector,fc_over_fs,symbolic_total,measured_total\n";
    if (!cfg.fc_over_fs_sweep.empty()) {
        for (double ratio : cfg.fc_over_fs_sweep) {
            RadarParams p = RadarParams::create(ratio * cfg.params.fs, cfg.params.fs,
                                                cfg.params.Br, cfg.params.PRF, cfg.params.M,
                                                cfg.params.K, cfg.params.K_valid);
            Scenario swept = sc;
            swept.params = p;
            ScenarioSpaces sp = build_spaces(swept);
            ComplexityDims dims = complexity_dims(p, sp.single, sp.dual, sp.amb);
            for (DetectorKind k : kinds)
                out << detector_name(k) << ',' << fmt(ratio) << ','
                    << fmt(bo_total(predict_counters(k, dims), dims.M, dims.N0)) << ",\n";
        }
    } else {
        ScenarioSpaces sp = build_spaces(sc);
        ComplexityDims dims = complexity_dims(sc.params, sp.single, sp.dual, sp.amb);
        std::vector<TimingRow> rows;
        if (cfg.measure) {
            Scenario measured = sc;
            measured.detectors = kinds;
            rows = run_timing(measured);
        }
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            double symbolic = bo_total(predict_counters(kinds[i], dims), dims.M, dims.N0);
            out << detector_name(kinds[i]) << ',' << fmt(sc.params.fc / sc.params.fs) << ','
                << fmt(symbolic) << ',';
            if (cfg.measure) out << fmt(bo_total(rows[i].measured, dims.M, dims.N0));
            out << "\n";
        }
    }
    write_text_file(out_path, out.str());
    return 0;
}

int run_bench_timing(const std::string& config_path, const std::string& out_path, int threads) {
    FileConfig cfg = load_config(config_path);
    Scenario sc = cfg.to_scenario();
    sc.threads = threads;
    sc.detectors = bench_detectors(sc);
    std::ostringstream out;
    out << "detector,seconds\n";
    for (const TimingRow& row : run_timing(sc))
        out << detector_name(row.kind) << ',' << fmt(row.seconds) << "\n";
    write_text_file(out_path, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"long-time coherent integration detector toolbox"};
    app.require_subcommand(1);

    std::string config_path, cube_path, out_path, detector;
    std::uint64_t seed_value = 0;
    bool seed_given = false;
    int threads = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_cube) {
        cmd->add_option("--config", config_path, "configuration file")->required();
        cmd->add_option("--out", out_path, "output file")->required();
        if (needs_cube) cmd->add_option("--cube", cube_path, "cube file")->required();
        cmd->add_option("--threads", threads, "worker threads (0 = auto / LTCI_THREADS)");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "synthesize a cube file");
    add_common(simulate, false);
    simulate->add_option("--seed", seed_value, "noise seed")->each([&](const std::string&) {
        seed_given = true;
    });

    CLI::App* detect = app.add_subcommand("detect", "run one detector over a cube");
    add_common(detect, true);
    detect->add_option("--detector", detector,
                       "fd-grft | td-grft | kt-mfp | ds-grft | ds-kt-mfp");

    CLI::App* bench = app.add_subcommand("bench", "benchmark harness");
    bench->require_subcommand(1);
    CLI::App* pd = bench->add_subcommand("pd", "detection-probability curves");
    add_common(pd, false);
    pd->add_option("--seed", seed_value, "trial seed")->each([&](const std::string&) {
        seed_given = true;
    });
    CLI::App* complexity = bench->add_subcommand("complexity", "operation-count tables");
    add_common(complexity, false);
    CLI::App* timing = bench->add_subcommand("timing", "wall-clock per detector");
    add_common(timing, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::optional<std::uint64_t> seed_flag;
    if (seed_given) seed_flag = seed_value;

    try {
        if (simulate->parsed()) return run_simulate(config_path, out_path, seed_flag);
        if (detect->parsed()) return run_detect(detector, cube_path, config_path, out_path, threads);
        if (pd->parsed()) return run_bench_pd(config_path, out_path, seed_flag, threads);
        if (complexity->parsed()) return run_bench_complexity(config_path, out_path, threads);
        if (timing->parsed()) return run_bench_timing(config_path, out_path, threads);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const ConditionViolated& e) {
        std::fprintf(stderr, "precondition violated: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
