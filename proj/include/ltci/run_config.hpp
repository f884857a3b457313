#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ltci/bench.hpp"
#include "ltci/motion.hpp"
#include "ltci/radar_params.hpp"
#include "ltci/search_space.hpp"

namespace ltci {

// Line-oriented key = value configuration with [section] headers. Sections:
// [radar], [target] (repeatable), [space], [detector], [bench]. '#' starts a
// comment. Unknown sections or keys are errors carrying line/column.
struct FileConfig {
    RadarParams params;
    std::uint8_t domain = 0;  // 0 freq, 1 range (simulate output)

    std::vector<Target> targets;

    bool has_space = false;
    int order = 2;
    std::vector<Bounds> bounds;
    std::vector<double> alpha;
    std::optional<RangeRoi> roi;

    std::string detector_name;
    double pfa = 1e-4;
    double sigma2 = 0.0;
    int keystone_taps = 8;

    std::vector<double> snr_db;
    int trials = 200;
    std::uint64_t seed = 0;
    std::vector<std::string> bench_detectors;
    bool measure = true;
    std::vector<double> fc_over_fs_sweep;

    // Scenario view for the bench entry points; requires [space].
    Scenario to_scenario() const;
};

FileConfig parse_config_text(const std::string& text);
FileConfig load_config(const std::string& path);

}  // namespace ltci
