#include "ltci/run_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ltci {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    int col = 0;      // 1-based column of the value
    bool used = false;
};

struct Section {
    std::string name;
    int line = 0;
    std::map<std::string, Entry> entries;
};

const std::set<std::string> kSections = {"radar", "target", "space", "detector", "bench"};

const std::map<std::string, std::set<std::string>> kKeys = {
    {"radar", {"fc", "fs", "br", "prf", "pulses", "freq_bins", "k_valid", "domain"}},
    {"target",
     {"range_m", "velocity_mps", "accel_mps2", "jerk_mps3", "amplitude_re", "amplitude_im"}},
    {"space",
     {"order", "velocity_min", "velocity_max", "accel_min", "accel_max", "jerk_min", "jerk_max",
      "alpha", "roi_first", "roi_last"}},
    {"detector", {"name", "pfa", "sigma2", "keystone_taps"}},
    {"bench", {"snr_db", "trials", "seed", "detectors", "measure", "fc_over_fs_sweep"}},
};

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const Entry& e, const std::string& key) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError("invalid number for '" + key + "'", e.line, e.col);
    return v;
}

long long parse_int(const Entry& e, const std::string& key) {
    const char* begin = e.value.c_str();
    char* end = nullptr;
    long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw ConfigError("invalid integer for '" + key + "'", e.line, e.col);
    return v;
}

bool parse_bool(const Entry& e, const std::string& key) {
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    throw ConfigError("invalid boolean for '" + key + "'", e.line, e.col);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

std::vector<double> parse_double_list(const Entry& e, const std::string& key) {
    std::vector<double> out;
    for (const std::string& item : split_list(e.value)) {
        Entry tmp{item, e.line, e.col, false};
        out.push_back(parse_double(tmp, key));
    }
    if (out.empty()) throw ConfigError("empty list for '" + key + "'", e.line, e.col);
    return out;
}

class SectionReader {
public:
    explicit SectionReader(Section& s) : s_(s) {}

    bool has(const std::string& key) const { return s_.entries.count(key) > 0; }
    const Entry& require(const std::string& key) const {
        auto it = s_.entries.find(key);
        if (it == s_.entries.end())
            throw ConfigError("section [" + s_.name + "] is missing required key '" + key + "'",
                              s_.line);
        it->second.used = true;
        return it->second;
    }
    const Entry* optional(const std::string& key) const {
        auto it = s_.entries.find(key);
        if (it == s_.entries.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

private:
    Section& s_;
};

}  // namespace

FileConfig parse_config_text(const std::string& text) {
    std::vector<Section> sections;
    Section* current = nullptr;

    std::stringstream ss(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(ss, raw)) {
        ++lineno;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError("unterminated section header", lineno, 1);
            std::string name = trim(t.substr(1, t.size() - 2));
            if (!kSections.count(name)) throw ConfigError("unknown section [" + name + "]", lineno, 1);
            sections.push_back(Section{name, lineno, {}});
            current = &sections.back();
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno, 1);
        if (!current) throw ConfigError("key outside any [section]", lineno, 1);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        int vcol = static_cast<int>(eq + 2);
        if (key.empty()) throw ConfigError("empty key", lineno, 1);
        if (!kKeys.at(current->name).count(key))
            throw ConfigError("unknown key '" + key + "' in section [" + current->name + "]",
                              lineno, 1);
        if (current->entries.count(key))
            throw ConfigError("duplicate key '" + key + "'", lineno, 1);
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", lineno, vcol);
        current->entries[key] = Entry{value, lineno, vcol, false};
    }

    FileConfig cfg;
    Section* radar = nullptr;
    Section* space = nullptr;
    Section* detector = nullptr;
    Section* bench = nullptr;
    for (Section& s : sections) {
        if (s.name == "radar") {
            if (radar) throw ConfigError("duplicate [radar] section", s.line);
            radar = &s;
        } else if (s.name == "space") {
            if (space) throw ConfigError("duplicate [space] section", s.line);
            space = &s;
        } else if (s.name == "detector") {
            if (detector) throw ConfigError("duplicate [detector] section", s.line);
            detector = &s;
        } else if (s.name == "bench") {
            if (bench) throw ConfigError("duplicate [bench] section", s.line);
            bench = &s;
        }
    }
    if (!radar) throw ConfigError("missing [radar] section", 1);

    {
        SectionReader r(*radar);
        double fc = parse_double(r.require("fc"), "fc");
        double fs = parse_double(r.require("fs"), "fs");
        double br = parse_double(r.require("br"), "br");
        double prf = parse_double(r.require("prf"), "prf");
        int pulses = static_cast<int>(parse_int(r.require("pulses"), "pulses"));
        int bins = static_cast<int>(parse_int(r.require("freq_bins"), "freq_bins"));
        int k_valid = 0;
        if (const Entry* e = r.optional("k_valid"))
            k_valid = static_cast<int>(parse_int(*e, "k_valid"));
        try {
            cfg.params = RadarParams::create(fc, fs, br, prf, pulses, bins, k_valid);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(std::string("invalid [radar] parameters: ") + ex.what(), radar->line);
        }
        if (const Entry* e = r.optional("domain")) {
            if (e->value == "freq") cfg.domain = 0;
            else if (e->value == "range") cfg.domain = 1;
            else throw ConfigError("domain must be 'freq' or 'range'", e->line, e->col);
        }
    }

    for (Section& s : sections) {
        if (s.name != "target") continue;
        SectionReader r(s);
        Target t;
        double re = 1.0, im = 0.0;
        if (const Entry* e = r.optional("amplitude_re")) re = parse_double(*e, "amplitude_re");
        if (const Entry* e = r.optional("amplitude_im")) im = parse_double(*e, "amplitude_im");
        t.amplitude = cplx(re, im);
        std::vector<double> c = {parse_double(r.require("range_m"), "range_m")};
        c.push_back(r.has("velocity_mps") ? parse_double(*r.optional("velocity_mps"), "velocity_mps") : 0.0);
        c.push_back(r.has("accel_mps2") ? parse_double(*r.optional("accel_mps2"), "accel_mps2") : 0.0);
        if (r.has("jerk_mps3")) c.push_back(parse_double(*r.optional("jerk_mps3"), "jerk_mps3"));
        t.motion = MotionParams(c);
        cfg.targets.push_back(t);
    }

    if (space) {
        SectionReader r(*space);
        cfg.has_space = true;
        cfg.order = static_cast<int>(parse_int(r.require("order"), "order"));
        if (cfg.order < 1 || cfg.order > 3)
            throw ConfigError("order must be 1, 2 or 3", space->line);
        cfg.bounds.push_back({parse_double(r.require("velocity_min"), "velocity_min"),
                              parse_double(r.require("velocity_max"), "velocity_max")});
        if (cfg.order >= 2)
            cfg.bounds.push_back({parse_double(r.require("accel_min"), "accel_min"),
                                  parse_double(r.require("accel_max"), "accel_max")});
        if (cfg.order >= 3)
            cfg.bounds.push_back({parse_double(r.require("jerk_min"), "jerk_min"),
                                  parse_double(r.require("jerk_max"), "jerk_max")});
        if (const Entry* e = r.optional("alpha")) {
            cfg.alpha = parse_double_list(*e, "alpha");
            if (static_cast<int>(cfg.alpha.size()) != cfg.order)
                throw ConfigError("alpha needs one weight per order", e->line, e->col);
        } else {
            cfg.alpha.assign(cfg.order, 1.0 / cfg.order);
        }
        const Entry* rf = r.optional("roi_first");
        const Entry* rl = r.optional("roi_last");
        if ((rf == nullptr) != (rl == nullptr))
            throw ConfigError("roi_first and roi_last must be given together", space->line);
        if (rf) {
            RangeRoi roi{static_cast<int>(parse_int(*rf, "roi_first")),
                         static_cast<int>(parse_int(*rl, "roi_last"))};
            if (roi.first < 0 || roi.last >= cfg.params.n0() || roi.count() <= 0)
                throw ConfigError("roi out of range", rf->line, rf->col);
            cfg.roi = roi;
        }
    }

    if (detector) {
        SectionReader r(*detector);
        if (const Entry* e = r.optional("name")) cfg.detector_name = e->value;
        if (const Entry* e = r.optional("pfa")) {
            cfg.pfa = parse_double(*e, "pfa");
            if (!(cfg.pfa > 0.0) || !(cfg.pfa < 1.0))
                throw ConfigError("pfa must be in (0, 1)", e->line, e->col);
        }
        if (const Entry* e = r.optional("sigma2")) {
            cfg.sigma2 = parse_double(*e, "sigma2");
            if (cfg.sigma2 < 0) throw ConfigError("sigma2 must be >= 0", e->line, e->col);
        }
        if (const Entry* e = r.optional("keystone_taps"))
            cfg.keystone_taps = static_cast<int>(parse_int(*e, "keystone_taps"));
    }

    if (bench) {
        SectionReader r(*bench);
        if (const Entry* e = r.optional("snr_db")) cfg.snr_db = parse_double_list(*e, "snr_db");
        if (const Entry* e = r.optional("trials")) {
            cfg.trials = static_cast<int>(parse_int(*e, "trials"));
            if (cfg.trials < 1) throw ConfigError("trials must be >= 1", e->line, e->col);
        }
        if (const Entry* e = r.optional("seed"))
            cfg.seed = static_cast<std::uint64_t>(parse_int(*e, "seed"));
        if (const Entry* e = r.optional("detectors")) {
            cfg.bench_detectors = split_list(e->value);
            for (const std::string& name : cfg.bench_detectors)
                if (!detector_from_name(name))
                    throw ConfigError("unknown detector '" + name + "'", e->line, e->col);
        }
        if (const Entry* e = r.optional("measure")) cfg.measure = parse_bool(*e, "measure");
        if (const Entry* e = r.optional("fc_over_fs_sweep"))
            cfg.fc_over_fs_sweep = parse_double_list(*e, "fc_over_fs_sweep");
    }

    return cfg;
}

FileConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

Scenario FileConfig::to_scenario() const {
    if (!has_space) throw ConfigError("missing [space] section", 1);
    Scenario sc;
    sc.params = params;
    sc.targets = targets;
    sc.snr_db = snr_db;
    sc.trials = trials;
    sc.pfa = pfa;
    sc.sigma2 = sigma2 > 0 ? sigma2 : 1.0;
    sc.seed = seed;
    for (const std::string& name : bench_detectors) sc.detectors.push_back(*detector_from_name(name));
    sc.P = order;
    sc.bounds = bounds;
    sc.alpha = alpha;
    sc.roi = roi.value_or(RangeRoi::full(params));
    sc.keystone_taps = keystone_taps;
    return sc;
}

}  // namespace ltci
