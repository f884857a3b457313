#include "ltci/detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace ltci {

const char* detector_name(DetectorKind kind) {
    switch (kind) {
        case DetectorKind::FdGrft: return "fd-grft";
        case DetectorKind::TdGrft: return "td-grft";
        case DetectorKind::KtMfp: return "kt-mfp";
        case DetectorKind::DsGrft: return "ds-grft";
        case DetectorKind::DsKtMfp: return "ds-kt-mfp";
    }
    return "?";
}

std::optional<DetectorKind> detector_from_name(const std::string& name) {
    for (DetectorKind k : {DetectorKind::FdGrft, DetectorKind::TdGrft, DetectorKind::KtMfp,
                           DetectorKind::DsGrft, DetectorKind::DsKtMfp})
        if (name == detector_name(k)) return k;
    return std::nullopt;
}

std::uint64_t DetectionMap::cell_count() const {
    std::uint64_t n = 1;
    for (const AxisDesc& a : axes) n *= static_cast<std::uint64_t>(a.size);
    return n;
}

std::vector<int> DetectionMap::decode(std::uint64_t idx) const {
    std::vector<int> cell(axes.size());
    for (std::size_t i = axes.size(); i-- > 0;) {
        cell[i] = static_cast<int>(idx % static_cast<std::uint64_t>(axes[i].size));
        idx /= static_cast<std::uint64_t>(axes[i].size);
    }
    return cell;
}

std::uint64_t DetectionMap::encode(const std::vector<int>& cell) const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < axes.size(); ++i)
        idx = idx * static_cast<std::uint64_t>(axes[i].size) + static_cast<std::uint64_t>(cell[i]);
    return idx;
}

cplx DetectionMap::dense_at(const std::vector<int>& cell) const {
    if (!dense_stored) throw std::logic_error("DetectionMap: dense storage not kept");
    return dense[encode(cell)];
}

CellSizes estimate_cell_sizes(const DetectionMap& map) {
    CellSizes s;
    s.range = map.params.delta_R();
    double doppler_bin = map.params.Va() / map.params.M;
    switch (map.kind) {
        case DetectorKind::FdGrft:
        case DetectorKind::TdGrft:
            s.velocity = map.single->c[0].step;
            if (map.single->order() >= 2) s.accel = map.single->c[1].step;
            break;
        case DetectorKind::KtMfp:
            s.velocity = doppler_bin;
            s.accel = map.single->c[1].step;
            break;
        case DetectorKind::DsGrft:
            s.velocity = doppler_bin / map.dual->kappa;
            if (map.dual->order() >= 2) s.accel = map.dual->fine[1].step;
            break;
        case DetectorKind::DsKtMfp:
            s.velocity = doppler_bin;
            s.accel = map.dual->fine[1].step;
            break;
    }
    return s;
}

namespace {

int axis_index(const DetectionMap& map, AxisDesc::Role role, int order = 0) {
    for (std::size_t i = 0; i < map.axes.size(); ++i)
        if (map.axes[i].role == role && map.axes[i].order == order) return static_cast<int>(i);
    return -1;
}

}  // namespace

Detection detection_from_cell(const DetectionMap& map, const std::vector<int>& cell, cplx value) {
    Detection det;
    det.cell = cell;
    det.statistic = std::abs(value);
    const RadarParams& p = map.params;

    int range_axis = axis_index(map, AxisDesc::Role::Range);
    int n = cell[range_axis] + (map.dual ? map.dual->roi.first : map.single->roi.first);

    switch (map.kind) {
        case DetectorKind::FdGrft:
        case DetectorKind::TdGrft: {
            const SingleScaleSpace& ss = *map.single;
            det.estimate.c.resize(ss.order() + 1);
            det.estimate.c[0] = n * p.delta_R();
            for (int ord = 1; ord <= ss.order(); ++ord) {
                int ai = axis_index(map, ord == 1 ? AxisDesc::Role::Velocity : AxisDesc::Role::Higher, ord);
                det.estimate.c[ord] = ss.c[ord - 1].value(cell[ai]);
            }
            break;
        }
        case DetectorKind::KtMfp: {
            const SingleScaleSpace& ss = *map.single;
            int jq = cell[axis_index(map, AxisDesc::Role::Folding)];
            int jd = cell[axis_index(map, AxisDesc::Role::Doppler)];
            double vd = (static_cast<double>(jd) - p.M / 2.0) * p.Va() / p.M;
            int q = map.amb->q_of(jq);
            det.estimate.c = {n * p.delta_R(), q * p.Va() + vd,
                              ss.c[1].value(cell[axis_index(map, AxisDesc::Role::Higher, 2)])};
            det.q = q;
            det.baseband_velocity = vd;
            break;
        }
        case DetectorKind::DsGrft: {
            const DualScaleSpace& ds = *map.dual;
            int jd = cell[axis_index(map, AxisDesc::Role::Doppler)];
            double vd = (static_cast<double>(map.doppler_first + jd) - p.M / 2.0) * p.Va() / p.M;
            det.estimate.c.resize(ds.order() + 1);
            det.estimate.c[0] = n * p.delta_R();
            det.estimate.c[1] =
                ds.coarse[0].value(cell[axis_index(map, AxisDesc::Role::Coarse, 1)]) + vd / ds.kappa;
            // Fine grids store unscaled values; the search compensates with
            // kappa*value and the estimate divides back, so they cancel.
            for (int ord = 2; ord <= ds.order(); ++ord) {
                int ci = axis_index(map, AxisDesc::Role::Coarse, ord);
                int fi = axis_index(map, AxisDesc::Role::Fine, ord);
                det.estimate.c[ord] = ds.coarse[ord - 1].value(cell[ci]) + ds.fine[ord - 1].value(cell[fi]);
            }
            break;
        }
        case DetectorKind::DsKtMfp: {
            const DualScaleSpace& ds = *map.dual;
            int jq = cell[axis_index(map, AxisDesc::Role::Folding)];
            int jd = cell[axis_index(map, AxisDesc::Role::Doppler)];
            double vd = (static_cast<double>(jd) - p.M / 2.0) * p.Va() / p.M;
            int q = map.amb->q_of(jq);
            det.estimate.c = {n * p.delta_R(), q * p.Va() + vd,
                              ds.coarse[1].value(cell[axis_index(map, AxisDesc::Role::Coarse, 2)]) +
                                  ds.fine[1].value(cell[axis_index(map, AxisDesc::Role::Fine, 2)])};
            det.q = q;
            det.baseband_velocity = vd;
            break;
        }
    }
    return det;
}

std::vector<Detection> extract_detections(const DetectionMap& map, double gamma) {
    if (gamma < 0) throw std::invalid_argument("extract_detections: gamma must be >= 0");
    if (gamma < map.retain_threshold)
        throw std::invalid_argument("extract_detections: gamma below the map's retention threshold");

    // Local-max test only needs neighbors above gamma: anything dropped by
    // retention is below the candidate under test.
    std::unordered_map<std::uint64_t, double> mag;
    mag.reserve(map.candidates.size() * 2);
    for (const auto& [idx, val] : map.candidates) mag.emplace(idx, std::abs(val));

    std::vector<int> local_axes;
    for (std::size_t i = 0; i < map.axes.size(); ++i) {
        AxisDesc::Role r = map.axes[i].role;
        bool local = r == AxisDesc::Role::Range || r == AxisDesc::Role::Doppler ||
                     r == AxisDesc::Role::Velocity ||
                     (r == AxisDesc::Role::Higher && map.axes[i].order == 2) ||
                     (r == AxisDesc::Role::Fine && map.axes[i].order == 2);
        if (local) local_axes.push_back(static_cast<int>(i));
    }

    std::vector<Detection> raw;
    for (const auto& [idx, val] : map.candidates) {
        double m = std::abs(val);
        if (!(m > gamma)) continue;
        std::vector<int> cell = map.decode(idx);
        bool is_max = true;
        std::vector<int> nb = cell;
        int L = static_cast<int>(local_axes.size());
        int total = 1;
        for (int i = 0; i < L; ++i) total *= 3;
        for (int code = 0; code < total && is_max; ++code) {
            int c = code;
            bool center = true;
            bool valid = true;
            for (int i = 0; i < L; ++i) {
                int step = c % 3 - 1;
                c /= 3;
                int ai = local_axes[i];
                int v = cell[ai] + step;
                if (step != 0) center = false;
                if (v < 0 || v >= map.axes[ai].size) valid = false;
                nb[ai] = v;
            }
            if (center || !valid) continue;
            auto it = mag.find(map.encode(nb));
            if (it == mag.end()) continue;
            if (it->second > m || (it->second == m && map.encode(nb) < idx)) is_max = false;
        }
        if (is_max) raw.push_back(detection_from_cell(map, cell, val));
    }

    // Merge near-duplicates: one scatterer surfaces as a chain of local
    // maxima (coarse-cell seams, and the velocity/acceleration coupling
    // ridge whose members step one Doppler bin per two fine-acceleration
    // cells). Cluster by range and velocity proximity to any existing
    // member, chaining along the ridge; acceleration deliberately does not
    // separate clusters. The strongest member represents its cluster.
    CellSizes cs = estimate_cell_sizes(map);
    std::sort(raw.begin(), raw.end(), [&](const Detection& a, const Detection& b) {
        if (a.statistic != b.statistic) return a.statistic > b.statistic;
        return map.encode(a.cell) < map.encode(b.cell);
    });
    std::vector<Detection> out;                      // cluster representatives
    std::vector<std::vector<Detection>> clusters;
    for (const Detection& d : raw) {
        bool joined = false;
        for (std::size_t c = 0; c < clusters.size() && !joined; ++c) {
            for (const Detection& member : clusters[c]) {
                bool near = std::abs(d.estimate.c[0] - member.estimate.c[0]) <= cs.range * 1.01;
                if (near && d.estimate.order() >= 1)
                    near = std::abs(d.estimate.c[1] - member.estimate.c[1]) <=
                           cs.velocity * 2.01;
                if (near) {
                    clusters[c].push_back(d);
                    joined = true;
                    break;
                }
            }
        }
        if (!joined) {
            clusters.push_back({d});
            out.push_back(d);  // raw is sorted, so the first member is strongest
        }
    }
    return out;
}

}  // namespace ltci
