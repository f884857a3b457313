#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ltci/motion.hpp"
#include "ltci/search_space.hpp"

namespace ltci {

enum class DetectorKind { FdGrft, TdGrft, KtMfp, DsGrft, DsKtMfp };

const char* detector_name(DetectorKind kind);
std::optional<DetectorKind> detector_from_name(const std::string& name);

// Tallies of the four basic operations. The unit costs are
// KT: M^2*N0, MF: M, IFFT: 0.5*N0*log2(N0), FFT: 0.5*M*log2(M);
// each detector increments exactly the operations its complexity row counts.
struct OpCounters {
    std::uint64_t kt = 0;
    std::uint64_t mf = 0;
    std::uint64_t ifft = 0;
    std::uint64_t fft = 0;

    OpCounters& operator+=(const OpCounters& o) {
        kt += o.kt;
        mf += o.mf;
        ifft += o.ifft;
        fft += o.fft;
        return *this;
    }
    bool operator==(const OpCounters&) const = default;
};

struct AxisDesc {
    enum class Role { Range, Velocity, Higher, Doppler, Coarse, Fine, Folding };
    Role role;
    int order;  // motion order p for Velocity/Higher/Coarse/Fine, else 0
    int size;
};

// Statistic surface of one detector run. Cells above the retention
// threshold are kept as (flat index, complex value) pairs sorted by index;
// the full complex map is stored only when requested (small instances).
// Axes are listed slowest-varying first; the flat index is mixed-radix.
struct DetectionMap {
    DetectorKind kind = DetectorKind::FdGrft;
    RadarParams params;
    std::vector<AxisDesc> axes;
    OpCounters counters;

    double retain_threshold = 0.0;
    std::vector<std::pair<std::uint64_t, cplx>> candidates;
    bool dense_stored = false;
    std::vector<cplx> dense;

    std::uint64_t argmax = 0;
    cplx argmax_value{0.0, 0.0};

    std::optional<SingleScaleSpace> single;
    std::optional<DualScaleSpace> dual;
    std::optional<AmbiguitySpace> amb;

    // Doppler axis of dual-scale maps covers centered bins
    // [doppler_first, doppler_first + doppler_count); full axis otherwise.
    int doppler_first = 0;

    std::uint64_t cell_count() const;
    std::vector<int> decode(std::uint64_t idx) const;
    std::uint64_t encode(const std::vector<int>& cell) const;
    cplx dense_at(const std::vector<int>& cell) const;
};

struct Detection {
    MotionParams estimate;
    double statistic = 0.0;
    std::vector<int> cell;
    std::optional<int> q;
    std::optional<double> baseband_velocity;
};

// Per-axis quantization of a detector's estimates, used to express
// "within one cell" tolerances.
struct CellSizes {
    double range = 0.0;
    double velocity = 0.0;
    double accel = 0.0;
};

CellSizes estimate_cell_sizes(const DetectionMap& map);

// Motion estimate for one cell of the map, following each detector's
// recomposition rule.
Detection detection_from_cell(const DetectionMap& map, const std::vector<int>& cell, cplx value);

// Cells above gamma that are local maxima over the range/Doppler(velocity)/
// order-2 axes (26-neighborhood, fewer when an axis is missing), recomposed
// into motion estimates, near-duplicates merged (strongest kept), sorted by
// descending statistic with ascending cell index as the tie-break.
std::vector<Detection> extract_detections(const DetectionMap& map, double gamma);

}  // namespace ltci
