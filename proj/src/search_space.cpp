#include "ltci/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltci {

int Grid::nearest_index(double x) const {
    if (count <= 1) return 0;
    int i = static_cast<int>(std::lround((x - start) / step));
    return std::clamp(i, 0, count - 1);
}

StepSizes step_sizes(const RadarParams& params, int P, const std::vector<double>& alpha) {
    params.validate();
    if (P < 1) throw std::invalid_argument("step_sizes: P must be >= 1");
    if (!(params.T() > 0)) throw std::invalid_argument("step_sizes: T must be positive");
    if (static_cast<int>(alpha.size()) != P)
        throw std::invalid_argument("step_sizes: alpha must have P entries");
    double sum = 0;
    for (double a : alpha) {
        if (!(a > 0.0) || a > 1.0)
            throw std::invalid_argument("step_sizes: each alpha_p must be in (0, 1]");
        sum += a;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("step_sizes: alpha weights must sum to 1");

    StepSizes s;
    s.alpha = alpha;
    s.rm.resize(P);
    s.dfm.resize(P);
    double tp = 1.0;
    for (int p = 1; p <= P; ++p) {
        tp *= params.T();
        s.rm[p - 1] = alpha[p - 1] * kSpeedOfLight / (2.0 * params.fs * tp);
        s.dfm[p - 1] = alpha[p - 1] * kSpeedOfLight / (2.0 * params.fc * tp);
    }
    return s;
}

std::size_t SingleScaleSpace::cells() const {
    std::size_t n = 1;
    for (const Grid& g : c) n *= static_cast<std::size_t>(g.count);
    return n;
}

namespace {

Grid span_grid(const Bounds& b, double step, bool cover) {
    if (!(b.hi >= b.lo)) throw std::invalid_argument("grid bounds: min must be <= max");
    if (!(step > 0)) throw std::invalid_argument("grid step must be positive");
    Grid g;
    g.start = b.lo;
    g.step = step;
    double span = b.hi - b.lo;
    // cover=true sizes the grid so every in-bounds value rounds to a point
    // within half a step (coarse grids); otherwise the grid simply fills the
    // span (fine/single-scale grids).
    g.count = cover ? std::max(0, static_cast<int>(std::ceil(span / step - 0.5 - 1e-9))) + 1
                    : static_cast<int>(std::floor(span / step + 1e-9)) + 1;
    if (g.count < 1) throw std::invalid_argument("grid is empty");
    return g;
}

}  // namespace

SingleScaleSpace build_single_scale(const RadarParams& params, int P,
                                    const std::vector<Bounds>& bounds,
                                    const std::vector<double>& alpha, RangeRoi roi) {
    if (static_cast<int>(bounds.size()) != P)
        throw std::invalid_argument("build_single_scale: bounds must have P entries");
    SingleScaleSpace s;
    s.params = params;
    s.steps = step_sizes(params, P, alpha);
    s.roi = roi;
    for (int p = 1; p <= P; ++p) s.c.push_back(span_grid(bounds[p - 1], s.steps.dfm[p - 1], false));
    return s;
}

DualScaleSpace build_dual_scale(const RadarParams& params, int P, const std::vector<Bounds>& bounds,
                                const std::vector<double>& alpha, RangeRoi roi) {
    if (static_cast<int>(bounds.size()) != P)
        throw std::invalid_argument("build_dual_scale: bounds must have P entries");
    double ratio = (params.fc / params.fs) / static_cast<double>(params.M);
    if (ratio > 1.0)
        throw ConditionViolated("dual-scale space requires (fc/fs)/M <= 1, got " +
                                std::to_string(ratio));
    DualScaleSpace s;
    s.params = params;
    s.steps = step_sizes(params, P, alpha);
    s.kappa = 1.0 - params.Br / (2.0 * params.fc);
    s.roi = roi;
    for (int p = 1; p <= P; ++p) {
        s.coarse.push_back(span_grid(bounds[p - 1], s.steps.rm[p - 1], true));
        // Fine grid spans one coarse step, symmetric about zero; for an even
        // integer rm/dfm ratio both endpoints +-rm/2 land exactly on it.
        double rm = s.steps.rm[p - 1];
        double dfm = s.steps.dfm[p - 1];
        int half = static_cast<int>(std::floor(rm / dfm / 2.0 + 1e-9));
        Grid fine;
        fine.step = dfm;
        fine.start = -dfm * static_cast<double>(half);
        fine.count = 2 * half + 1;
        s.fine.push_back(fine);
    }
    return s;
}

AmbiguitySpace build_ambiguity(const RadarParams& params, Bounds velocity) {
    AmbiguitySpace a;
    a.q_min = split_velocity(velocity.lo, params).q;
    a.q_max = split_velocity(velocity.hi, params).q;
    return a;
}

DualScaleDecomposition decompose(const MotionParams& c_true, const DualScaleSpace& space) {
    int P = space.order();
    if (c_true.order() < P) throw std::invalid_argument("decompose: motion order too small");
    DualScaleDecomposition d;
    d.coarse.resize(P);
    d.fine.resize(P);
    for (int p = 1; p <= P; ++p) {
        const Grid& cg = space.coarse[p - 1];
        double v = c_true.c[p];
        if (v < cg.start - cg.step / 2 || v > cg.back() + cg.step / 2)
            throw std::invalid_argument("decompose: parameter outside the search bounds");
        int ci = cg.nearest_index(v);
        d.coarse[p - 1] = cg.value(ci);
        const Grid& fg = space.fine[p - 1];
        d.fine[p - 1] = fg.value(fg.nearest_index(v - d.coarse[p - 1]));
    }
    return d;
}

MotionParams recompose(const std::vector<double>& coarse, const std::vector<double>& fine_scaled,
                       const DualScaleSpace& space, int range_bin) {
    if (coarse.size() != fine_scaled.size())
        throw std::invalid_argument("recompose: coarse/fine size mismatch");
    MotionParams m;
    m.c.resize(coarse.size() + 1);
    m.c[0] = static_cast<double>(range_bin) * space.params.delta_R();
    for (std::size_t i = 0; i < coarse.size(); ++i)
        m.c[i + 1] = coarse[i] + fine_scaled[i] / space.kappa;
    return m;
}

VelocitySplit split_velocity(double c1, const RadarParams& params) {
    double va = params.Va();
    // Half-open convention: base in [-Va/2, Va/2), so c1 = Va/2 maps to q=1.
    int q = static_cast<int>(std::floor(c1 / va + 0.5));
    VelocitySplit s;
    s.q = q;
    s.base = c1 - static_cast<double>(q) * va;
    return s;
}

}  // namespace ltci
