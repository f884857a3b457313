#pragma once

#include <cmath>
#include <vector>

#include "ltci/common.hpp"

namespace ltci {

// Polynomial slant-range model R(t) = c0 + sum_{p=1..P} c_p t^p.
// c[0] is meters, c[p] is m/s^p.
struct MotionParams {
    std::vector<double> c;

    MotionParams() = default;
    explicit MotionParams(std::vector<double> coeffs) : c(std::move(coeffs)) {}

    int order() const { return static_cast<int>(c.size()) - 1; }

    double slant_range(double t) const {
        double r = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) r = r * t + c[i];
        return r;
    }

    bool finite() const {
        for (double v : c)
            if (!std::isfinite(v)) return false;
        return !c.empty();
    }
};

struct Target {
    cplx amplitude;       // complex attenuation A1 in the frequency domain
    MotionParams motion;
};

}  // namespace ltci
