#pragma once

#include <cmath>
#include <string>

#include "oedcalib/errors.hpp"

namespace oedcalib {

/// Closed interval [lo, hi] with lo < hi, both finite. Holds design-space
/// bounds on either the response or the dose scale.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw DomainError("Interval: endpoints must be finite");
        if (!(lo < hi))
            throw DomainError("Interval: need lo < hi, got [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    }

    double length() const { return hi - lo; }

    bool contains(double x, double slack = 0.0) const {
        return x >= lo - slack && x <= hi + slack;
    }

    double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }

    /// Affine map of t in [0,1] onto the interval.
    double lerp(double t) const { return lo + t * (hi - lo); }
};

}  // namespace oedcalib
