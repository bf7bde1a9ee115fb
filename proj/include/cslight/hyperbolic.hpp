#pragma once

#include <cmath>

namespace cslight::hyper {

// Hyperbolic composites that are 0/0 at r = 0; series below r = 1e-4.

inline double sinhc(double r) {  // sinh(r)/r
    if (r < 1e-4) {
        const double r2 = r * r;
        return 1.0 + r2 / 6.0 + r2 * r2 / 120.0;
    }
    return std::sinh(r) / r;
}

inline double cosh1_over_r(double r) {  // (cosh r - 1)/r
    if (r < 1e-4) {
        const double r2 = r * r;
        return r / 2.0 + r * r2 / 24.0 + r * r2 * r2 / 720.0;
    }
    return (std::cosh(r) - 1.0) / r;
}

inline double sinh_rem_over_r2(double r) {  // (sinh r - r)/r^2
    if (r < 1e-4) {
        const double r2 = r * r;
        return r / 6.0 + r * r2 / 120.0 + r * r2 * r2 / 5040.0;
    }
    return (std::sinh(r) - r) / (r * r);
}

}  // namespace cslight::hyper
