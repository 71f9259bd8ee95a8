#pragma once

#include <cmath>
#include <vector>

namespace pmbo {

/// A point in m-dimensional space. Optimizers operate on the unit cube [-1,1]^m.
using Point = std::vector<double>;

inline bool in_unit_cube(const Point& x) {
    for (double v : x) {
        if (!(v >= -1.0 && v <= 1.0)) return false;
    }
    return true;
}

inline void clamp_to_unit_cube(Point& x) {
    for (double& v : x) {
        if (v < -1.0) v = -1.0;
        if (v > 1.0) v = 1.0;
    }
}

inline double squared_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace pmbo
