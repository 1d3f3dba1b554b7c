#pragma once

#include <algorithm>
#include <cmath>

namespace fdv {

// Library-wide comparison defaults: relative 1e-9 with absolute floor 1e-12.
struct Tolerance {
    double relative = 1e-9;
    double absolute = 1e-12;

    double margin(double a, double b) const {
        return std::max(absolute, relative * std::max({std::fabs(a), std::fabs(b), 1.0}));
    }
    bool leq(double lhs, double rhs) const { return lhs <= rhs + margin(lhs, rhs); }
    bool close(double a, double b) const { return std::fabs(a - b) <= margin(a, b); }
};

inline constexpr double kDefaultRelTol = 1e-9;
inline constexpr double kDefaultAbsTol = 1e-12;

} // namespace fdv
