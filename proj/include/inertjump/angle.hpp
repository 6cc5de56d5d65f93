#pragma once

#include <cmath>

namespace inertjump {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Principal argument: maps y to the representative of y mod 2pi in (-pi, pi],
// with the -pi boundary sent to +pi.  Built on std::remainder, which is exact,
// so wrap_angle(y + 2pi) == wrap_angle(y) bit-for-bit whenever the addition
// y + 2pi itself is exact.
inline double wrap_angle(double y) {
    double t = std::remainder(y, kTwoPi);  // in [-pi, pi]
    if (t <= -kPi) t += kTwoPi;
    return t;
}

// Winding count of the reduction performed by wrap_angle: y ~= wrap_angle(y) + 2pi * n.
inline long long wrap_winding(double y) {
    const double t = std::remainder(y, kTwoPi);
    long long n = std::llround((y - t) / kTwoPi);
    if (t <= -kPi) --n;  // the boundary representative moved up by one period
    return n;
}

}  // namespace inertjump
