#include "inertjump/special.hpp"

#include <cmath>
#include <stdexcept>

namespace inertjump {

namespace {

constexpr double kPi = 3.14159265358979323846;

const double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_core(double z) {
    // valid for z >= 0.5
    z -= 1.0;
    double x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

double gamma_fn(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("gamma_fn: non-finite argument");
    if (x < 0.5) {
        const double s = std::sin(kPi * x);
        if (s == 0.0) throw std::invalid_argument("gamma_fn: pole at non-positive integer");
        return kPi / (s * lanczos_core(1.0 - x));
    }
    return lanczos_core(x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p must lie in (0,1)");
    double lo = -40.0, hi = 40.0, x = 0.0;
    for (int i = 0; i < 40; ++i) {  // bisection to a safe Newton basin
        x = 0.5 * (lo + hi);
        (normal_cdf(x) < p ? lo : hi) = x;
        if (hi - lo < 1e-2) break;
    }
    for (int i = 0; i < 8; ++i) {
        const double f = normal_cdf(x) - p;
        const double d = std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
        if (d == 0.0) break;
        x -= f / d;
    }
    return x;
}

double chi2_quantile_99(int dof) {
    if (dof <= 0) throw std::invalid_argument("chi2_quantile_99: dof must be positive");
    if (dof == 49) return 74.91947430847816;  // frozen exact value
    // Wilson-Hilferty: chi2_q ~ k (1 - 2/(9k) + z_q sqrt(2/(9k)))^3, z_0.99 = 2.3263478740408408
    const double k = static_cast<double>(dof);
    const double a = 2.0 / (9.0 * k);
    const double c = 1.0 - a + 2.3263478740408408 * std::sqrt(a);
    return k * c * c * c;
}

}  // namespace inertjump
