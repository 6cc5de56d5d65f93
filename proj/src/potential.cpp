#include "inertjump/potential.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "inertjump/angle.hpp"

namespace inertjump {

PotentialSpec::PotentialSpec(Eigen::ArrayXd cos_coeffs, Eigen::ArrayXd sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    if (cos_.size() < 1) throw std::invalid_argument("PotentialSpec: cos_coeffs needs a_0");
    if (sin_.size() != cos_.size() - 1)
        throw std::invalid_argument("PotentialSpec: sin_coeffs must have one entry per harmonic");
    if (!cos_.isFinite().all() || !sin_.isFinite().all())
        throw std::invalid_argument("PotentialSpec: coefficients must be finite");
    bool oscillating = false;
    for (int k = 1; k <= max_harmonic(); ++k)
        if (cos_[k] != 0.0 || sin_[k - 1] != 0.0) oscillating = true;
    if (!oscillating)
        throw std::invalid_argument("PotentialSpec: potential must not be identically constant");
}

PotentialSpec PotentialSpec::cosine() {
    Eigen::ArrayXd a(2), b(1);
    a << 0.0, 1.0;
    b << 0.0;
    return PotentialSpec(a, b);
}

double PotentialSpec::derivative(double y, int order) const {
    if (order < 0 || order > 5)
        throw std::invalid_argument("PotentialSpec: derivative order must be in 0..5 (C^5 contract)");
    const double yr = wrap_angle(y);
    double acc = (order == 0) ? cos_[0] : 0.0;
    for (int k = 1; k <= max_harmonic(); ++k) {
        const double a = cos_[k];
        const double b = sin_[k - 1];
        if (a == 0.0 && b == 0.0) continue;
        const double t = static_cast<double>(k) * yr;
        const double km = std::pow(static_cast<double>(k), order);
        const double c = std::cos(t);
        const double s = std::sin(t);
        // d^m cos(kt) = k^m cos(kt + m pi/2), likewise for sin
        switch (order & 3) {
            case 0: acc += km * (a * c + b * s); break;
            case 1: acc += km * (-a * s + b * c); break;
            case 2: acc += km * (-a * c - b * s); break;
            default: acc += km * (a * s - b * c); break;
        }
    }
    return acc;
}

std::string PotentialSpec::id() const {
    std::ostringstream os;
    os << "fourier[cos=";
    for (Eigen::Index i = 0; i < cos_.size(); ++i) os << (i ? "," : "") << cos_[i];
    os << ";sin=";
    for (Eigen::Index i = 0; i < sin_.size(); ++i) os << (i ? "," : "") << sin_[i];
    os << "]";
    return os.str();
}

double eval_derivative(const PotentialSpec& spec, double y, int order) {
    return spec.derivative(y, order);
}

double sup_norm(const PotentialSpec& spec, int order) {
    if (order < 0 || order > 5) throw std::invalid_argument("sup_norm: order must be in 0..5");
    const int K = std::max(1, spec.max_harmonic());
    const Eigen::Index n = 4096LL * K;
    const double h = kTwoPi / static_cast<double>(n);

    // dense scan, keeping the best few cells for refinement
    constexpr int kKeep = 4;
    double best_val[kKeep] = {-1.0, -1.0, -1.0, -1.0};
    double best_arg[kKeep] = {0.0, 0.0, 0.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i) {
        const double y = -kPi + (static_cast<double>(i) + 0.5) * h;
        const double v = std::abs(spec.derivative(y, order));
        int slot = -1;
        for (int j = 0; j < kKeep; ++j)
            if (slot < 0 || best_val[j] < best_val[slot]) slot = j;
        if (v > best_val[slot]) {
            best_val[slot] = v;
            best_arg[slot] = y;
        }
    }

    double sup = 0.0;
    for (int j = 0; j < kKeep; ++j) {
        double lo = best_arg[j] - h, hi = best_arg[j] + h;
        for (int it = 0; it < 80; ++it) {  // ternary search on |W^(m)|
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (std::abs(spec.derivative(m1, order)) < std::abs(spec.derivative(m2, order)))
                lo = m1;
            else
                hi = m2;
        }
        sup = std::max(sup, std::abs(spec.derivative(0.5 * (lo + hi), order)));
        sup = std::max(sup, best_val[j]);
    }
    return sup;
}

ConfinementBand ConfinementBand::from_support(double r, double t0, const PotentialSpec& spec) {
    if (!(r > 0.0)) throw std::invalid_argument("ConfinementBand: r must be positive");
    if (!(t0 > 0.0)) throw std::invalid_argument("ConfinementBand: t0 must be positive");
    return ConfinementBand{r, t0, r + 2.0 * t0 * sup_norm(spec, 2) + 3.0};
}

ConfinementBand ConfinementBand::with_s_bound(double s_bound, double t0) {
    if (!(s_bound > 0.0)) throw std::invalid_argument("ConfinementBand: s_bound must be positive");
    if (!(t0 > 0.0)) throw std::invalid_argument("ConfinementBand: t0 must be positive");
    return ConfinementBand{0.0, t0, s_bound};
}

double vector_field_derivative_norm(const PotentialSpec& spec, const ConfinementBand& band,
                                    int order) {
    if (order < 1 || order > 3)
        throw std::invalid_argument("vector_field_derivative_norm: order must be 1, 2 or 3");
    // |a| = order derivatives of V1 = W'(y) s: W^(order+1)(y) s (pure-y multi-index)
    // and W^(order)(y) (one s in the multi-index); higher s-powers vanish.
    // V2 = W''(y) contributes W^(order+2)(y).
    return sup_norm(spec, order + 1) * band.s_bound + sup_norm(spec, order) +
           sup_norm(spec, order + 2);
}

double vector_field_d1_norm(const PotentialSpec& spec, const ConfinementBand& band) {
    return vector_field_derivative_norm(spec, band, 1);
}

FlowHorizon FlowHorizon::compute(const PotentialSpec& spec, const ConfinementBand& band) {
    const double d1 = vector_field_d1_norm(spec, band);
    const double contraction = d1 > 0.0 ? 1.0 / (2.0 * d1) : std::numeric_limits<double>::infinity();
    return FlowHorizon{std::min(contraction, band.t0), d1};
}

}  // namespace inertjump
