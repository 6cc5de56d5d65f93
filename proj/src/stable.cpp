#include "inertjump/stable.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "inertjump/angle.hpp"
#include "inertjump/special.hpp"

namespace inertjump {

Alpha::Alpha(double v) : value(v) {
    if (!(v > 0.0 && v < 2.0))
        throw std::invalid_argument("Alpha: stability index must lie in (0,2)");
}

double alpha_constant(Alpha alpha) {
    const double a = alpha.value;
    return a * gamma_fn((1.0 + a) / 2.0) * std::pow(2.0, a - 1.0) /
           (std::sqrt(kPi) * gamma_fn(1.0 - a / 2.0));
}

double jump_tail_rate(Alpha alpha, double eps0) {
    if (!(eps0 > 0.0)) throw std::invalid_argument("jump_tail_rate: eps0 must be positive");
    return 2.0 * alpha_constant(alpha) * std::pow(eps0, -alpha.value) / alpha.value;
}

double small_jump_variance_rate(Alpha alpha, double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("small_jump_variance_rate: delta must be positive");
    return 2.0 * alpha_constant(alpha) * std::pow(delta, 2.0 - alpha.value) /
           (2.0 - alpha.value);
}

double sample_standard_stable(Alpha alpha, Rng& rng) {
    const double a = alpha.value;
    for (;;) {
        const double u = (rng.uniform01() - 0.5) * kPi;  // Uniform(-pi/2, pi/2)
        if (a == 1.0) return std::tan(u);
        const double e = rng.exponential();
        const double x = std::sin(a * u) / std::pow(std::cos(u), 1.0 / a) *
                         std::pow(std::cos((1.0 - a) * u) / e, (1.0 - a) / a);
        if (std::isfinite(x)) return x;  // e == 0 or cos underflow; retry
    }
}

double sample_increment(Alpha alpha, double dt, Rng& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("sample_increment: dt must be positive");
    return std::pow(dt, 1.0 / alpha.value) * sample_standard_stable(alpha, rng);
}

Eigen::ArrayXd StablePathGrid::cumulative() const {
    Eigen::ArrayXd cum(increments.size() + 1);
    cum[0] = 0.0;
    for (Eigen::Index k = 0; k < increments.size(); ++k) cum[k + 1] = cum[k] + increments[k];
    return cum;
}

StablePathGrid sample_path(Alpha alpha, Eigen::Index n_steps, double dt, Rng& rng) {
    if (n_steps < 1) throw std::invalid_argument("sample_path: n_steps must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("sample_path: dt must be positive");
    StablePathGrid path{alpha, dt, Eigen::ArrayXd(n_steps), rng.seed_info()};
    const double scale = std::pow(dt, 1.0 / alpha.value);
    for (Eigen::Index k = 0; k < n_steps; ++k)
        path.increments[k] = scale * sample_standard_stable(alpha, rng);
    return path;
}

namespace {

// Magnitude draw from the density ~ x^{-1-alpha} restricted to (lo, hi];
// hi = +inf gives the unrestricted tail beyond lo.
double truncated_pareto(double alpha, double lo, double hi, Rng& rng) {
    const double u = rng.uniform01();
    if (!std::isfinite(hi)) return lo * std::pow(1.0 - u, -1.0 / alpha);
    const double ratio = 1.0 - std::pow(lo / hi, alpha);
    return lo * std::pow(1.0 - u * ratio, -1.0 / alpha);
}

}  // namespace

JumpDecomposition sample_decomposed_path(Alpha alpha, double eps0, Eigen::Index n_steps,
                                         double dt, Rng& rng) {
    if (!(eps0 > 0.0))
        throw std::invalid_argument("sample_decomposed_path: eps0 must be positive");
    if (n_steps < 1) throw std::invalid_argument("sample_decomposed_path: n_steps must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("sample_decomposed_path: dt must be positive");

    const double a = alpha.value;
    const double A = alpha_constant(alpha);
    const double lambda = jump_tail_rate(alpha, eps0);
    const double horizon = dt * static_cast<double>(n_steps);

    // Inner split of X~: mid-size jumps in (delta, eps0] exact, sub-delta jumps
    // Gaussian with matched variance.  delta caps the mid-layer rate at 256
    // events per unit time and never exceeds eps0/2.
    const double rate_cap = 256.0;
    double delta = std::pow(a * rate_cap / (2.0 * A) + std::pow(eps0, -a), -1.0 / a);
    delta = std::min(delta, eps0 / 2.0);
    const double mid_rate = 2.0 * A * (std::pow(delta, -a) - std::pow(eps0, -a)) / a;
    const double sigma_step = std::sqrt(small_jump_variance_rate(alpha, delta) * dt);

    JumpDecomposition d{alpha,
                        eps0,
                        lambda,
                        StablePathGrid{alpha, dt, Eigen::ArrayXd(n_steps), rng.seed_info()},
                        {},
                        {},
                        Eigen::ArrayXd(n_steps),
                        rng.seed_info()};

    // Large-jump compound Poisson process over (0, horizon]
    double t = rng.exponential() / lambda;
    while (t <= horizon) {
        const double mag = truncated_pareto(a, eps0, std::numeric_limits<double>::infinity(), rng);
        d.jump_times.push_back(t);
        d.jump_sizes.push_back(rng.uniform01() < 0.5 ? -mag : mag);
        t += rng.exponential() / lambda;
    }

    for (Eigen::Index k = 0; k < n_steps; ++k) {
        double small = sigma_step * rng.normal();
        const long n_mid = rng.poisson(mid_rate * dt);
        for (long j = 0; j < n_mid; ++j) {
            const double mag = truncated_pareto(a, delta, eps0, rng);
            small += rng.uniform01() < 0.5 ? -mag : mag;
        }
        d.small_part.increments[k] = small;
    }

    d.combined_increments = reassemble_increments(d);
    return d;
}

Eigen::ArrayXd reassemble_increments(const JumpDecomposition& d) {
    Eigen::ArrayXd full = d.small_part.increments;
    const double dt = d.small_part.dt;
    const Eigen::Index n = full.size();
    for (std::size_t j = 0; j < d.jump_times.size(); ++j) {
        // step k covers ((k-1) dt, k dt]
        Eigen::Index k = static_cast<Eigen::Index>(std::ceil(d.jump_times[j] / dt)) - 1;
        if (k < 0) k = 0;
        if (k >= n) k = n - 1;
        full[k] += d.jump_sizes[j];
    }
    return full;
}

}  // namespace inertjump
