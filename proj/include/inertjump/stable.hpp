#pragma once

#include <Eigen/Core>
#include <vector>

#include "inertjump/rng.hpp"

namespace inertjump {

// Stability index of the driving symmetric alpha-stable process.  The value 2
// (Brownian case) is rejected: the toolkit covers the pure-jump regime only.
struct Alpha {
    Alpha() = default;  // Cauchy case, the reference configuration
    explicit Alpha(double v);
    double value = 1.0;
};

// A_alpha = alpha Gamma((1+alpha)/2) 2^{alpha-1} / (sqrt(pi) Gamma(1-alpha/2)),
// the constant normalising the jump density A_alpha |x|^{-1-alpha} so the
// characteristic exponent is exactly |xi|^alpha.
double alpha_constant(Alpha alpha);

// Rate of the compound Poisson process of jumps with |x| > eps0:
// lambda(alpha, eps0) = 2 A_alpha eps0^{-alpha} / alpha.
double jump_tail_rate(Alpha alpha, double eps0);

// Variance per unit time of the jumps below a threshold:
// 2 A_alpha delta^{2-alpha} / (2 - alpha).
double small_jump_variance_rate(Alpha alpha, double delta);

// One draw of the standard law (X_1, characteristic function e^{-|xi|^alpha})
// by the exact trigonometric transform of a uniform and an exponential variate.
double sample_standard_stable(Alpha alpha, Rng& rng);

// Increment over a step of length dt: dt^{1/alpha} X_1 by self-similarity.
double sample_increment(Alpha alpha, double dt, Rng& rng);

// Increments of the driving process on a uniform grid.  X(0) = 0; the
// cumulative path is the prefix sum of `increments`.
struct StablePathGrid {
    Alpha alpha;
    double dt = 0.0;
    Eigen::ArrayXd increments;
    SeedInfo seed;

    Eigen::Index steps() const { return increments.size(); }
    double horizon() const { return dt * static_cast<double>(increments.size()); }
    // cumulative()[k] = X(k dt); size steps()+1, starts at 0
    Eigen::ArrayXd cumulative() const;
};

StablePathGrid sample_path(Alpha alpha, Eigen::Index n_steps, double dt, Rng& rng);

// Levy-Ito split at threshold eps0: X = J + X~ with J the compound Poisson
// process of all jumps exceeding eps0 and X~ the independent small-jump part.
// X~ is sampled in layers: mid-size jumps in (delta, eps0] exactly, jumps
// below delta by a Gaussian of matched variance (delta is chosen internally).
struct JumpDecomposition {
    Alpha alpha;
    double eps0 = 0.0;
    double rate = 0.0;              // lambda(alpha, eps0)
    StablePathGrid small_part;      // X~ increments on the grid
    std::vector<double> jump_times; // sorted, in (0, horizon]
    std::vector<double> jump_sizes; // |size| > eps0, aligned with jump_times
    Eigen::ArrayXd combined_increments;  // small + large per step, frozen at construction
    SeedInfo seed;
};

JumpDecomposition sample_decomposed_path(Alpha alpha, double eps0, Eigen::Index n_steps,
                                         double dt, Rng& rng);

// Superpose small part and jumps in step order; equals combined_increments
// bit-for-bit on any decomposition produced by sample_decomposed_path.
Eigen::ArrayXd reassemble_increments(const JumpDecomposition& d);

}  // namespace inertjump
