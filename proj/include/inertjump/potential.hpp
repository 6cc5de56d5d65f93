#pragma once

#include <Eigen/Core>
#include <string>

namespace inertjump {

// The 2pi-periodic potential W (equivalently V on the unit circle, through
// V^(n)(e^{iy}) = W^(n)(y)) as a truncated Fourier series
//   W(y) = a_0 + sum_{k=1..K} (a_k cos ky + b_k sin ky).
// The representation is C^infinity and periodic by construction and closed
// under differentiation, which is what the flow-bound constants need.
class PotentialSpec {
public:
    // cos_coeffs = (a_0, ..., a_K), sin_coeffs = (b_1, ..., b_K).
    // Rejects the identically constant potential (all k >= 1 coefficients zero).
    PotentialSpec(Eigen::ArrayXd cos_coeffs, Eigen::ArrayXd sin_coeffs);

    static PotentialSpec cosine();  // W(y) = cos y, the default test potential

    int max_harmonic() const { return static_cast<int>(cos_.size()) - 1; }
    const Eigen::ArrayXd& cos_coeffs() const { return cos_; }
    const Eigen::ArrayXd& sin_coeffs() const { return sin_; }

    // Exact termwise derivative of order 0..5; the argument is reduced to
    // (-pi, pi] first so evaluation is periodic at the level of doubles.
    double derivative(double y, int order) const;

    std::string id() const;  // short provenance string for reports

private:
    Eigen::ArrayXd cos_;  // a_0..a_K
    Eigen::ArrayXd sin_;  // b_1..b_K
};

double eval_derivative(const PotentialSpec& spec, double y, int order);

// sup_y |W^(order)(y)|: dense grid (>= 4096 * max(1,K) nodes) with local
// refinement of the best cells; within 1e-6 of the true sup for K <= 32.
double sup_norm(const PotentialSpec& spec, int order);

// The confinement band M = R x [-s_bound, s_bound] on which the vector-field
// norms are taken: s_bound = r + 2 t0 ||W''||_inf + 3.
struct ConfinementBand {
    double r = 0.0;
    double t0 = 0.0;
    double s_bound = 0.0;

    static ConfinementBand from_support(double r, double t0, const PotentialSpec& spec);
    // Band with the half-width pinned directly (used where a test fixes the
    // band rather than deriving it from a support radius).
    static ConfinementBand with_s_bound(double s_bound, double t0);
};

// ||D^(j) V||_{inf,M} for the 2-D field V1(y,s) = W'(y) s, V2(y,s) = W''(y),
// in the l1-over-multi-indices convention (sum over |a| = j and components of
// sup_M |D^a V_k|):
//   j=1: ||W''|| s_b + ||W'||   + ||W'''||
//   j=2: ||W'''|| s_b + ||W''|| + ||W''''||
//   j=3: ||W''''|| s_b + ||W'''|| + ||W''''' ||
double vector_field_derivative_norm(const PotentialSpec& spec, const ConfinementBand& band,
                                    int order);

double vector_field_d1_norm(const PotentialSpec& spec, const ConfinementBand& band);

// Horizon up to which the pathwise flow bounds are claimed:
// t* = min(1 / (2 ||D^(1)V||_{inf,M}), t0), with 1/0 = infinity.
struct FlowHorizon {
    double t_star = 0.0;
    double d1_norm = 0.0;

    static FlowHorizon compute(const PotentialSpec& spec, const ConfinementBand& band);
};

}  // namespace inertjump
