#pragma once

#include <Eigen/Core>
#include <vector>

#include "inertjump/potential.hpp"
#include "inertjump/quadrule.hpp"
#include "inertjump/stable.hpp"

namespace inertjump {

// Node counts and cutoffs for the principal-value and tail-sum evaluation of
// the nonlocal operators.
struct QuadratureConfig {
    double pv_cutoff = 0.05;  // epsilon of the symmetric excision, in (0, pi)
    int pv_nodes = 512;       // node budget for the local (principal-value) integral
    int tail_terms = 64;      // periodisation terms summed exactly before closure
    double s_domain = 12.0;   // half-width the s-quadrature must cover
    int s_nodes = 64;         // node budget in s
    int theta_nodes = 512;    // uniform nodes for integrals over the circle
    double tolerance = 1e-6;  // requested tolerance for refinement diagnostics

    void validate() const;
};

// Fourier polynomial f(theta) = a_0 + sum_k (a_k cos k theta + b_k sin k theta)
// on the circle; closed under differentiation, so the generator's drift terms
// use exact partials and only the quadrature contributes error.
class CircleFunction {
public:
    CircleFunction(Eigen::ArrayXd cos_coeffs, Eigen::ArrayXd sin_coeffs);

    static CircleFunction constant(double c);
    static CircleFunction harmonic_cos(int k, double amplitude = 1.0);
    static CircleFunction harmonic_sin(int k, double amplitude = 1.0);

    double derivative(double theta, int order) const;
    double operator()(double theta) const { return derivative(theta, 0); }

    int max_harmonic() const { return static_cast<int>(cos_.size()) - 1; }
    // rigorous sup-norm upper bound (l1 of the coefficients)
    double sup_bound() const;

    const Eigen::ArrayXd& cos_coeffs() const { return cos_; }
    const Eigen::ArrayXd& sin_coeffs() const { return sin_; }

private:
    Eigen::ArrayXd cos_;  // a_0..a_K
    Eigen::ArrayXd sin_;  // b_1..b_K
};

// (1 - (s/r)^2)^p q(s) inside [-r, r], identically zero outside; p >= 3 keeps
// the function C^2 across the support boundary.
class BumpPoly {
public:
    BumpPoly(double support_radius, int power, Eigen::ArrayXd poly_coeffs);

    static BumpPoly one(double support_radius, int power = 4);

    double derivative(double s, int order) const;  // order 0..2
    double operator()(double s) const { return derivative(s, 0); }
    double support_radius() const { return r_; }

private:
    double r_;
    int p_;
    Eigen::ArrayXd q_;  // monomial coefficients, constant term first
};

// Cylinder test function f(theta, s) = c0 + sum_j g_j(theta) h_j(s); the class
// the stationarity identity is tested on.  C^2 in both variables with compact
// s-support (the constant offset is admitted for degenerate probes).
class CylinderFunction {
public:
    CylinderFunction() = default;
    CylinderFunction(std::vector<CircleFunction> g, std::vector<BumpPoly> h, double c0 = 0.0);

    static CylinderFunction separable(CircleFunction g, BumpPoly h);
    static CylinderFunction constant(double c);

    double value(double theta, double s) const;
    double d_theta(double theta, double s) const;
    double d_s(double theta, double s) const;
    double d_theta_theta(double theta, double s) const;
    double d_theta_s(double theta, double s) const;
    double d_ss(double theta, double s) const;

    double support_radius() const;
    std::size_t term_count() const { return g_.size(); }
    const CircleFunction& g(std::size_t j) const { return g_[j]; }
    const BumpPoly& h(std::size_t j) const { return h_[j]; }

private:
    double c0_ = 0.0;
    std::vector<CircleFunction> g_;
    std::vector<BumpPoly> h_;
};

struct PvResult {
    double value = 0.0;
    // certified bound on the closure of the periodisation sum beyond tail_terms
    double tail_bound = 0.0;
};

// Precomputed quadrature for the periodic fractional Laplacian at one
// (alpha, config): all nodes and kernel weights are independent of the
// evaluation point, so repeated applications share the setup cost.
//
// Local part (symmetric pairing of the principal value):
//   pv int_{|u|<pi} (f(t+u)-f(t)) |u|^{-1-a} du
//     = int_0^pi [f(t+u)+f(t-u)-2f(t)] u^{-1-a} du,
// split at the cutoff; below it the second-order Taylor term is integrated
// analytically and the remainder [P(u) - u^2 f''(t)] u^{-1-a} = O(u^{3-a}) is
// handled by geometrically graded Gauss panels.  The periodisation sum is
// evaluated exactly for n <= tail_terms and closed with an Euler-Maclaurin
// tail whose remainder is reported as the certified bound.
class PeriodicKernelRule {
public:
    PeriodicKernelRule(Alpha alpha, const QuadratureConfig& config);

    PvResult apply(const CircleFunction& f, double theta) const;

    Alpha alpha() const { return alpha_; }

private:
    Alpha alpha_;
    double stable_const_ = 0.0;
    Eigen::ArrayXd local_nodes_;       // inner + outer, u in (0, pi)
    Eigen::ArrayXd local_kweights_;    // weight * u^{-1-alpha}
    double fpp_coeff_ = 0.0;           // analytic second-order Taylor term
    double f4_coeff_ = 0.0;            // analytic fourth-order Taylor term
    Eigen::ArrayXd tail_nodes_;        // u in (0, pi)
    Eigen::ArrayXd tail_kweights_;     // weight * (periodisation kernel)
    double closure_bound_coeff_ = 0.0; // per unit sup-norm of f
};

// The periodic fractional Laplacian -(-Delta)^{alpha/2} f at theta.
PvResult frac_laplacian_periodic(const CircleFunction& f, double theta, Alpha alpha,
                                 const QuadratureConfig& config);

// The circle operator L g(e^{i theta}); identical to the periodic fractional
// Laplacian under the arc-length/angle substitution, entered through the
// principal-argument branch.
PvResult circle_L(const CircleFunction& f, double theta, Alpha alpha,
                  const QuadratureConfig& config);

// Full generator G f = L_theta f + W'(theta) s f_theta + W''(theta) f_s.
double full_generator(const CylinderFunction& f, double theta, double s,
                      const PotentialSpec& spec, Alpha alpha, const QuadratureConfig& config);
double full_generator(const CylinderFunction& f, double theta, double s,
                      const PotentialSpec& spec, const PeriodicKernelRule& rule);

// |int_T L f| over the circle (exactly zero in the continuum).
double integral_L_residual(const CircleFunction& f, Alpha alpha,
                           const QuadratureConfig& config);

struct StationarityResult {
    double residual = 0.0;
    double refinement_delta = 0.0;
    bool refinement_warning = false;
};

// |(1/2pi) iint G f rho ds dtheta| against the centred Gaussian of the given
// variance (variance 1 is the stationary law; other values serve as negative
// controls).  Tensor product of a uniform circle rule and support-adapted
// Gauss-Legendre panels in s with the density as an explicit factor.
StationarityResult stationarity_residual(const CylinderFunction& f, const PotentialSpec& spec,
                                         Alpha alpha, const QuadratureConfig& config,
                                         double s_variance = 1.0, bool refine_check = false);

struct RefinementReport {
    double coarse = 0.0;
    double fine = 0.0;
    double delta = 0.0;
    bool converged = true;
};

// Doubles pv_nodes and flags non-convergence when the value moves by more
// than 10x the requested tolerance.
RefinementReport verify_refinement(const CircleFunction& f, double theta, Alpha alpha,
                                   const QuadratureConfig& config);

// Random Fourier polynomial of the given degree, coefficients ~ U(-1,1)/(1+k).
CircleFunction random_circle_polynomial(int max_harmonic, Rng& rng);

// The stationarity-check family: separable and non-separable cylinder
// functions (harmonics times bump polynomials of varying smoothness), all
// supported in |s| <= support_radius.
std::vector<CylinderFunction> standard_cylinder_family(double support_radius = 2.0);

}  // namespace inertjump
