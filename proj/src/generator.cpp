#include "inertjump/generator.hpp"

#include <cmath>
#include <stdexcept>

#include "inertjump/angle.hpp"

namespace inertjump {

void QuadratureConfig::validate() const {
    if (!(pv_cutoff > 0.0 && pv_cutoff < kPi))
        throw std::invalid_argument("QuadratureConfig.pv_cutoff: must lie in (0, pi)");
    if (tail_terms < 1) throw std::invalid_argument("QuadratureConfig.tail_terms: must be >= 1");
    if (pv_nodes < 64) throw std::invalid_argument("QuadratureConfig.pv_nodes: must be >= 64");
    if (s_nodes < 16) throw std::invalid_argument("QuadratureConfig.s_nodes: must be >= 16");
    if (theta_nodes < 32)
        throw std::invalid_argument("QuadratureConfig.theta_nodes: must be >= 32");
    if (!(tolerance > 0.0)) throw std::invalid_argument("QuadratureConfig.tolerance: must be > 0");
    if (!(s_domain > 0.0)) throw std::invalid_argument("QuadratureConfig.s_domain: must be > 0");
}

CircleFunction::CircleFunction(Eigen::ArrayXd cos_coeffs, Eigen::ArrayXd sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
    if (cos_.size() < 1) throw std::invalid_argument("CircleFunction: cos_coeffs needs a_0");
    if (sin_.size() != cos_.size() - 1)
        throw std::invalid_argument("CircleFunction: sin_coeffs must have one entry per harmonic");
    if (!cos_.isFinite().all() || !sin_.isFinite().all())
        throw std::invalid_argument("CircleFunction: coefficients must be finite");
}

CircleFunction CircleFunction::constant(double c) {
    Eigen::ArrayXd a(1), b(0);
    a << c;
    return CircleFunction(a, b);
}

CircleFunction CircleFunction::harmonic_cos(int k, double amplitude) {
    if (k < 1) throw std::invalid_argument("harmonic_cos: k must be >= 1");
    Eigen::ArrayXd a = Eigen::ArrayXd::Zero(k + 1), b = Eigen::ArrayXd::Zero(k);
    a[k] = amplitude;
    return CircleFunction(a, b);
}

CircleFunction CircleFunction::harmonic_sin(int k, double amplitude) {
    if (k < 1) throw std::invalid_argument("harmonic_sin: k must be >= 1");
    Eigen::ArrayXd a = Eigen::ArrayXd::Zero(k + 1), b = Eigen::ArrayXd::Zero(k);
    b[k - 1] = amplitude;
    return CircleFunction(a, b);
}

double CircleFunction::derivative(double theta, int order) const {
    if (order < 0 || order > 6)
        throw std::invalid_argument("CircleFunction: derivative order must be in 0..6");
    const int K = max_harmonic();
    const double yr = wrap_angle(theta);
    double acc = (order == 0) ? cos_[0] : 0.0;
    if (K < 1) return acc;
    // cos(k yr), sin(k yr) for all k by the double-angle recurrence
    const double c1 = std::cos(yr), s1 = std::sin(yr);
    double ck = c1, sk = s1, ckm = 1.0, skm = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double a = cos_[k];
        const double b = sin_[k - 1];
        if (a != 0.0 || b != 0.0) {
            const double km = order == 0 ? 1.0 : std::pow(static_cast<double>(k), order);
            switch (order & 3) {
                case 0: acc += km * (a * ck + b * sk); break;
                case 1: acc += km * (-a * sk + b * ck); break;
                case 2: acc += km * (-a * ck - b * sk); break;
                default: acc += km * (a * sk - b * ck); break;
            }
        }
        const double cn = 2.0 * c1 * ck - ckm;
        const double sn = 2.0 * c1 * sk - skm;
        ckm = ck;
        skm = sk;
        ck = cn;
        sk = sn;
    }
    return acc;
}

double CircleFunction::sup_bound() const {
    return std::abs(cos_[0]) + cos_.tail(cos_.size() - 1).abs().sum() + sin_.abs().sum();
}

BumpPoly::BumpPoly(double support_radius, int power, Eigen::ArrayXd poly_coeffs)
    : r_(support_radius), p_(power), q_(std::move(poly_coeffs)) {
    if (!(r_ > 0.0)) throw std::invalid_argument("BumpPoly: support radius must be positive");
    if (p_ < 3) throw std::invalid_argument("BumpPoly: power must be >= 3 for a C^2 bump");
    if (q_.size() < 1) throw std::invalid_argument("BumpPoly: polynomial must be non-empty");
}

BumpPoly BumpPoly::one(double support_radius, int power) {
    Eigen::ArrayXd q(1);
    q << 1.0;
    return BumpPoly(support_radius, power, q);
}

double BumpPoly::derivative(double s, int order) const {
    if (order < 0 || order > 2)
        throw std::invalid_argument("BumpPoly: derivative order must be in 0..2");
    if (std::abs(s) >= r_) return 0.0;
    const double z = s / r_;
    const double t = 1.0 - z * z;
    // q and its derivatives by Horner
    double q0 = 0.0, q1 = 0.0, q2 = 0.0;
    for (Eigen::Index i = q_.size() - 1; i >= 0; --i) {
        q2 = q2 * s + 2.0 * q1;
        q1 = q1 * s + q0;
        q0 = q0 * s + q_[i];
    }
    const double tp = std::pow(t, p_ - 2);
    const double B = tp * t * t;
    if (order == 0) return B * q0;
    const double dtds = -2.0 * s / (r_ * r_);
    const double Bp = p_ * tp * t * dtds;
    if (order == 1) return Bp * q0 + B * q1;
    const double Bpp =
        p_ * (p_ - 1) * tp * dtds * dtds + p_ * tp * t * (-2.0 / (r_ * r_));
    return Bpp * q0 + 2.0 * Bp * q1 + B * q2;
}

CylinderFunction::CylinderFunction(std::vector<CircleFunction> g, std::vector<BumpPoly> h,
                                   double c0)
    : c0_(c0), g_(std::move(g)), h_(std::move(h)) {
    if (g_.size() != h_.size())
        throw std::invalid_argument("CylinderFunction: term lists must have equal length");
}

CylinderFunction CylinderFunction::separable(CircleFunction g, BumpPoly h) {
    return CylinderFunction({std::move(g)}, {std::move(h)});
}

CylinderFunction CylinderFunction::constant(double c) { return CylinderFunction({}, {}, c); }

double CylinderFunction::value(double theta, double s) const {
    double acc = c0_;
    for (std::size_t j = 0; j < g_.size(); ++j) acc += g_[j](theta) * h_[j](s);
    return acc;
}

double CylinderFunction::d_theta(double theta, double s) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < g_.size(); ++j) acc += g_[j].derivative(theta, 1) * h_[j](s);
    return acc;
}

double CylinderFunction::d_s(double theta, double s) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < g_.size(); ++j) acc += g_[j](theta) * h_[j].derivative(s, 1);
    return acc;
}

double CylinderFunction::d_theta_theta(double theta, double s) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < g_.size(); ++j) acc += g_[j].derivative(theta, 2) * h_[j](s);
    return acc;
}

double CylinderFunction::d_theta_s(double theta, double s) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < g_.size(); ++j)
        acc += g_[j].derivative(theta, 1) * h_[j].derivative(s, 1);
    return acc;
}

double CylinderFunction::d_ss(double theta, double s) const {
    double acc = 0.0;
    for (std::size_t j = 0; j < g_.size(); ++j) acc += g_[j](theta) * h_[j].derivative(s, 2);
    return acc;
}

double CylinderFunction::support_radius() const {
    double r = 0.0;
    for (const auto& h : h_) r = std::max(r, h.support_radius());
    return r;
}

namespace {

// Euler-Maclaurin closure of sum_{m>=0} (y+m)^{-s}.
double em_tail(double s, double y) {
    return std::pow(y, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(y, -s) +
           s * std::pow(y, -s - 1.0) / 12.0 -
           s * (s + 1.0) * (s + 2.0) * std::pow(y, -s - 3.0) / 720.0;
}

// magnitude of the first omitted Euler-Maclaurin term
double em_tail_error(double s, double y) {
    return s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * std::pow(y, -s - 5.0) / 30240.0;
}

Eigen::ArrayXd geometric_edges(double lo, double hi, int panels) {
    Eigen::ArrayXd edges(panels + 1);
    const double ratio = std::log(hi / lo) / panels;
    for (int i = 0; i <= panels; ++i) edges[i] = lo * std::exp(ratio * i);
    edges[0] = lo;
    edges[panels] = hi;
    return edges;
}

}  // namespace

PeriodicKernelRule::PeriodicKernelRule(Alpha alpha, const QuadratureConfig& config)
    : alpha_(alpha) {
    config.validate();
    const double a = alpha.value;
    const double s = 1.0 + a;
    const double eps = config.pv_cutoff;
    stable_const_ = alpha_constant(alpha);

    constexpr int kOrder = 16;
    const int panels = std::max(8, config.pv_nodes / (2 * kOrder));

    // Below u_min the paired difference f(t+u)+f(t-u)-2f(t) drowns in rounding
    // noise that u^{-1-alpha} would amplify, so panels stop there and the
    // Taylor expansion through fourth order carries the zone (0, u_min]
    // analytically; the dropped remainder is O(u_min^{6-alpha}).
    const double u_min = 1e-3;
    Quadrature inner;  // empty when the cutoff itself sits below the floor
    if (eps > 2.0 * u_min)
        inner = composite_gauss_legendre(geometric_edges(u_min, eps, panels), kOrder);

    // outer region [eps, pi]: log-spaced panels resolve the kernel's steepness
    const Quadrature outer =
        composite_gauss_legendre(geometric_edges(eps, kPi, panels), kOrder);

    local_nodes_.resize(inner.nodes.size() + outer.nodes.size());
    local_kweights_.resize(local_nodes_.size());
    local_nodes_ << inner.nodes, outer.nodes;
    local_kweights_ << inner.weights * inner.nodes.pow(-s), outer.weights * outer.nodes.pow(-s);

    // Analytic Taylor moments over (0, eps], minus their numeric counterparts
    // on the covered inner panels (the subtraction applies below the cutoff
    // only); what remains accounts exactly for the uncovered zone.
    double sub2 = 0.0, sub4 = 0.0;
    for (Eigen::Index i = 0; i < inner.nodes.size(); ++i) {
        const double u2 = inner.nodes[i] * inner.nodes[i];
        const double w = inner.weights[i] * std::pow(inner.nodes[i], -s);
        sub2 += w * u2;
        sub4 += w * u2 * u2;
    }
    fpp_coeff_ = std::pow(eps, 2.0 - a) / (2.0 - a) - sub2;
    f4_coeff_ = (std::pow(eps, 4.0 - a) / (4.0 - a) - sub4) / 12.0;

    // periodisation sum: exact terms n = 1..N, Euler-Maclaurin closure beyond
    const int N = config.tail_terms;
    const int tail_panels = std::max(4, config.pv_nodes / (4 * kOrder));
    const Quadrature tail = composite_gauss_legendre(
        Eigen::ArrayXd::LinSpaced(tail_panels + 1, 0.0, kPi), kOrder);
    tail_nodes_ = tail.nodes;
    tail_kweights_.resize(tail.nodes.size());
    double max_closure_err = 0.0;
    for (Eigen::Index i = 0; i < tail.nodes.size(); ++i) {
        const double u = tail.nodes[i];
        double kernel = 0.0;
        for (int n = 1; n <= N; ++n)
            kernel += std::pow(2.0 * n * kPi - u, -s) + std::pow(2.0 * n * kPi + u, -s);
        const double c = u / kTwoPi;
        kernel += std::pow(kTwoPi, -s) * (em_tail(s, N + 1.0 - c) + em_tail(s, N + 1.0 + c));
        tail_kweights_[i] = tail.weights[i] * kernel;
        max_closure_err = std::max(
            max_closure_err, std::pow(kTwoPi, -s) * (em_tail_error(s, N + 1.0 - c) +
                                                     em_tail_error(s, N + 1.0 + c)));
    }
    // |P(u)| <= 4 ||f||_inf and the paired tail integrand lives on (0, pi)
    closure_bound_coeff_ = stable_const_ * 4.0 * kPi * max_closure_err;
}

PvResult PeriodicKernelRule::apply(const CircleFunction& f, double theta) const {
    const double f0 = f(theta);
    const double fpp = f.derivative(theta, 2);
    const double f4 = f.derivative(theta, 4);
    double acc = fpp * fpp_coeff_ + f4 * f4_coeff_;
    for (Eigen::Index i = 0; i < local_nodes_.size(); ++i) {
        const double u = local_nodes_[i];
        acc += local_kweights_[i] * (f(theta + u) + f(theta - u) - 2.0 * f0);
    }
    for (Eigen::Index i = 0; i < tail_nodes_.size(); ++i) {
        const double u = tail_nodes_[i];
        acc += tail_kweights_[i] * (f(theta + u) + f(theta - u) - 2.0 * f0);
    }
    return PvResult{stable_const_ * acc, closure_bound_coeff_ * f.sup_bound()};
}

PvResult frac_laplacian_periodic(const CircleFunction& f, double theta, Alpha alpha,
                                 const QuadratureConfig& config) {
    return PeriodicKernelRule(alpha, config).apply(f, theta);
}

PvResult circle_L(const CircleFunction& f, double theta, Alpha alpha,
                  const QuadratureConfig& config) {
    // arc-length/angle substitution: enter through the Arg branch in (-pi, pi]
    return PeriodicKernelRule(alpha, config).apply(f, wrap_angle(theta));
}

double full_generator(const CylinderFunction& f, double theta, double s,
                      const PotentialSpec& spec, const PeriodicKernelRule& rule) {
    double nonlocal = 0.0;
    for (std::size_t j = 0; j < f.term_count(); ++j) {
        const double hj = f.h(j)(s);
        if (hj != 0.0) nonlocal += hj * rule.apply(f.g(j), theta).value;
    }
    return nonlocal + spec.derivative(theta, 1) * s * f.d_theta(theta, s) +
           spec.derivative(theta, 2) * f.d_s(theta, s);
}

double full_generator(const CylinderFunction& f, double theta, double s,
                      const PotentialSpec& spec, Alpha alpha, const QuadratureConfig& config) {
    return full_generator(f, theta, s, spec, PeriodicKernelRule(alpha, config));
}

double integral_L_residual(const CircleFunction& f, Alpha alpha,
                           const QuadratureConfig& config) {
    const PeriodicKernelRule rule(alpha, config);
    const int n = config.theta_nodes;
    const double dtheta = kTwoPi / n;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double theta = -kPi + (i + 0.5) * dtheta;
        acc += rule.apply(f, theta).value;
    }
    return std::abs(acc * dtheta);
}

namespace {

double stationarity_residual_value(const CylinderFunction& f, const PotentialSpec& spec,
                                   const PeriodicKernelRule& rule,
                                   const QuadratureConfig& config, double s_variance) {
    const double r = f.support_radius();
    if (r == 0.0) return 0.0;  // constant cylinder function: G f = 0 termwise

    const int n_theta = config.theta_nodes;
    const double dtheta = kTwoPi / n_theta;

    // nonlocal part, term by term on the theta grid
    Eigen::ArrayXd theta(n_theta);
    for (int i = 0; i < n_theta; ++i) theta[i] = -kPi + (i + 0.5) * dtheta;
    Eigen::MatrixXd L(n_theta, static_cast<Eigen::Index>(f.term_count()));
    for (std::size_t j = 0; j < f.term_count(); ++j)
        for (int i = 0; i < n_theta; ++i)
            L(i, static_cast<Eigen::Index>(j)) = rule.apply(f.g(j), theta[i]).value;

    // support-adapted Gauss-Legendre panels in s with the Gaussian density as
    // an explicit factor; panel ends coincide with the support boundary
    const int s_panels = std::max(2, config.s_nodes / 16);
    const Quadrature srule =
        composite_gauss_legendre(Eigen::ArrayXd::LinSpaced(s_panels + 1, -r, r), 16);

    const double norm = 1.0 / std::sqrt(kTwoPi * s_variance);
    double acc = 0.0;
    for (Eigen::Index m = 0; m < srule.nodes.size(); ++m) {
        const double s = srule.nodes[m];
        const double rho = norm * std::exp(-0.5 * s * s / s_variance);
        double theta_acc = 0.0;
        for (int i = 0; i < n_theta; ++i) {
            double gen = spec.derivative(theta[i], 1) * s * f.d_theta(theta[i], s) +
                         spec.derivative(theta[i], 2) * f.d_s(theta[i], s);
            for (std::size_t j = 0; j < f.term_count(); ++j)
                gen += f.h(j)(s) * L(i, static_cast<Eigen::Index>(j));
            theta_acc += gen;
        }
        acc += srule.weights[m] * rho * theta_acc * dtheta;
    }
    return std::abs(acc / kTwoPi);
}

}  // namespace

StationarityResult stationarity_residual(const CylinderFunction& f, const PotentialSpec& spec,
                                         Alpha alpha, const QuadratureConfig& config,
                                         double s_variance, bool refine_check) {
    config.validate();
    if (!(s_variance > 0.0))
        throw std::invalid_argument("stationarity_residual: s_variance must be positive");
    if (config.s_domain < f.support_radius() + 8.0 * std::sqrt(s_variance))
        throw std::invalid_argument(
            "stationarity_residual: s_domain must cover the support plus 8 standard deviations");

    const PeriodicKernelRule rule(alpha, config);
    StationarityResult out;
    out.residual = stationarity_residual_value(f, spec, rule, config, s_variance);
    if (refine_check) {
        QuadratureConfig fine = config;
        fine.s_nodes *= 2;
        fine.theta_nodes *= 2;
        const PeriodicKernelRule fine_rule(alpha, fine);
        const double refined = stationarity_residual_value(f, spec, fine_rule, fine, s_variance);
        out.refinement_delta = std::abs(refined - out.residual);
        out.refinement_warning = out.refinement_delta > config.tolerance;
    }
    return out;
}

RefinementReport verify_refinement(const CircleFunction& f, double theta, Alpha alpha,
                                   const QuadratureConfig& config) {
    QuadratureConfig fine = config;
    fine.pv_nodes *= 2;
    RefinementReport rep;
    rep.coarse = frac_laplacian_periodic(f, theta, alpha, config).value;
    rep.fine = frac_laplacian_periodic(f, theta, alpha, fine).value;
    rep.delta = std::abs(rep.fine - rep.coarse);
    rep.converged = rep.delta <= 10.0 * config.tolerance;
    return rep;
}

CircleFunction random_circle_polynomial(int max_harmonic, Rng& rng) {
    if (max_harmonic < 1)
        throw std::invalid_argument("random_circle_polynomial: need max_harmonic >= 1");
    Eigen::ArrayXd a(max_harmonic + 1), b(max_harmonic);
    for (int k = 0; k <= max_harmonic; ++k) a[k] = rng.uniform(-1.0, 1.0) / (1.0 + k);
    for (int k = 1; k <= max_harmonic; ++k) b[k - 1] = rng.uniform(-1.0, 1.0) / (1.0 + k);
    return CircleFunction(a, b);
}

std::vector<CylinderFunction> standard_cylinder_family(double support_radius) {
    const double r = support_radius;
    auto poly = [](std::initializer_list<double> cs) {
        Eigen::ArrayXd q(static_cast<Eigen::Index>(cs.size()));
        Eigen::Index i = 0;
        for (double c : cs) q[i++] = c;
        return q;
    };
    using CF = CircleFunction;
    std::vector<CylinderFunction> family;
    // separable
    family.push_back(CylinderFunction::separable(CF::harmonic_cos(1), BumpPoly::one(r, 4)));
    family.push_back(CylinderFunction::separable(CF::harmonic_sin(1), BumpPoly::one(r, 5)));
    family.push_back(
        CylinderFunction::separable(CF::harmonic_cos(2), BumpPoly(r, 4, poly({1.0, 0.5}))));
    family.push_back(
        CylinderFunction::separable(CF::harmonic_sin(3), BumpPoly(r, 6, poly({0.0, 1.0}))));
    {
        Eigen::ArrayXd a(3), b(2);
        a << 0.0, 1.0, 0.0;
        b << 0.0, 0.5;
        family.push_back(CylinderFunction::separable(CF(a, b), BumpPoly::one(r, 4)));
    }
    // non-separable (sums of separable terms with distinct s-profiles)
    family.push_back(CylinderFunction({CF::harmonic_cos(1), CF::harmonic_sin(2)},
                                      {BumpPoly::one(r, 4), BumpPoly(r, 5, poly({0.0, 1.0}))}));
    family.push_back(
        CylinderFunction({CF::harmonic_cos(3), CF::harmonic_cos(1)},
                         {BumpPoly(r, 4, poly({1.0, -0.3})), BumpPoly(r, 6, poly({0.0, 0.0, 1.0}))}));
    // constant offset plus an oscillating part
    family.push_back(CylinderFunction({CF::harmonic_cos(1)}, {BumpPoly::one(r, 4)}, 0.5));
    // theta-independent section (generator reduces to the W'' f_s term)
    family.push_back(CylinderFunction::separable(CF::constant(1.0), BumpPoly(r, 4, poly({0.0, 1.0}))));
    family.push_back(
        CylinderFunction::separable(CF::harmonic_sin(2), BumpPoly(r, 8, poly({0.3, 0.0, 1.0}))));
    return family;
}

}  // namespace inertjump
