#pragma once

// Test-side oracles, independent of the library's quadrature path:
//  - a brute-force uniform-midpoint evaluation of the periodic fractional
//    Laplacian (gamma through std::tgamma, tail closed by a midpoint-integral
//    estimate rather than Euler-Maclaurin),
//  - a classical RK4 integrator for the first and second variational ODEs
//    along a frozen zero-noise trajectory.

#include <Eigen/Core>
#include <cmath>
#include <functional>

#include "inertjump/generator.hpp"
#include "inertjump/potential.hpp"

namespace oracle {

class BruteForceFracLaplacian {
public:
    BruteForceFracLaplacian(double alpha, int local_nodes = 1000000, int tail_grid = 8192,
                            int tail_terms = 10000)
        : alpha_(alpha), s_(1.0 + alpha), local_nodes_(local_nodes) {
        constexpr double pi = 3.14159265358979323846;
        constant_ = alpha * std::tgamma((1.0 + alpha) / 2.0) * std::pow(2.0, alpha - 1.0) /
                    (std::sqrt(pi) * std::tgamma(1.0 - alpha / 2.0));
        // theta-independent periodisation kernel on a midpoint grid over (0, pi)
        const double h = pi / tail_grid;
        tail_u_.resize(tail_grid);
        tail_kernel_.resize(tail_grid);
        for (int i = 0; i < tail_grid; ++i) {
            const double u = (i + 0.5) * h;
            double k = 0.0;
            for (int n = 1; n <= tail_terms; ++n)
                k += std::pow(2.0 * n * pi - u, -s_) + std::pow(2.0 * n * pi + u, -s_);
            // remaining terms by the midpoint-rule integral estimate
            const double edge = 2.0 * pi * (tail_terms + 0.5);
            k += (std::pow(edge - u, 1.0 - s_) + std::pow(edge + u, 1.0 - s_)) /
                 ((s_ - 1.0) * 2.0 * pi);
            tail_u_[i] = u;
            tail_kernel_[i] = k * h;
        }
    }

    // f must supply values and the second derivative at theta.
    double operator()(const std::function<double(double)>& f, double fpp_theta,
                      double theta) const {
        constexpr double pi = 3.14159265358979323846;
        const double f0 = f(theta);
        const double h = pi / local_nodes_;
        double local = 0.0;
        for (int i = 0; i < local_nodes_; ++i) {
            const double u = (i + 0.5) * h;
            local += (f(theta + u) + f(theta - u) - 2.0 * f0 - u * u * fpp_theta) *
                     std::pow(u, -s_) * h;
        }
        local += fpp_theta * std::pow(pi, 2.0 - alpha_) / (2.0 - alpha_);
        double tail = 0.0;
        for (Eigen::Index i = 0; i < tail_u_.size(); ++i)
            tail += (f(theta + tail_u_[i]) + f(theta - tail_u_[i]) - 2.0 * f0) * tail_kernel_[i];
        return constant_ * (local + tail);
    }

    double operator()(const inertjump::CircleFunction& f, double theta) const {
        return (*this)([&f](double x) { return f(x); }, f.derivative(theta, 2), theta);
    }

private:
    double alpha_;
    double s_;
    int local_nodes_;
    double constant_;
    Eigen::ArrayXd tail_u_;
    Eigen::ArrayXd tail_kernel_;
};

// First variational system along the zero-noise trajectory started at (0, s0)
// for W = cos: the base point stays at y = 0 and s(t) = s0 - t, so the
// Jacobian J(t) (columns D_1 Y, D_2 Y) solves J' = A(t) J with
// A(t) = [[-(s0 - t), 0], [0, 0]].  Integrated here by RK4 at a tiny step.
inline Eigen::Matrix2d rk4_first_variation_zero_noise(double s0, double t, int steps = 20000) {
    const double h = t / steps;
    Eigen::Matrix2d J = Eigen::Matrix2d::Identity();
    auto rhs = [&](double tau, const Eigen::Matrix2d& M) {
        Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
        A(0, 0) = -(s0 - tau);
        return Eigen::Matrix2d(A * M);
    };
    for (int k = 0; k < steps; ++k) {
        const double tau = k * h;
        const Eigen::Matrix2d k1 = rhs(tau, J);
        const Eigen::Matrix2d k2 = rhs(tau + h / 2, J + (h / 2) * k1);
        const Eigen::Matrix2d k3 = rhs(tau + h / 2, J + (h / 2) * k2);
        const Eigen::Matrix2d k4 = rhs(tau + h, J + h * k3);
        J += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return J;
}

// Second variational system along the same frozen trajectory: the vector
// H_ik(t) = D_ik Y(t) solves H' = A(t) H + b_ik(t), H(0) = 0, where b carries
// the second derivatives of the field contracted with D_i Y and D_k Y.
// For W = cos at y = 0: nonzero second derivatives are
//   d^2 V1/dy dy = W'''(y) s = 0 at y=0 (W''' = sin), d^2 V1/dy ds = W''(0) = -1,
//   d^2 V2/dy dy = W''''(0) = 1.
inline Eigen::Vector2d rk4_second_variation_zero_noise(double s0, int i, int k, double t,
                                                       int steps = 20000) {
    const double h = t / steps;
    Eigen::Vector2d H = Eigen::Vector2d::Zero();
    auto J_at = [&](double tau) {
        // closed form: J11 = exp(-(s0 tau - tau^2/2)), J22 = 1, off-diagonal 0
        Eigen::Matrix2d J = Eigen::Matrix2d::Identity();
        J(0, 0) = std::exp(-(s0 * tau - tau * tau / 2.0));
        return J;
    };
    auto rhs = [&](double tau, const Eigen::Vector2d& Hv) {
        Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
        A(0, 0) = -(s0 - tau);
        const Eigen::Matrix2d J = J_at(tau);
        const Eigen::Vector2d Di = J.col(i);
        const Eigen::Vector2d Dk = J.col(k);
        Eigen::Vector2d b;
        // component 1: sum_{lm} d2 V1 [Di]_l [Dk]_m with d2V1(y,s): yy -> W''' s = 0,
        // ys and sy -> W''(0) = -1, ss -> 0
        b[0] = -(Di[0] * Dk[1] + Di[1] * Dk[0]);
        // component 2: d2 V2: yy -> W''''(0) = 1, rest 0
        b[1] = Di[0] * Dk[0];
        return Eigen::Vector2d(A * Hv + b);
    };
    for (int n = 0; n < steps; ++n) {
        const double tau = n * h;
        const Eigen::Vector2d k1 = rhs(tau, H);
        const Eigen::Vector2d k2 = rhs(tau + h / 2, H + (h / 2) * k1);
        const Eigen::Vector2d k3 = rhs(tau + h / 2, H + (h / 2) * k2);
        const Eigen::Vector2d k4 = rhs(tau + h, H + h * k3);
        H += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return H;
}

}  // namespace oracle
