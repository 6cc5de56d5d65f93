#pragma once

#include <Eigen/Core>

namespace inertjump {

struct Quadrature {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
};

// Gauss-Legendre rule on [-1, 1] by Golub-Welsch (symmetric tridiagonal
// eigenproblem); exact for polynomials of degree 2n-1.
Quadrature gauss_legendre(int n);

// The same rule mapped to [a, b].
Quadrature gauss_legendre_on(double a, double b, int n);

// Composite rule over consecutive panels [edges[i], edges[i+1]].
Quadrature composite_gauss_legendre(const Eigen::ArrayXd& edges, int per_panel);

}  // namespace inertjump
