#include "inertjump/quadrule.hpp"

#include <Eigen/Dense>
#include <map>
#include <stdexcept>

namespace inertjump {

Quadrature gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
    static std::map<int, Quadrature> cache;
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    Quadrature q;
    q.nodes = es.eigenvalues().array();
    q.weights = 2.0 * es.eigenvectors().row(0).array().square();
    cache[n] = q;
    return q;
}

Quadrature gauss_legendre_on(double a, double b, int n) {
    const Quadrature base = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    return Quadrature{mid + half * base.nodes, half * base.weights};
}

Quadrature composite_gauss_legendre(const Eigen::ArrayXd& edges, int per_panel) {
    if (edges.size() < 2) throw std::invalid_argument("composite_gauss_legendre: need >= 2 edges");
    const Eigen::Index panels = edges.size() - 1;
    Quadrature out;
    out.nodes.resize(panels * per_panel);
    out.weights.resize(panels * per_panel);
    for (Eigen::Index i = 0; i < panels; ++i) {
        const Quadrature p = gauss_legendre_on(edges[i], edges[i + 1], per_panel);
        out.nodes.segment(i * per_panel, per_panel) = p.nodes;
        out.weights.segment(i * per_panel, per_panel) = p.weights;
    }
    return out;
}

}  // namespace inertjump
