#ifndef ALEFV_QUADRATURE_HPP
#define ALEFV_QUADRATURE_HPP

#include <cmath>
#include <vector>

#include "alefv/core.hpp"

namespace alefv {

/// One-dimensional rule on [0,1].
struct Rule1D {
    std::vector<double> points;
    std::vector<double> weights;
    int exact_degree = 0;

    int size() const { return static_cast<int>(points.size()); }
};

/// Rule on the unit reference triangle T_e = {xi,eta >= 0, xi+eta <= 1}.
struct TriangleRule {
    std::vector<Vec2> points;
    std::vector<double> weights; // sum to 1/2
    int exact_degree = 0;

    int size() const { return static_cast<int>(points.size()); }
};

namespace detail {

/// Legendre polynomial value and derivative at x in [-1,1].
inline void legendre_eval(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) { p = 1.0; dp = 0.0; return; }
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace detail

/// n-point Gauss-Legendre rule mapped to [0,1]; exact through degree 2n-1.
inline Rule1D gauss_legendre(int n) {
    Rule1D r;
    r.exact_degree = 2 * n - 1;
    r.points.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev estimate.
        double x = -std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            detail::legendre_eval(n, x, p, dp);
            double dx = -p / dp;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        detail::legendre_eval(n, x, p, dp);
        r.points[i] = 0.5 * (x + 1.0);
        r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

/// n-point Gauss-Lobatto rule on [0,1] (endpoints included), n >= 2.
/// Exact through degree 2n-3.
inline Rule1D gauss_lobatto(int n) {
    Rule1D r;
    r.exact_degree = 2 * n - 3;
    r.points.resize(n);
    r.weights.resize(n);
    if (n == 1) { // degenerate single node at 0, used by the order-1 scheme
        r.points[0] = 0.0;
        r.weights[0] = 1.0;
        r.exact_degree = 0;
        return r;
    }
    r.points[0] = 0.0;
    r.points[n - 1] = 1.0;
    r.weights[0] = r.weights[n - 1] = 1.0 / (n * (n - 1.0));
    // Interior nodes are the roots of P'_{n-1}; Newton on d/dx P_{n-1}.
    for (int i = 1; i < n - 1; ++i) {
        double x = -std::cos(M_PI * i / (n - 1.0)); // good initial guess
        for (int it = 0; it < 100; ++it) {
            double p, dp;
            detail::legendre_eval(n - 1, x, p, dp);
            // second derivative from the Legendre ODE
            double d2p = (2.0 * x * dp - (n - 1.0) * n * p) / (1.0 - x * x);
            double dx = -dp / d2p;
            x += dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p, dp;
        detail::legendre_eval(n - 1, x, p, dp);
        r.points[i] = 0.5 * (x + 1.0);
        r.weights[i] = 1.0 / (n * (n - 1.0) * p * p);
    }
    return r;
}

/// Triangle rule exact through the requested polynomial degree, built by
/// collapsing a tensor Gauss-Legendre grid on the unit square onto T_e
/// (Duffy transform xi = u(1-v), eta = v with Jacobian 1-v).
inline TriangleRule triangle_rule(int degree) {
    int n = (degree + 3) / 2 + 1; // covers the extra (1-v) factor with margin
    Rule1D g = gauss_legendre(n);
    TriangleRule r;
    r.exact_degree = degree;
    r.points.reserve(n * n);
    r.weights.reserve(n * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double u = g.points[i], v = g.points[j];
            r.points.push_back({u * (1.0 - v), v});
            r.weights.push_back(g.weights[i] * g.weights[j] * (1.0 - v));
        }
    }
    return r;
}

} // namespace alefv

#endif
