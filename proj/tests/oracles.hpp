// Independent reference computations shared by the unit and acceptance tests.
#pragma once

#include "usc/double_well.hpp"
#include "usc/eigensolver.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace oracle {

// exp(x (a - a^dag)) on n_fock photon states by Pade scaling and squaring.
inline Eigen::MatrixXd expm_displacement(double x, int n_fock) {
    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(n_fock, n_fock);
    for (int n = 1; n < n_fock; ++n) {
        gen(n - 1, n) = x * std::sqrt(double(n));
        gen(n, n - 1) = -x * std::sqrt(double(n));
    }
    return gen.exp();
}

// sum_j (-1)^j C(n+a, n-j) x^j / j!, accumulated in long double to tame the
// alternating cancellation.
inline double laguerre_series(int n, int a, double x) {
    long double sum = 0.0L, term = 1.0L;
    for (int k = 0; k < n; ++k) term = term * (a + n - k) / (n - k);  // C(n+a, n)
    for (int j = 0; j <= n; ++j) {
        sum += term;
        term *= -static_cast<long double>(x) * (n - j) / ((a + j + 1.0L) * (j + 1.0L));
    }
    return static_cast<double>(sum);
}

// Numerov integration from the left wall; counts sign changes of psi.
inline int numerov_nodes(const usc::WellParams& p, double e, int steps) {
    const double h = 2.0 * p.x_max / steps;
    auto f = [&](double x) { return 1.0 + h * h * 2.0 * p.mass * (e - p.potential(x)) / 12.0; };
    double y0 = 0.0, y1 = 1e-12;
    int nodes = 0;
    for (int i = 1; i < steps - 1; ++i) {
        const double x = -p.x_max + i * h;
        const double y2 = ((12.0 - 10.0 * f(x)) * y1 - f(x - h) * y0) / f(x + h);
        if (y2 * y1 < 0.0) ++nodes;
        y0 = y1;
        y1 = y2;
        if (std::abs(y1) > 1e200) {
            y0 *= 1e-200;
            y1 *= 1e-200;
        }
    }
    return nodes;
}

// k-th eigenvalue of the well by bisection on the node count (shooting).
inline double shooting_level(const usc::WellParams& p, int k, double lo, double hi, int steps = 40000) {
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (numerov_nodes(p, mid, steps) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

inline double well_minimum(const usc::WellParams& p) {
    double v = 0.0;
    for (double x = -p.x_max; x <= p.x_max; x += 1e-3) v = std::min(v, p.potential(x));
    return v;
}

// Polaron-frame product state |spin, n>; spin 0 is up (S_z = +1/2), 1 is down.
inline Eigen::VectorXcd product_state(int spin, int n, int n_fock) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * n_fock);
    v(spin * n_fock + n) = 1.0;
    return v;
}

// Index of the eigenvector (among the lowest `scan`) with the largest overlap.
inline int best_overlap(const usc::EigenSystem& es, const Eigen::VectorXcd& v, int scan = 40) {
    int best = 0;
    double top = -1.0;
    for (int k = 0; k < std::min(scan, es.dim); ++k) {
        const double o = std::abs(es.vectors.col(k).dot(v));
        if (o > top) {
            top = o;
            best = k;
        }
    }
    return best;
}

}  // namespace oracle
