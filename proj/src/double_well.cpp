#include "usc/double_well.hpp"

#include "usc/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace usc {

void WellParams::validate() const {
    if (!(mu2 > 0.0)) throw std::invalid_argument("mu2 must be > 0");
    if (!(mu4 > 0.0)) throw std::invalid_argument("mu4 must be > 0");
    if (!(mass > 0.0)) throw std::invalid_argument("mass must be > 0");
    if (!(x_max > 0.0)) throw std::invalid_argument("x_max must be > 0");
    if (grid_points < 200) throw std::invalid_argument("grid_points must be >= 200");
}

double WellParams::potential(double x) const {
    const double x2 = x * x;
    return -0.5 * mu2 * mu2 * x2 + 0.25 * std::pow(mu4, 4) * x2 * x2 + qE * x;
}

double WellSolution::position_element(int a, int b) const {
    const auto& pa = levels.at(a).psi;
    const auto& pb = levels.at(b).psi;
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += pa[i] * x[i] * pb[i];
    return acc * dx;
}

namespace {

struct Eigenpairs {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors;  // unit 2-norm
};

// Lowest `count` eigenpairs of the symmetric tridiagonal (diag, off).
Eigenpairs tridiagonal_lowest(std::vector<double> diag, std::vector<double> off, int count) {
    const int n = static_cast<int>(diag.size());
    count = std::min(count, n);
    if (off.empty()) off.push_back(0.0);
    std::vector<double> w(n), z(static_cast<std::size_t>(n) * count);
    std::vector<lapack_int> support(2 * count);
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(), 0.0, 0.0, 1,
                                           count, 0.0, &found, w.data(), z.data(), n, support.data());
    if (info != 0 || found != count)
        throw ConvergenceError("solve_double_well: dstevr failed (info " + std::to_string(info) + ")");
    Eigenpairs out;
    for (int k = 0; k < count; ++k) {
        out.values.push_back(w[k]);
        out.vectors.emplace_back(z.begin() + static_cast<long>(k) * n, z.begin() + static_cast<long>(k + 1) * n);
    }
    return out;
}

}  // namespace

WellSolution solve_double_well(const WellParams& p, int n_levels) {
    p.validate();
    const int n = p.grid_points;
    if (n_levels < 1 || n_levels > n) throw std::invalid_argument("solve_double_well: bad n_levels");

    WellSolution sol;
    sol.dx = 2.0 * p.x_max / (n + 1);
    sol.x.resize(n);
    std::vector<double> diag(n);
    const double kin = 1.0 / (2.0 * p.mass * sol.dx * sol.dx);
    for (int i = 0; i < n; ++i) {
        sol.x[i] = -p.x_max + (i + 1) * sol.dx;
        diag[i] = 2.0 * kin + p.potential(sol.x[i]);
    }

    // (energy, full-grid vector) candidates
    std::vector<std::pair<double, std::vector<double>>> found;
    if (p.qE == 0.0) {
        // Mirror-symmetric grid: solve the even and odd sectors on the left half
        // separately, so near-degenerate tunnel pairs keep definite parity.
        const int half = n / 2;
        const bool centre = n % 2 == 1;
        for (int parity : {+1, -1}) {
            std::vector<double> d(diag.begin(), diag.begin() + half);
            std::vector<double> o(half > 1 ? half - 1 : 0, -kin);
            if (centre && parity > 0) {
                // include the centre point, rescaled by sqrt(2) to keep the matrix symmetric
                d.push_back(diag[half]);
                o.push_back(-kin * std::sqrt(2.0));
            } else if (!centre) {
                d.back() += parity > 0 ? -kin : kin;
            }
            const Eigenpairs e = tridiagonal_lowest(d, o, n_levels);
            for (std::size_t k = 0; k < e.values.size(); ++k) {
                std::vector<double> full(n, 0.0);
                const auto& v = e.vectors[k];
                for (int i = 0; i < half; ++i) {
                    full[i] = v[i];
                    full[n - 1 - i] = parity * v[i];
                }
                if (centre && parity > 0) full[half] = v[half] * std::sqrt(2.0);
                double norm = 0.0;
                for (double x : full) norm += x * x;
                for (double& x : full) x /= std::sqrt(norm);
                found.emplace_back(e.values[k], std::move(full));
            }
        }
        std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        found.resize(n_levels);
    } else {
        const Eigenpairs e = tridiagonal_lowest(diag, std::vector<double>(n - 1, -kin), n_levels);
        for (int k = 0; k < n_levels; ++k) found.emplace_back(e.values[k], e.vectors[k]);
    }

    const double norm = 1.0 / std::sqrt(sol.dx);
    for (auto& [energy, psi] : found) {
        WellLevel lvl;
        lvl.energy = energy;
        lvl.psi = std::move(psi);
        // rescale to the grid L2 norm and fix the sign so the first sizeable
        // lobe (from the left) is positive
        double peak = 0.0;
        for (double v : lvl.psi) peak = std::max(peak, std::abs(v));
        double sign = 1.0;
        for (double v : lvl.psi)
            if (std::abs(v) > 0.1 * peak) {
                sign = v > 0 ? 1.0 : -1.0;
                break;
            }
        for (double& v : lvl.psi) v *= sign * norm;
        if (std::abs(lvl.psi.front()) > 1e-6 || std::abs(lvl.psi.back()) > 1e-6) sol.boundary_warning = true;
        sol.levels.push_back(std::move(lvl));
    }
    return sol;
}

TlaReport tla_parameters(const WellParams& p) {
    WellParams flat = p;
    flat.qE = 0.0;
    WellSolution sol = solve_double_well(flat, 3);
    TlaReport rep;
    const double e0 = sol.levels[0].energy, e1 = sol.levels[1].energy, e2 = sol.levels[2].energy;
    rep.omega_d = e1 - e0;
    rep.x_10 = std::abs(sol.position_element(1, 0));
    rep.epsilon = 2.0 * p.qE * rep.x_10;
    rep.gap_ratio = (e2 - e1) / rep.omega_d;
    rep.barrier = flat.potential(0.0);
    rep.boundary_warning = sol.boundary_warning;
    rep.valid = rep.gap_ratio > 10.0 && e0 < rep.barrier && e1 < rep.barrier;
    return rep;
}

std::pair<double, double> localized_dipole_moments(const WellParams& p) {
    WellParams flat = p;
    flat.qE = 0.0;
    const WellSolution sol = solve_double_well(flat, 2);
    const double x00 = sol.position_element(0, 0);
    const double x11 = sol.position_element(1, 1);
    double x10 = sol.position_element(1, 0);
    // Orient |1> so that x_10 > 0, as in tla_parameters.
    const double omega_d = sol.levels[1].energy - sol.levels[0].energy;
    const double eps = 2.0 * p.qE * std::abs(x10);
    x10 = std::abs(x10);
    const double theta = std::atan2(eps, omega_d);
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    // |L> = c|0> + s|1>,  |R> = -s|0> + c|1>
    const double left = c * c * x00 + s * s * x11 + 2.0 * c * s * x10;
    const double right = s * s * x00 + c * c * x11 - 2.0 * c * s * x10;
    return {left, right};
}

}  // namespace usc
