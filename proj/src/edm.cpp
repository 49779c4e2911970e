#include "usc/edm.hpp"

#include "usc/errors.hpp"
#include "usc/grwa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace usc {

void EdmParams::validate() const {
    if (!(omega_c > 0.0)) throw std::invalid_argument("omega_c must be > 0");
    if (!(omega_d > 0.0)) throw std::invalid_argument("omega_d must be > 0");
    if (!(g >= 0.0)) throw std::invalid_argument("g must be >= 0");
    if (!std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be finite");
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (!(T >= 0.0)) throw std::invalid_argument("T must be >= 0");
    if (sum_cutoff < 0) throw std::invalid_argument("sum_cutoff must be >= 0");
    if (n_boson < 2 || n_boson > kMaxLiouvillianLevels)
        throw std::invalid_argument("n_boson must be in [2, " + std::to_string(kMaxLiouvillianLevels) + "]");
}

namespace {

// log of lambda^j / j!, with 0^0 = 1.
double log_poisson_term(double lambda, int j) {
    if (j == 0) return 0.0;
    if (lambda <= 0.0) return -INFINITY;
    return j * std::log(lambda) - std::lgamma(j + 1.0);
}

int cutoff_for(double lambda) {
    if (lambda <= 0.0) return 1;
    const int peak = static_cast<int>(std::floor(lambda));
    const double lead = log_poisson_term(lambda, peak);
    int q = peak;
    while (log_poisson_term(lambda, q) - lead > std::log(1e-10)) ++q;
    return std::max(q, 1);
}

double lorentz_sum(double omega, const EdmParams& p, int cutoff) {
    const double x2 = p.coupling_ratio() * p.coupling_ratio();
    const double nt = thermal_occupation(p.omega_c, p.T);
    const double lam_abs = x2 * nt, lam_emit = x2 * (1.0 + nt);
    const double hw2 = 0.25 * p.gamma * p.gamma;
    double acc = 0.0;
    for (int r = 0; r <= cutoff; ++r) {
        const double wr = log_poisson_term(lam_abs, r);
        if (wr == -INFINITY) break;
        for (int q = 0; q <= cutoff; ++q) {
            if (q == 0 && r == 0) continue;
            const double d = omega - p.omega_c * (q - r);
            acc += std::exp(wr + log_poisson_term(lam_emit, q)) * hw2 / (d * d + hw2);
        }
    }
    return acc;
}

}  // namespace

int default_sum_cutoff(const EdmParams& p) {
    const double x2 = p.coupling_ratio() * p.coupling_ratio();
    return cutoff_for(x2 * (1.0 + thermal_occupation(p.omega_c, p.T)));
}

double gamma_T(double omega, const EdmParams& p) {
    p.validate();
    const double x2 = p.coupling_ratio() * p.coupling_ratio();
    const double nt = thermal_occupation(p.omega_c, p.T);
    const int cutoff = p.sum_cutoff > 0 ? p.sum_cutoff : default_sum_cutoff(p);
    const double kept = lorentz_sum(omega, p, cutoff);
    const int wide = std::max(cutoff_for(x2 * (1.0 + nt)) + 20, cutoff + 20);
    const double full = lorentz_sum(omega, p, wide);
    if (full - kept > 1e-8 * std::max(kept, 1e-300))
        throw TruncationError("gamma_T: sum_cutoff " + std::to_string(cutoff) + " leaves a relative tail of " +
                              std::to_string((full - kept) / std::max(kept, 1e-300)));
    return p.rate_scale() * std::exp(-x2 * (1.0 + 2.0 * nt)) * kept;
}

double total_rate(const EdmParams& p) { return gamma_T(p.epsilon, p) - gamma_T(-p.epsilon, p); }

SaturationReport saturation_number(const EdmParams& p) {
    const double heat = gamma_T(-p.epsilon, p);
    const double net = gamma_T(p.epsilon, p) - heat;
    if (!(net > 0.0)) throw NoNetCoolingError("saturation_number: total rate is not positive");
    SaturationReport rep;
    rep.k = std::max(1, static_cast<int>(std::lround(std::abs(p.epsilon) / p.omega_c)));
    rep.n0 = heat / net;
    rep.thermal_ref = thermal_occupation(p.omega_c * rep.k, p.T);
    return rep;
}

EdmValidity edm_validity(const EdmParams& p) {
    p.validate();
    const int k = std::max(1, static_cast<int>(std::lround(std::abs(p.epsilon) / p.omega_c)));
    ModelParams mp;
    mp.omega_c = p.omega_c;
    mp.omega_d = p.omega_d;
    mp.g = p.g;
    return {p.gamma >= std::abs(rabi_frequency(k, k, mp)), p.coupling_ratio() >= 1.0};
}

Trajectory effective_dipole_evolve(const EdmParams& p, int m0, const std::vector<double>& times) {
    p.validate();
    if (m0 < 0 || m0 >= p.n_boson) throw std::invalid_argument("effective_dipole_evolve: need 0 <= m0 < n_boson");
    const double cool = gamma_T(p.epsilon, p);
    const double heat = gamma_T(-p.epsilon, p);
    const int nb = p.n_boson;
    Eigen::VectorXd levels(nb);
    Eigen::MatrixXd jumps = Eigen::MatrixXd::Zero(nb, nb);
    for (int n = 0; n < nb; ++n) {
        levels(n) = p.epsilon * n;
        if (n > 0) jumps(n - 1, n) = cool * n;
        if (n + 1 < nb) jumps(n + 1, n) = heat * (n + 1);
    }
    const Liouvillian L = build_liouvillian_from_jumps(levels, jumps);
    Eigen::MatrixXcd rho0 = Eigen::MatrixXcd::Zero(nb, nb);
    rho0(m0, m0) = 1.0;
    Eigen::MatrixXcd number = Eigen::MatrixXcd::Zero(nb, nb);
    for (int n = 0; n < nb; ++n) number(n, n) = n;
    Trajectory traj = evolve(L, rho0, times, {{"nb", number}});
    double edge = 0.0;
    for (double v : traj.observables["p" + std::to_string(nb - 1)]) edge = std::max(edge, v);
    if (edge > 1e-6)
        traj.warnings.push_back("population at the top boson level reached " + std::to_string(edge) +
                                "; raise n_boson");
    return traj;
}

}  // namespace usc
