// master_equation.hpp — thermalizing Lindblad equation in the dressed eigenbasis
//
// Superoperators act on column-stacked density matrices: rho(i, j) sits at
// index i + j * M.
#pragma once

#include "usc/eigensolver.hpp"

#include <map>
#include <string>
#include <vector>

namespace usc {

enum class Channel { cavity, dipole };
enum class SpectralLaw { ohmic, radiative };

struct BathSpec {
    Channel channel{Channel::cavity};
    SpectralLaw law{SpectralLaw::ohmic};
    double nu{3.0};        // exponent of the radiative law
    double strength{0.0};  // gamma or kappa
    double ref_freq{1.0};  // omega_c or omega_d

    void validate() const;
    // J(w) = strength * (|w| / ref_freq)^p with p = 1 (ohmic) or nu (radiative).
    double spectral_density(double omega) const;
    bool operator==(const BathSpec&) const = default;
};

// gamma |w| / w_c on a - a^dag, and kappa |w|^3 / w_d^3 on s_x.
BathSpec cavity_bath(double gamma, double omega_c = 1.0);
BathSpec dipole_bath(double kappa, double omega_d = 1.0);

// a - a^dag for the cavity channel, s_x (S_x) for the dipole channel.
OperatorMatrix coupling_operator(const ModelParams& p, Channel channel);

// 1 / (e^{w/T} - 1); identically 0 at T = 0.
double thermal_occupation(double omega, double temperature);

inline constexpr int kMaxLiouvillianLevels = 40;

struct Liouvillian {
    int dim_levels{0};
    Eigen::MatrixXcd matrix;    // M^2 x M^2
    Eigen::VectorXd level_freqs;
    double temperature{0.0};
    std::vector<BathSpec> baths;
    // jump_rates(n, m): total rate of the jump |n><m|, thermal factors included.
    Eigen::MatrixXd jump_rates;

    int index(int i, int j) const { return i + j * dim_levels; }
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
};

// Gamma(n, m) = J(|w_mn|) |<n|X|m>|^2 over the lowest M levels; symmetric,
// zero on the diagonal. Throws TruncationError when M > eig.converged_levels.
Eigen::MatrixXd transition_rates(const EigenSystem& eig, const OperatorMatrix& op, const BathSpec& bath, int M);

// Weights each pair by 1 + N_T (downward) and N_T (upward) and sums the baths.
Liouvillian build_liouvillian(const EigenSystem& eig, const ModelParams& p, const std::vector<BathSpec>& baths,
                              double temperature, int M);

// Same assembly from a precomputed symmetric rate matrix (sum over baths).
Liouvillian build_liouvillian_from_rates(const Eigen::VectorXd& level_freqs, const Eigen::MatrixXd& gamma,
                                         double temperature);

// Assembly from explicit jump rates K(n, m) for |n><m|, no thermal weighting.
Liouvillian build_liouvillian_from_jumps(const Eigen::VectorXd& level_freqs, const Eigen::MatrixXd& jump_rates);

// Eigenvalues sorted by descending real part, ties by ascending |imag|.
Eigen::VectorXcd liouvillian_spectrum(const Liouvillian& L);

// Re of the second eigenvalue in that order. Throws if no eigenvalue lies
// within 1e-9 of zero.
double liouvillian_gap(const Liouvillian& L);

// Unique kernel element as a unit-trace Hermitian matrix.
// Throws DegenerateKernelError if the kernel is more than one-dimensional.
Eigen::MatrixXcd steady_state(const Liouvillian& L);

// exp(-H/T)/Z on the given levels; ground-state projector at T = 0.
Eigen::MatrixXcd gibbs_state(const Eigen::VectorXd& level_freqs, double temperature);

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// <n|op|m> for n, m < M in the eigenbasis.
Eigen::MatrixXcd project_operator(const EigenSystem& eig, const OperatorMatrix& op, int M);

// |psi><psi| projected on the lowest M eigenvectors and renormalized.
Eigen::MatrixXcd project_state(const EigenSystem& eig, const Eigen::VectorXcd& psi, int M);

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::MatrixXcd> states;  // eigenbasis, Schroedinger picture
    std::map<std::string, std::vector<double>> observables;
    std::vector<std::string> warnings;

    // Smallest eigenvalue of any stored state.
    double min_eigenvalue() const;
};

struct EvolveOptions {
    double rtol{1e-8};
    double atol{1e-10};
    bool keep_states{true};
    bool populations{true};  // add p0, p1, ... to observables
};

// Integrates the master equation at the requested ascending times, starting
// at times.front(). Observables are M x M eigenbasis matrices; the real part
// of tr(rho O) is recorded. Throws IntegratorError with the failing time.
Trajectory evolve(const Liouvillian& L, const Eigen::MatrixXcd& rho0, const std::vector<double>& times,
                  const std::map<std::string, Eigen::MatrixXcd>& observables = {}, const EvolveOptions& opt = {});

}  // namespace usc
