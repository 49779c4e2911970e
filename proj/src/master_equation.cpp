#include "usc/master_equation.hpp"

#include "usc/errors.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace usc {

void BathSpec::validate() const {
    if (!(strength >= 0.0)) throw std::invalid_argument("bath strength must be >= 0");
    if (!(ref_freq > 0.0)) throw std::invalid_argument("bath ref_freq must be > 0");
    if (law == SpectralLaw::radiative && !(nu >= 1.0))
        throw std::invalid_argument("radiative exponent nu must be >= 1");
}

double BathSpec::spectral_density(double omega) const {
    const double r = std::abs(omega) / ref_freq;
    return strength * (law == SpectralLaw::ohmic ? r : std::pow(r, nu));
}

BathSpec cavity_bath(double gamma, double omega_c) {
    return {Channel::cavity, SpectralLaw::ohmic, 1.0, gamma, omega_c};
}

BathSpec dipole_bath(double kappa, double omega_d) {
    return {Channel::dipole, SpectralLaw::radiative, 3.0, kappa, omega_d};
}

OperatorMatrix coupling_operator(const ModelParams& p, Channel channel) {
    return channel == Channel::cavity ? cavity_quadrature(p) : dipole_x(p);
}

double thermal_occupation(double omega, double temperature) {
    if (temperature <= 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

Eigen::MatrixXcd Liouvillian::apply(const Eigen::MatrixXcd& rho) const {
    const int m = dim_levels;
    if (rho.rows() != m || rho.cols() != m) throw std::invalid_argument("Liouvillian::apply: shape mismatch");
    const Eigen::VectorXcd v = matrix * Eigen::Map<const Eigen::VectorXcd>(rho.data(), m * m);
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), m, m);
}

Eigen::MatrixXcd project_operator(const EigenSystem& eig, const OperatorMatrix& op, int M) {
    if (op.dim() != eig.dim) throw std::invalid_argument("project_operator: dimension mismatch");
    if (M < 1 || M > eig.dim) throw std::invalid_argument("project_operator: bad level count");
    const auto v = eig.vectors.leftCols(M);
    return v.adjoint() * op.entries * v;
}

Eigen::MatrixXcd project_state(const EigenSystem& eig, const Eigen::VectorXcd& psi, int M) {
    if (psi.size() != eig.dim) throw std::invalid_argument("project_state: dimension mismatch");
    if (M < 1 || M > eig.dim) throw std::invalid_argument("project_state: bad level count");
    Eigen::VectorXcd c = eig.vectors.leftCols(M).adjoint() * psi;
    const double n = c.norm();
    if (n == 0.0) throw std::invalid_argument("project_state: state has no weight on the retained levels");
    c /= n;
    return c * c.adjoint();
}

Eigen::MatrixXd transition_rates(const EigenSystem& eig, const OperatorMatrix& op, const BathSpec& bath, int M) {
    bath.validate();
    if (M < 2) throw std::invalid_argument("transition_rates: need at least two levels");
    if (M > eig.converged_levels)
        throw TruncationError("transition_rates: M = " + std::to_string(M) + " exceeds the " +
                              std::to_string(eig.converged_levels) + " converged levels");
    const Eigen::MatrixXcd x = project_operator(eig, op, M);
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(M, M);
    for (int n = 0; n < M; ++n)
        for (int m = n + 1; m < M; ++m) {
            const double w = eig.frequencies(m) - eig.frequencies(n);
            // degenerate pairs stay a single jump; J(0) = 0 removes them
            const double r = bath.spectral_density(w) * std::norm(x(n, m));
            gamma(n, m) = gamma(m, n) = r;
        }
    return gamma;
}

Liouvillian build_liouvillian_from_jumps(const Eigen::VectorXd& level_freqs, const Eigen::MatrixXd& jump_rates) {
    const int M = static_cast<int>(level_freqs.size());
    if (M < 1 || M > kMaxLiouvillianLevels)
        throw std::invalid_argument("Liouvillian: level count must be in [1, " +
                                    std::to_string(kMaxLiouvillianLevels) + "]");
    if (jump_rates.rows() != M || jump_rates.cols() != M)
        throw std::invalid_argument("Liouvillian: rate matrix shape mismatch");

    Liouvillian L;
    L.dim_levels = M;
    L.level_freqs = level_freqs;
    L.jump_rates = jump_rates;
    L.jump_rates.diagonal().setZero();
    L.matrix = Eigen::MatrixXcd::Zero(M * M, M * M);
    const cplx i1(0.0, 1.0);

    Eigen::VectorXd out = L.jump_rates.colwise().sum().transpose();  // total escape rate of each level
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const int r = L.index(i, j);
            L.matrix(r, r) = -i1 * (level_freqs(i) - level_freqs(j)) - 0.5 * (out(i) + out(j));
        }
    for (int n = 0; n < M; ++n)
        for (int m = 0; m < M; ++m)
            if (n != m && L.jump_rates(n, m) != 0.0) L.matrix(L.index(n, n), L.index(m, m)) += L.jump_rates(n, m);
    return L;
}

Liouvillian build_liouvillian_from_rates(const Eigen::VectorXd& level_freqs, const Eigen::MatrixXd& gamma,
                                         double temperature) {
    if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
    const int M = static_cast<int>(level_freqs.size());
    if (gamma.rows() != M || gamma.cols() != M) throw std::invalid_argument("Liouvillian: rate matrix shape mismatch");
    Eigen::MatrixXd jumps = Eigen::MatrixXd::Zero(M, M);
    for (int n = 0; n < M; ++n)
        for (int m = 0; m < M; ++m) {
            if (n == m) continue;
            const double w = level_freqs(m) - level_freqs(n);  // energy released by |n><m|
            if (w > 0.0)
                jumps(n, m) = gamma(n, m) * (1.0 + thermal_occupation(w, temperature));
            else if (w < 0.0)
                jumps(n, m) = gamma(n, m) * thermal_occupation(-w, temperature);
        }
    Liouvillian L = build_liouvillian_from_jumps(level_freqs, jumps);
    L.temperature = temperature;
    return L;
}

Liouvillian build_liouvillian(const EigenSystem& eig, const ModelParams& p, const std::vector<BathSpec>& baths,
                              double temperature, int M) {
    if (M > kMaxLiouvillianLevels)
        throw std::invalid_argument("build_liouvillian: M = " + std::to_string(M) + " exceeds the dense cap " +
                                    std::to_string(kMaxLiouvillianLevels));
    if (M > eig.dim) throw std::invalid_argument("build_liouvillian: M exceeds the Hilbert dimension");
    Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(M, M);
    for (const BathSpec& b : baths) gamma += transition_rates(eig, coupling_operator(p, b.channel), b, M);
    Liouvillian L = build_liouvillian_from_rates(eig.frequencies.head(M), gamma, temperature);
    L.baths = baths;
    return L;
}

namespace {

bool is_population(const Liouvillian& L, int r) { return r % (L.dim_levels + 1) == 0; }

// True when populations only feed populations and every coherence evolves on
// its own, which is the structure the thermal builders produce.
bool has_block_structure(const Liouvillian& L) {
    const int d = L.dim_levels * L.dim_levels;
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) {
            if (r == c || L.matrix(r, c) == cplx(0.0)) continue;
            if (!(is_population(L, r) && is_population(L, c))) return false;
        }
    return true;
}

Eigen::MatrixXd population_block(const Liouvillian& L) {
    const int M = L.dim_levels;
    Eigen::MatrixXd w(M, M);
    for (int n = 0; n < M; ++n)
        for (int m = 0; m < M; ++m) w(n, m) = L.matrix(L.index(n, n), L.index(m, m)).real();
    return w;
}

void sort_spectrum(Eigen::VectorXcd& ev) {
    std::vector<cplx> v(ev.data(), ev.data() + ev.size());
    std::stable_sort(v.begin(), v.end(), [](const cplx& a, const cplx& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return std::abs(a.imag()) < std::abs(b.imag());
    });
    for (std::size_t k = 0; k < v.size(); ++k) ev(static_cast<long>(k)) = v[k];
}

constexpr double kZeroTol = 1e-9;

}  // namespace

Eigen::VectorXcd liouvillian_spectrum(const Liouvillian& L) {
    const int M = L.dim_levels;
    Eigen::VectorXcd ev(M * M);
    if (has_block_structure(L)) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(population_block(L), false);
        if (es.info() != Eigen::Success) throw ConvergenceError("liouvillian_spectrum: population block solve failed");
        ev.head(M) = es.eigenvalues();
        int k = M;
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j)
                if (i != j) ev(k++) = L.matrix(L.index(i, j), L.index(i, j));
    } else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L.matrix, false);
        if (es.info() != Eigen::Success) throw ConvergenceError("liouvillian_spectrum: dense solve failed");
        ev = es.eigenvalues();
    }
    sort_spectrum(ev);
    return ev;
}

double liouvillian_gap(const Liouvillian& L) {
    const Eigen::VectorXcd ev = liouvillian_spectrum(L);
    if (ev.size() < 2) throw std::invalid_argument("liouvillian_gap: need at least two eigenvalues");
    if (std::abs(ev(0)) > kZeroTol)
        throw Error("liouvillian_gap: no eigenvalue within 1e-9 of zero (trace preservation broken)");
    return ev(1).real();
}

Eigen::MatrixXcd steady_state(const Liouvillian& L) {
    const int M = L.dim_levels;
    const Eigen::VectorXcd ev = liouvillian_spectrum(L);
    int zeros = 0;
    for (int k = 0; k < ev.size(); ++k)
        if (std::abs(ev(k)) < kZeroTol) ++zeros;
    if (zeros == 0) throw Error("steady_state: no eigenvalue within 1e-9 of zero");
    if (zeros > 1) throw DegenerateKernelError("steady_state: kernel dimension " + std::to_string(zeros));

    Eigen::MatrixXcd rho;
    if (has_block_structure(L)) {
        // W p = 0 with sum(p) = 1, solved in the least-squares sense.
        const Eigen::MatrixXd w = population_block(L);
        const double scale = std::max(w.cwiseAbs().maxCoeff(), 1e-300);
        Eigen::MatrixXd a(M + 1, M);
        a.topRows(M) = w / scale;
        a.row(M).setOnes();
        Eigen::VectorXd b = Eigen::VectorXd::Zero(M + 1);
        b(M) = 1.0;
        const Eigen::VectorXd pops = a.colPivHouseholderQr().solve(b);
        rho = Eigen::MatrixXcd::Zero(M, M);
        rho.diagonal() = pops.cast<cplx>();
    } else {
        const int d = M * M;
        const double scale = std::max(L.matrix.cwiseAbs().maxCoeff(), 1e-300);
        Eigen::MatrixXcd a(d + 1, d);
        a.topRows(d) = L.matrix / scale;
        a.row(d).setZero();
        for (int i = 0; i < M; ++i) a(d, L.index(i, i)) = 1.0;
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(d + 1);
        b(d) = 1.0;
        const Eigen::VectorXcd v = a.colPivHouseholderQr().solve(b);
        rho = Eigen::Map<const Eigen::MatrixXcd>(v.data(), M, M);
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return rho;
}

Eigen::MatrixXcd gibbs_state(const Eigen::VectorXd& level_freqs, double temperature) {
    if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
    const int M = static_cast<int>(level_freqs.size());
    const double e0 = level_freqs.minCoeff();
    Eigen::VectorXd w(M);
    for (int n = 0; n < M; ++n) {
        if (temperature == 0.0)
            w(n) = (level_freqs(n) == e0) ? 1.0 : 0.0;
        else
            w(n) = std::exp(-(level_freqs(n) - e0) / temperature);
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(M, M);
    rho.diagonal() = (w / w.sum()).cast<cplx>();
    return rho;
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const Eigen::MatrixXcd d = a - b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (d + d.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double Trajectory::min_eigenvalue() const {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& s : states) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
        lo = std::min(lo, es.eigenvalues().minCoeff());
    }
    return lo;
}

namespace {

using State = std::vector<cplx>;

struct Entry {
    int row, col;
    cplx value;
    double freq;  // phase e^{i freq t} picked up in the rotating frame
};

// d rho~/dt with rho~_r = e^{i w_r t} rho_r and w_r = w_i - w_j for r = (i, j).
// The bare coherent part cancels exactly; what remains rotates only when it
// connects elements with different Bohr frequencies.
struct RotatingFrameRhs {
    std::vector<Entry> fixed, rotating;

    void operator()(const State& x, State& dx, double t) const {
        std::fill(dx.begin(), dx.end(), cplx(0.0));
        for (const Entry& e : fixed) dx[e.row] += e.value * x[e.col];
        for (const Entry& e : rotating) dx[e.row] += e.value * std::polar(1.0, e.freq * t) * x[e.col];
    }
};

}  // namespace

Trajectory evolve(const Liouvillian& L, const Eigen::MatrixXcd& rho0, const std::vector<double>& times,
                  const std::map<std::string, Eigen::MatrixXcd>& observables, const EvolveOptions& opt) {
    namespace ode = boost::numeric::odeint;
    const int M = L.dim_levels;
    const int d = M * M;
    if (rho0.rows() != M || rho0.cols() != M) throw std::invalid_argument("evolve: rho0 shape mismatch");
    if (times.empty()) throw std::invalid_argument("evolve: empty time list");
    if (!std::is_sorted(times.begin(), times.end())) throw std::invalid_argument("evolve: times must be ascending");
    for (const auto& [name, op] : observables)
        if (op.rows() != M || op.cols() != M) throw std::invalid_argument("evolve: observable '" + name + "' shape");

    Eigen::VectorXd bohr(d);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) bohr(L.index(i, j)) = L.level_freqs(i) - L.level_freqs(j);
    const double fscale = std::max(1.0, bohr.cwiseAbs().maxCoeff());

    RotatingFrameRhs rhs;
    const cplx i1(0.0, 1.0);
    for (int c = 0; c < d; ++c)
        for (int r = 0; r < d; ++r) {
            cplx v = L.matrix(r, c);
            if (r == c) v += i1 * bohr(r);
            if (v == cplx(0.0)) continue;
            const double f = bohr(r) - bohr(c);
            if (std::abs(f) < 1e-12 * fscale)
                rhs.fixed.push_back({r, c, v, 0.0});
            else
                rhs.rotating.push_back({r, c, v, f});
        }

    const double t0 = times.front();
    State x(d);
    for (int r = 0; r < d; ++r) x[r] = rho0.data()[r];  // rho~(t0) differs by phases fixed at t0
    for (int r = 0; r < d; ++r) x[r] *= std::polar(1.0, bohr(r) * t0);

    Trajectory traj;
    auto record = [&](const State& s, double t) {
        Eigen::MatrixXcd rho(M, M);
        for (int r = 0; r < d; ++r) {
            if (!std::isfinite(s[r].real()) || !std::isfinite(s[r].imag()))
                throw IntegratorError("evolve: non-finite state", t);
            rho.data()[r] = s[r] * std::polar(1.0, -bohr(r) * t);
        }
        traj.times.push_back(t);
        for (const auto& [name, op] : observables) traj.observables[name].push_back((rho * op).trace().real());
        if (opt.populations)
            for (int n = 0; n < M; ++n) traj.observables["p" + std::to_string(n)].push_back(rho(n, n).real());
        if (opt.keep_states) traj.states.push_back(std::move(rho));
    };

    if (times.size() == 1 || times.back() == t0) {
        for (double t : times) record(x, t);
        return traj;
    }

    double rate = 1e-12;
    for (const Entry& e : rhs.fixed) rate = std::max(rate, std::abs(e.value));
    for (const Entry& e : rhs.rotating) rate = std::max(rate, std::abs(e.value) + std::abs(e.freq));
    const double dt0 = std::min(0.1 / rate, (times.back() - t0) / 10.0);

    double last_t = t0;
    try {
        auto stepper = ode::make_dense_output(opt.atol, opt.rtol, ode::runge_kutta_dopri5<State>());
        ode::integrate_times(stepper, rhs, x, times.begin(), times.end(), dt0, [&](const State& s, double t) {
            record(s, t);
            last_t = t;
        });
    } catch (const IntegratorError&) {
        throw;
    } catch (const std::exception& e) {
        throw IntegratorError(std::string("evolve: integrator failed: ") + e.what(), last_t);
    }
    return traj;
}

}  // namespace usc
