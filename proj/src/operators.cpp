// operators.cpp — truncated operators and model Hamiltonians
#include "usc/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace usc {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_dim(long dim, const char* what) {
    if (dim > kMaxHilbertDim) {
        throw std::invalid_argument(std::string(what) + ": Hilbert dimension " + std::to_string(dim) +
                                    " exceeds cap " + std::to_string(kMaxHilbertDim));
    }
}

}  // namespace

void ModelParams::validate() const {
    require(omega_c > 0.0, "omega_c must be > 0");
    require(omega_d > 0.0, "omega_d must be > 0");
    require(g >= 0.0, "g must be >= 0");
    require(std::isfinite(epsilon), "epsilon must be finite");
    require(n_fock == 0 || n_fock >= 2, "n_fock must be >= 2 (or 0 for the default)");
    require(spin_N >= 1, "spin_N must be >= 1");
}

int ModelParams::resolved_fock() const {
    return n_fock > 0 ? n_fock : default_fock_size(coupling_ratio());
}

double OperatorMatrix::hermiticity_defect() const {
    const double norm = entries.norm();
    if (norm == 0.0) return 0.0;
    return (entries - entries.adjoint()).norm() / norm;
}

int default_fock_size(double coupling_ratio) {
    return static_cast<int>(std::ceil(4.0 * coupling_ratio * coupling_ratio + 40.0));
}

std::pair<OperatorMatrix, OperatorMatrix> fock_ladder(int n_fock) {
    require(n_fock >= 2, "fock_ladder: n_fock must be >= 2");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_fock, n_fock);
    for (int n = 1; n < n_fock; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    OperatorMatrix lower{a, "a"};
    OperatorMatrix upper{a.adjoint(), "a^dag"};
    return {std::move(lower), std::move(upper)};
}

SpinOperators spin_operators(int spin_N) {
    require(spin_N >= 1, "spin_operators: spin_N must be >= 1");
    const int dim = spin_N + 1;
    const double j = 0.5 * spin_N;
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        const double m = j - s;
        sz(s, s) = m;
        // S+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> is row s-1
        if (s > 0) sp(s - 1, s) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const Eigen::MatrixXcd sm = sp.adjoint();
    const cplx i(0.0, 1.0);
    return {{0.5 * (sp + sm), "S_x"}, {(sp - sm) / (2.0 * i), "S_y"}, {sz, "S_z"}};
}

double laguerre(int n, int alpha, double x) {
    require(n >= 0 && alpha >= 0, "laguerre: n and alpha must be >= 0");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double displacement_element(int n, int m, double x) {
    require(n >= 0 && m >= 0, "displacement_element: indices must be >= 0");
    // exp[x(a - a^dag)] is the Glauber displacement with alpha = -x.
    const int lo = std::min(n, m);
    const int k = std::abs(n - m);
    if (x == 0.0) return k == 0 ? 1.0 : 0.0;
    const double lag = laguerre(lo, k, x * x);
    const double log_mag =
        k * std::log(std::abs(x)) - 0.5 * x * x + 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0));
    double value = std::exp(log_mag) * lag;
    // <n|D|m> carries (-x)^{n-m} below the diagonal and x^{m-n} above it.
    const bool negate = (n > m && (k % 2 == 1) && x > 0) || (n < m && (k % 2 == 1) && x < 0);
    return negate ? -value : value;
}

OperatorMatrix displacement_matrix(double x, int n_fock) {
    require(n_fock >= 2, "displacement_matrix: n_fock must be >= 2");
    Eigen::MatrixXcd d(n_fock, n_fock);
    for (int n = 0; n < n_fock; ++n)
        for (int m = 0; m < n_fock; ++m) d(n, m) = displacement_element(n, m, x);
    return {d, "D(" + std::to_string(x) + ")"};
}

OperatorMatrix tensor(const OperatorMatrix& matter, const OperatorMatrix& photon) {
    const int dm = matter.dim();
    const int dp = photon.dim();
    check_dim(static_cast<long>(dm) * dp, "tensor");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dm * dp, dm * dp);
    for (int r = 0; r < dm; ++r)
        for (int c = 0; c < dm; ++c) {
            const cplx w = matter.entries(r, c);
            if (w != cplx(0.0)) out.block(r * dp, c * dp, dp, dp) = w * photon.entries;
        }
    return {std::move(out), matter.label + "(x)" + photon.label};
}

OperatorMatrix identity(int dim, std::string label) {
    return {Eigen::MatrixXcd::Identity(dim, dim), std::move(label)};
}

namespace {

struct Blocks {
    int nf;
    int ns;
    OperatorMatrix a, adag, num, one_f, one_s;
    SpinOperators spin;
};

Blocks make_blocks(const ModelParams& p) {
    p.validate();
    Blocks b;
    b.nf = p.resolved_fock();
    b.ns = p.spin_N + 1;
    check_dim(static_cast<long>(b.nf) * b.ns, "model");
    auto [a, adag] = fock_ladder(b.nf);
    b.a = std::move(a);
    b.adag = std::move(adag);
    b.num = {b.adag.entries * b.a.entries, "a^dag a"};
    b.one_f = identity(b.nf);
    b.one_s = identity(b.ns);
    b.spin = spin_operators(p.spin_N);
    return b;
}

void require_rabi(const ModelParams& p, const char* who) {
    if (p.spin_N != 1) throw std::invalid_argument(std::string(who) + ": requires spin_N = 1");
}

}  // namespace

OperatorMatrix build_rabi(const ModelParams& p) {
    require_rabi(p, "build_rabi");
    const Blocks b = make_blocks(p);
    Eigen::MatrixXcd h = p.omega_c * tensor(b.one_s, b.num).entries;
    h += p.omega_d * tensor(b.spin.z, b.one_f).entries;
    h += p.epsilon * tensor(b.spin.x, b.one_f).entries;
    h += p.g * tensor(b.spin.x, {b.a.entries + b.adag.entries, "a+a^dag"}).entries;
    return {std::move(h), "H_Rabi"};
}

OperatorMatrix build_edm(const ModelParams& p) {
    const Blocks b = make_blocks(p);
    const Eigen::MatrixXcd sx2 = b.spin.x.entries * b.spin.x.entries;
    Eigen::MatrixXcd h = p.omega_c * tensor(b.one_s, b.num).entries;
    h += p.omega_d * tensor(b.spin.z, b.one_f).entries;
    h += p.epsilon * tensor(b.spin.x, b.one_f).entries;
    h += p.g * tensor(b.spin.x, {b.a.entries + b.adag.entries, "a+a^dag"}).entries;
    h += (p.g * p.g / p.omega_c) * tensor({sx2, "S_x^2"}, b.one_f).entries;
    return {std::move(h), p.spin_N == 1 ? "H_EDM(N=1)" : "H_EDM"};
}

OperatorMatrix build_polaron_edm(const ModelParams& p) {
    const Blocks b = make_blocks(p);
    const OperatorMatrix d = displacement_matrix(p.coupling_ratio(), b.nf);
    const cplx i(0.0, 1.0);
    const OperatorMatrix s_raise{b.spin.z.entries + i * b.spin.y.entries, "s+"};
    const OperatorMatrix s_lower{b.spin.z.entries - i * b.spin.y.entries, "s-"};
    Eigen::MatrixXcd h = p.omega_c * tensor(b.one_s, b.num).entries;
    h += p.epsilon * tensor(b.spin.x, b.one_f).entries;
    h += 0.5 * p.omega_d * (tensor(s_raise, d).entries + tensor(s_lower, d.adjoint()).entries);
    return {std::move(h), "H_polaron"};
}

OperatorMatrix build_polaron_rabi(const ModelParams& p) {
    require_rabi(p, "build_polaron_rabi");
    OperatorMatrix h = build_polaron_edm(p);
    h.label = "H_polaron_Rabi";
    return h;
}

double polaron_frame_shift(const ModelParams& p) { return p.g * p.g / (4.0 * p.omega_c); }

OperatorMatrix build_edm_hp(const ModelParams& p, int n_boson) {
    p.validate();
    require(n_boson >= 2, "build_edm_hp: n_boson must be >= 2");
    const int nf = p.resolved_fock();
    check_dim(static_cast<long>(nf) * n_boson, "build_edm_hp");
    auto [a, adag] = fock_ladder(nf);
    auto [b, bdag] = fock_ladder(n_boson);
    const OperatorMatrix d = displacement_matrix(p.coupling_ratio(), nf);
    const OperatorMatrix one_f = identity(nf);
    const OperatorMatrix one_b = identity(n_boson);
    Eigen::MatrixXcd h = p.omega_c * tensor(one_b, {adag.entries * a.entries, "n_a"}).entries;
    h += p.epsilon * tensor({bdag.entries * b.entries, "n_b"}, one_f).entries;
    h += 0.5 * p.omega_d * std::sqrt(static_cast<double>(p.spin_N)) *
         (tensor(bdag, d).entries + tensor(b, d.adjoint()).entries);
    return {std::move(h), "H_EDM_HP"};
}

OperatorMatrix cavity_quadrature(const ModelParams& p) {
    const Blocks b = make_blocks(p);
    return tensor(b.one_s, {b.a.entries - b.adag.entries, "a-a^dag"});
}

OperatorMatrix dipole_x(const ModelParams& p) {
    const Blocks b = make_blocks(p);
    return tensor(b.spin.x, b.one_f);
}

OperatorMatrix photon_number(const ModelParams& p) {
    const Blocks b = make_blocks(p);
    return tensor(b.one_s, b.num);
}

}  // namespace usc
