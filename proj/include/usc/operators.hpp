// operators.hpp — truncated Fock/spin operators and the model Hamiltonians
//
// Tensor-product convention used throughout the library: the matter index is
// the slow index and the photon index is the fast one, i.e. the basis state
// |m_s> (x) |n> sits at row  s * n_fock + n.  Spin states are ordered by
// descending S_z, so s = 0 is the fully "up" state.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <utility>

namespace usc {

using cplx = std::complex<double>;

struct ModelParams {
    double omega_c{1.0};
    double omega_d{1.0};
    double g{0.0};
    double epsilon{0.0};
    int n_fock{0};  // 0 selects default_fock_size(g / omega_c)
    int spin_N{1};  // spin N/2 dipole; 1 is the Rabi model

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
    int resolved_fock() const;
    double coupling_ratio() const { return g / omega_c; }
    bool operator==(const ModelParams&) const = default;
};

struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    std::string label;

    OperatorMatrix() = default;
    OperatorMatrix(Eigen::MatrixXcd m, std::string l) : entries(std::move(m)), label(std::move(l)) {}

    int dim() const { return static_cast<int>(entries.rows()); }
    OperatorMatrix adjoint() const { return {entries.adjoint(), label + "^dag"}; }

    // ||H - H^dag||_F / ||H||_F (0 for the zero matrix).
    double hermiticity_defect() const;
};

struct SpinOperators {
    OperatorMatrix x, y, z;
};

// ceil(4 (g/w_c)^2 + 40): the polaron-displaced states sit around <n> ~ (g/w_c)^2.
int default_fock_size(double coupling_ratio);

// Largest dimension any builder will allocate.
inline constexpr int kMaxHilbertDim = 4096;

std::pair<OperatorMatrix, OperatorMatrix> fock_ladder(int n_fock);
SpinOperators spin_operators(int spin_N);

// Generalized Laguerre polynomial L_n^(alpha)(x) by upward three-term recurrence.
double laguerre(int n, int alpha, double x);

// <n| exp[x (a - a^dag)] |m> in closed form (Laguerre polynomial times a
// log-space factorial ratio).
double displacement_element(int n, int m, double x);
OperatorMatrix displacement_matrix(double x, int n_fock);

// Kronecker product in the (matter slow, photon fast) order.
OperatorMatrix tensor(const OperatorMatrix& matter, const OperatorMatrix& photon);
OperatorMatrix identity(int dim, std::string label = "1");

// H = w_c a^dag a + w_d s_z + eps s_x + g (a + a^dag) s_x
OperatorMatrix build_rabi(const ModelParams& p);

// w_c a^dag a + eps s_x + (w_d/2) [D(g/w_c) s+ + D^dag(g/w_c) s-], s± = s_z ± i s_y.
// Its spectrum is that of build_rabi shifted up by polaron_frame_shift(p).
OperatorMatrix build_polaron_rabi(const ModelParams& p);

// Polaron form of the extended Dicke model; equals build_polaron_rabi at N = 1.
OperatorMatrix build_polaron_edm(const ModelParams& p);

// g^2 / (4 w_c): E_polaron = E_lab + shift for the Rabi model.
double polaron_frame_shift(const ModelParams& p);

// H_EDM = w_c a^dag a + w_d S_z + g (a + a^dag) S_x + (g^2/w_c) S_x^2 + eps S_x
OperatorMatrix build_edm(const ModelParams& p);

// Holstein-Primakoff polaron EDM on (b slow) x (a fast):
//   w_c a^dag a + eps b^dag b + (w_d sqrt(N)/2) [D b^dag + D^dag b]
// Only meaningful for g >> w_c; evaluated as written at any g.
OperatorMatrix build_edm_hp(const ModelParams& p, int n_boson);

// a - a^dag and s_x (S_x) lifted to the full Hilbert space of the (N+1)-level
// model, the two system operators coupled to the baths.
OperatorMatrix cavity_quadrature(const ModelParams& p);
OperatorMatrix dipole_x(const ModelParams& p);
OperatorMatrix photon_number(const ModelParams& p);

}  // namespace usc
