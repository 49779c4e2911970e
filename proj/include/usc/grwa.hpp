// grwa.hpp — closed-form generalized rotating-wave approximation
//
// All energies here are polaron-frame energies; subtract
// polaron_frame_shift(p) to compare with build_rabi.
#pragma once

#include "usc/master_equation.hpp"
#include "usc/operators.hpp"

#include <string>
#include <vector>

namespace usc {

// 2x2 block on {|down, n>, |up, n-1>} of the symmetric (epsilon = 0) model.
struct BlockCoefficients {
    int n{0};
    double A{0.0}, B{0.0}, C{0.0};
};

struct DressedPair {
    int n{0};
    double omega_plus{0.0}, omega_minus{0.0};
    // |+,n> = cos_half |down,n> + sin_half |up,n-1>
    // |-,n> = -sin_half |down,n> + cos_half |up,n-1>
    double cos_half{0.0}, sin_half{0.0};
};

BlockCoefficients symmetric_block(int n, const ModelParams& p);
DressedPair symmetric_spectrum_and_hopfield(int n, const ModelParams& p);

// (A+B)/2 +- sqrt((A+B)^2/4 + C^2 - A B), as printed.
std::pair<double, double> block_eigenvalues(double A, double B, double C);

// -(w_d/2) exp(-x^2/2), the energy of |down, 0>.
double symmetric_ground_energy(const ModelParams& p);

// Ground state plus both branches of the lowest blocks, ascending.
std::vector<double> symmetric_levels(const ModelParams& p, int count);

// 2x2 block on {|left, n>, |right, n-k>} near epsilon = k w_c.
struct KResonanceBlock {
    int k{0}, n{0};
    double detuning{0.0};  // k w_c - epsilon
    double coupling{0.0};  // w_d D_{n,n-k} with the printed sign
    double omega_plus{0.0}, omega_minus{0.0};
    double cos_half{0.0}, sin_half{0.0};
    bool valid{true};      // epsilon and w_c exceed w_d exp(-x^2/2)

    double splitting() const { return omega_plus - omega_minus; }
    // <+|s_x|-> inside the block.
    double sx_element() const { return cos_half * sin_half; }
};

KResonanceBlock k_resonance_block(int k, int n, const ModelParams& p);

// -sqrt(eps^2 + w_d^2 exp(-x^2)) / 2
double asymmetric_ground_energy(const ModelParams& p);

// Ground state, the unpaired |left, n> (1 <= n < k) at n w_c - eps/2, and the
// k-resonance blocks, ascending.
std::vector<double> k_resonance_levels(int k, const ModelParams& p, int count);

// w_d x^k e^{-x^2/2} L_{n-k}^{(k)}(x^2) sqrt((n-k)!/n!), with x = g/w_c.
double rabi_frequency(int k, int n, const ModelParams& p);

struct MatrixElementRow {
    std::string bra, ket, op;
    double value;
};

// Dressed-state matrix elements between blocks n and n-1 (n >= 2) and the
// ground-state rows for block 1. Signs follow the dressed states above.
std::vector<MatrixElementRow> dressed_matrix_elements(int n, const ModelParams& p);

struct RateLimitRow {
    std::string transition;
    double grwa_rate;  // rate law evaluated on gRWA energies and matrix elements
    double usc_limit;  // large-g limit (bare cavity ladder, vanishing dipole rate)
};

// Cavity (+,n)->(+,n-1), (-,n)->(-,n-1) and dipole (-,n)->(+,n-1) rates for
// n = 2..n_max.
std::vector<RateLimitRow> usc_rate_limits(const ModelParams& p, const BathSpec& cavity, const BathSpec& dipole,
                                          int n_max);

}  // namespace usc
