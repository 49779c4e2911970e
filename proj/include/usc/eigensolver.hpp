// eigensolver.hpp — Hermitian diagonalization with a fixed phase convention
#pragma once

#include "usc/operators.hpp"

#include <vector>

namespace usc {

struct EigenSystem {
    Eigen::VectorXd frequencies;  // ascending
    Eigen::MatrixXcd vectors;     // column n is the eigenvector of frequencies(n)
    int dim{0};
    int converged_levels{0};      // dim unless certified otherwise
    std::string label;

    int size() const { return dim; }
};

// Full dense solve. Each eigenvector is rotated so its largest-magnitude
// component is real and positive (lowest index wins ties).
// Throws std::invalid_argument if the input is not Hermitian to herm_tol.
EigenSystem diagonalize(const OperatorMatrix& h, double herm_tol = 1e-10);

enum class HamiltonianKind { rabi, polaron_rabi, edm };

OperatorMatrix build_hamiltonian(HamiltonianKind kind, const ModelParams& p);

struct ConvergenceReport {
    std::vector<int> fock_sizes;
    std::vector<Eigen::VectorXd> levels;  // lowest `n_levels` per truncation
    Eigen::VectorXd drift;                // |E(last) - E(second to last)| per level
    int converged_levels{0};              // largest prefix with drift < tol
};

ConvergenceReport convergence_check(const ModelParams& p, const std::vector<int>& fock_sizes,
                                    HamiltonianKind kind = HamiltonianKind::rabi, int n_levels = 12,
                                    double tol = 1e-6);

// Diagonalize and stamp converged_levels from a check against n_fock + 20.
EigenSystem certified_spectrum(const ModelParams& p, HamiltonianKind kind, int n_levels = 12,
                               double tol = 1e-6);

}  // namespace usc
