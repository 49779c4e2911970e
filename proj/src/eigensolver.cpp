#include "usc/eigensolver.hpp"

#include "usc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace usc {

EigenSystem diagonalize(const OperatorMatrix& h, double herm_tol) {
    if (h.entries.rows() != h.entries.cols() || h.entries.rows() == 0)
        throw std::invalid_argument("diagonalize: matrix must be square and non-empty");
    const double defect = h.hermiticity_defect();
    if (!(defect <= herm_tol))
        throw std::invalid_argument("diagonalize: input '" + h.label + "' is not Hermitian (defect " +
                                    std::to_string(defect) + ")");

    // Hermitize so round-off in the builder cannot leak into the solver.
    const Eigen::MatrixXcd sym = 0.5 * (h.entries + h.entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    if (solver.info() != Eigen::Success) throw ConvergenceError("diagonalize: eigensolver did not converge");

    EigenSystem out;
    out.dim = h.dim();
    out.converged_levels = out.dim;
    out.label = h.label;
    out.frequencies = solver.eigenvalues();
    out.vectors = solver.eigenvectors();

    for (int c = 0; c < out.dim; ++c) {
        auto col = out.vectors.col(c);
        double best = 0.0;
        for (int r = 0; r < out.dim; ++r) best = std::max(best, std::abs(col(r)));
        const double cutoff = best * (1.0 - 1e-12);
        int pick = 0;
        while (std::abs(col(pick)) < cutoff) ++pick;
        const cplx phase = std::conj(col(pick)) / std::abs(col(pick));
        col *= phase;
        col(pick) = std::abs(col(pick));
    }
    return out;
}

OperatorMatrix build_hamiltonian(HamiltonianKind kind, const ModelParams& p) {
    switch (kind) {
        case HamiltonianKind::rabi: return build_rabi(p);
        case HamiltonianKind::polaron_rabi: return build_polaron_rabi(p);
        case HamiltonianKind::edm: return build_edm(p);
    }
    throw std::invalid_argument("build_hamiltonian: unknown kind");
}

ConvergenceReport convergence_check(const ModelParams& p, const std::vector<int>& fock_sizes,
                                    HamiltonianKind kind, int n_levels, double tol) {
    if (fock_sizes.size() < 2) throw std::invalid_argument("convergence_check: need at least two truncations");
    if (!std::is_sorted(fock_sizes.begin(), fock_sizes.end()))
        throw std::invalid_argument("convergence_check: fock_sizes must be ascending");
    if (n_levels < 1) throw std::invalid_argument("convergence_check: n_levels must be >= 1");

    ConvergenceReport rep;
    rep.fock_sizes = fock_sizes;
    for (int nf : fock_sizes) {
        ModelParams q = p;
        q.n_fock = nf;
        const EigenSystem es = diagonalize(build_hamiltonian(kind, q));
        const int take = std::min(n_levels, es.dim);
        rep.levels.push_back(es.frequencies.head(take));
    }
    const Eigen::VectorXd& last = rep.levels.back();
    const Eigen::VectorXd& prev = rep.levels[rep.levels.size() - 2];
    const int n = static_cast<int>(std::min(last.size(), prev.size()));
    rep.drift = (last.head(n) - prev.head(n)).cwiseAbs();
    rep.converged_levels = 0;
    while (rep.converged_levels < n && rep.drift(rep.converged_levels) < tol) ++rep.converged_levels;
    return rep;
}

EigenSystem certified_spectrum(const ModelParams& p, HamiltonianKind kind, int n_levels, double tol) {
    const int nf = p.resolved_fock();
    ModelParams q = p;
    q.n_fock = nf;
    EigenSystem es = diagonalize(build_hamiltonian(kind, q));
    const ConvergenceReport rep = convergence_check(q, {nf, nf + 20}, kind, n_levels, tol);
    es.converged_levels = rep.converged_levels;
    return es;
}

}  // namespace usc
