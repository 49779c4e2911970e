// double_well.hpp — 1D tilted double well and its two-level reduction
#pragma once

#include <utility>
#include <vector>

namespace usc {

// V(x) = -(mu2^2/2) x^2 + (mu4^4/4) x^4 + qE x, with hbar = 1.
struct WellParams {
    double mu2{3.0};
    double mu4{1.0};
    double qE{0.0};
    double mass{1.0};
    int grid_points{20000};
    double x_max{6.0};

    void validate() const;
    double potential(double x) const;
    bool operator==(const WellParams&) const = default;
};

struct WellLevel {
    double energy;
    std::vector<double> psi;  // normalized: sum |psi|^2 dx = 1
};

struct WellSolution {
    std::vector<double> x;
    double dx{0.0};
    std::vector<WellLevel> levels;
    // Set when some returned level has |psi| > 1e-6 at a wall; x_max is too small.
    bool boundary_warning{false};

    // Grid quadrature of psi_a * x * psi_b.
    double position_element(int a, int b) const;
};

// Lowest n_levels eigenpairs of -(1/2m) d^2/dx^2 + V on the interior points
// of [-x_max, x_max] with psi = 0 at both walls (second-order stencil).
WellSolution solve_double_well(const WellParams& p, int n_levels);

struct TlaReport {
    double omega_d{0.0};
    double x_10{0.0};
    double epsilon{0.0};
    double gap_ratio{0.0};
    double barrier{0.0};  // central barrier height of the untilted potential
    bool valid{false};
    bool boundary_warning{false};
};

// Projects onto the two lowest untilted eigenstates; x_10 is made positive.
TlaReport tla_parameters(const WellParams& p);

// <L|x|L> and <R|x|R> for the bare two-level localized states at the tilt of p.
std::pair<double, double> localized_dipole_moments(const WellParams& p);

}  // namespace usc
