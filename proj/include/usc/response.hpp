// response.hpp — thermal structure factors, impedances and transmission
//
// Natural units: hbar = Z_LC = Z_dip = 1, scaled by a single unit_scale factor.
#pragma once

#include "usc/eigensolver.hpp"

#include <vector>

namespace usc {

enum class SpectrumKind { cavity_structure, dipole_structure, transmission, impedance };

struct SpectrumGrid {
    std::vector<double> omegas;
    std::vector<cplx> values;
    double broadening{0.0};
    double temperature{0.0};
    SpectrumKind kind{SpectrumKind::cavity_structure};

    std::vector<double> magnitudes() const;
    std::vector<double> real_parts() const;
};

// One delta peak: population of `from` times |<from|X|to>|^2 at w_to - w_from.
struct SpectralLine {
    int from, to;
    double omega;
    double weight;
};

// Boltzmann weights of the lowest M levels; throws TruncationError when the
// weight beyond level M exceeds max_tail.
Eigen::VectorXd thermal_weights(const EigenSystem& eig, double temperature, int M, double max_tail = 1e-6);

// All lines among the lowest M levels, negative frequencies included.
std::vector<SpectralLine> spectral_lines(const EigenSystem& eig, const OperatorMatrix& op, double temperature, int M,
                                         double max_tail = 1e-6);

// Sum of weight * eta/pi / ((w - w_line)^2 + eta^2).
SpectrumGrid broaden(const std::vector<SpectralLine>& lines, const std::vector<double>& omegas, double eta,
                     double temperature, SpectrumKind kind, double unit_scale = 1.0);

// S_c built from a - a^dag, and S_dip built from s_x.
SpectrumGrid cavity_structure_factor(const EigenSystem& eig, const ModelParams& p, double temperature,
                                     const std::vector<double>& omegas, double eta, int M, double unit_scale = 1.0);
SpectrumGrid dipole_structure_factor(const EigenSystem& eig, const ModelParams& p, double temperature,
                                     const std::vector<double>& omegas, double eta, int M, double unit_scale = 1.0);

// -i w S(w).
SpectrumGrid system_impedance(const SpectrumGrid& s_cavity);
SpectrumGrid radiation_impedance(const SpectrumGrid& s_dipole);

// Q^-1 / (Q^-1 + 1/Z), written as Z / (Z + Q) so that Z = 0 gives T = 0.
SpectrumGrid transmission(const SpectrumGrid& z_sys, double quality);

struct Peak {
    double omega;
    double height;
};

// Strict local maxima of y above min_rel_height * max(y), refined by a
// parabola through the three neighbouring samples. Sorted by omega.
std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y, double min_rel_height = 0.0);

// Uniform grid of `points` samples over [start, stop].
std::vector<double> linear_grid(double start, double stop, int points);

}  // namespace usc
