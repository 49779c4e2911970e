// edm.hpp — effective dipole dynamics of the extended Dicke model after
// adiabatic elimination of a strongly damped cavity
#pragma once

#include "usc/master_equation.hpp"

#include <vector>

namespace usc {

struct EdmParams {
    double omega_c{1.0};
    double omega_d{1.0};
    double g{1.0};
    double epsilon{1.0};
    int N{1};
    double gamma{0.1};
    double T{0.0};
    int sum_cutoff{0};  // 0 selects default_sum_cutoff()
    int n_boson{20};

    void validate() const;
    double coupling_ratio() const { return g / omega_c; }
    // w_d^2 N / gamma
    double rate_scale() const { return omega_d * omega_d * N / gamma; }
};

// Smallest Q with lambda^Q / Q! < 1e-10 of the largest Poisson term, where
// lambda = x^2 (1 + N_T(w_c)).
int default_sum_cutoff(const EdmParams& p);

// Lorentzian double sum over emitted (q) and absorbed (r) photons, skipping
// only q = r = 0. Throws TruncationError when the neglected tail exceeds 1e-8
// of the retained sum.
double gamma_T(double omega, const EdmParams& p);

// gamma_T(eps) - gamma_T(-eps)
double total_rate(const EdmParams& p);

struct SaturationReport {
    double n0;            // gamma_T(-eps) / total_rate
    double thermal_ref;   // N_T(k w_c) with k the nearest resonance (>= 1)
    int k;
};

// Throws NoNetCoolingError when total_rate <= 0.
SaturationReport saturation_number(const EdmParams& p);

struct EdmValidity {
    bool adiabatic;  // gamma >= Omega_(k,k)
    bool ultrastrong;  // g / w_c >= 1
};

EdmValidity edm_validity(const EdmParams& p);

// Number-state master equation with cooling gamma_T(eps) D[b] and heating
// gamma_T(-eps) D[b^dag], from |m0>. Records "nb" = <b^dag b> and the
// populations; warns when population at n_boson - 1 exceeds 1e-6.
Trajectory effective_dipole_evolve(const EdmParams& p, int m0, const std::vector<double>& times);

}  // namespace usc
