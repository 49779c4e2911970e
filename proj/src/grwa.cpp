#include "usc/grwa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace usc {

namespace {

constexpr double kResonanceTol = 1e-9;

void require_symmetric(const ModelParams& p, const char* who) {
    p.validate();
    if (p.epsilon != 0.0) throw std::invalid_argument(std::string(who) + ": requires epsilon = 0");
}

// Half-angle pair of [[a, c], [c, b]] for the upper eigenvector (cos, sin).
std::pair<double, double> half_angles(double a, double b, double c, double scale) {
    const double r = std::hypot(a - b, 2.0 * c);
    if (r < kResonanceTol * scale) return {M_SQRT1_2, M_SQRT1_2};
    const double cs = std::sqrt(0.5 * (1.0 + (a - b) / r));
    double sn = std::sqrt(std::max(0.0, 0.5 * (1.0 - (a - b) / r)));
    if (c < 0.0) sn = -sn;
    return {cs, sn};
}

}  // namespace

std::pair<double, double> block_eigenvalues(double A, double B, double C) {
    const double mid = 0.5 * (A + B);
    // (A+B)^2/4 + C^2 - AB == (A-B)^2/4 + C^2; the right side avoids cancellation.
    const double root = std::sqrt(0.25 * (A - B) * (A - B) + C * C);
    return {mid + root, mid - root};
}

BlockCoefficients symmetric_block(int n, const ModelParams& p) {
    require_symmetric(p, "symmetric_block");
    if (n < 1) throw std::invalid_argument("symmetric_block: n must be >= 1");
    const double x = p.coupling_ratio();
    const double half = 0.5 * p.omega_d * std::exp(-0.5 * x * x);
    BlockCoefficients b;
    b.n = n;
    b.A = p.omega_c * n - half * laguerre(n, 0, x * x);
    b.B = p.omega_c * (n - 1) + half * laguerre(n - 1, 0, x * x);
    b.C = x * half * std::sqrt(1.0 / n) * laguerre(n - 1, 1, x * x);
    return b;
}

DressedPair symmetric_spectrum_and_hopfield(int n, const ModelParams& p) {
    const BlockCoefficients b = symmetric_block(n, p);
    DressedPair d;
    d.n = n;
    std::tie(d.omega_plus, d.omega_minus) = block_eigenvalues(b.A, b.B, b.C);
    std::tie(d.cos_half, d.sin_half) = half_angles(b.A, b.B, b.C, p.omega_c);
    return d;
}

double symmetric_ground_energy(const ModelParams& p) {
    const double x = p.coupling_ratio();
    return -0.5 * p.omega_d * std::exp(-0.5 * x * x);
}

std::vector<double> symmetric_levels(const ModelParams& p, int count) {
    require_symmetric(p, "symmetric_levels");
    if (count < 1) throw std::invalid_argument("symmetric_levels: count must be >= 1");
    std::vector<double> lv{symmetric_ground_energy(p)};
    for (int n = 1; n <= count + 1; ++n) {
        const DressedPair d = symmetric_spectrum_and_hopfield(n, p);
        lv.push_back(d.omega_plus);
        lv.push_back(d.omega_minus);
    }
    std::sort(lv.begin(), lv.end());
    lv.resize(count);
    return lv;
}

double rabi_frequency(int k, int n, const ModelParams& p) {
    if (k < 1 || n < k) throw std::invalid_argument("rabi_frequency: need n >= k >= 1");
    p.validate();
    const double x = p.coupling_ratio();
    if (x == 0.0) return 0.0;
    const double log_mag = k * std::log(x) - 0.5 * x * x + 0.5 * (std::lgamma(n - k + 1.0) - std::lgamma(n + 1.0));
    return p.omega_d * std::exp(log_mag) * laguerre(n - k, k, x * x);
}

KResonanceBlock k_resonance_block(int k, int n, const ModelParams& p) {
    if (k < 1 || n < k) throw std::invalid_argument("k_resonance_block: need n >= k >= 1");
    p.validate();
    const double x = p.coupling_ratio();
    KResonanceBlock blk;
    blk.k = k;
    blk.n = n;
    blk.detuning = p.omega_c * k - p.epsilon;
    blk.coupling = rabi_frequency(k, n, p);
    const double centre = p.omega_c * (n - 0.5 * k);
    const double root = 0.5 * std::hypot(blk.detuning, blk.coupling);
    blk.omega_plus = centre + root;
    blk.omega_minus = centre - root;
    // |left, n> sits at n w_c - eps/2, |right, n-k> at (n-k) w_c + eps/2.
    const double a = p.omega_c * n - 0.5 * p.epsilon;
    const double b = p.omega_c * (n - k) + 0.5 * p.epsilon;
    if (std::abs(blk.detuning) < kResonanceTol * p.omega_c) {
        blk.cos_half = blk.sin_half = M_SQRT1_2;
    } else {
        std::tie(blk.cos_half, blk.sin_half) = half_angles(a, b, 0.5 * blk.coupling, p.omega_c);
    }
    const double threshold = p.omega_d * std::exp(-0.5 * x * x);
    blk.valid = p.epsilon > threshold && p.omega_c > threshold;
    return blk;
}

double asymmetric_ground_energy(const ModelParams& p) {
    const double x = p.coupling_ratio();
    return -0.5 * std::sqrt(p.epsilon * p.epsilon + p.omega_d * p.omega_d * std::exp(-x * x));
}

std::vector<double> k_resonance_levels(int k, const ModelParams& p, int count) {
    if (k < 1) throw std::invalid_argument("k_resonance_levels: k must be >= 1");
    if (count < 1) throw std::invalid_argument("k_resonance_levels: count must be >= 1");
    p.validate();
    std::vector<double> lv{asymmetric_ground_energy(p)};
    for (int n = 1; n < k; ++n) lv.push_back(p.omega_c * n - 0.5 * p.epsilon);
    for (int n = k; n < k + count + 1; ++n) {
        const KResonanceBlock b = k_resonance_block(k, n, p);
        lv.push_back(b.omega_plus);
        lv.push_back(b.omega_minus);
    }
    std::sort(lv.begin(), lv.end());
    lv.resize(count);
    return lv;
}

std::vector<MatrixElementRow> dressed_matrix_elements(int n, const ModelParams& p) {
    require_symmetric(p, "dressed_matrix_elements");
    if (n < 2) throw std::invalid_argument("dressed_matrix_elements: n must be >= 2");
    const DressedPair hi = symmetric_spectrum_and_hopfield(n, p);
    const DressedPair lo = symmetric_spectrum_and_hopfield(n - 1, p);
    const DressedPair one = symmetric_spectrum_and_hopfield(1, p);
    const double c = hi.cos_half, s = hi.sin_half, c1 = lo.cos_half, s1 = lo.sin_half;
    const double rn = std::sqrt(static_cast<double>(n)), rn1 = std::sqrt(n - 1.0);
    const std::string up = "+," + std::to_string(n), um = "-," + std::to_string(n);
    const std::string dp = "+," + std::to_string(n - 1), dm = "-," + std::to_string(n - 1);
    const std::string cav = "a^dag-a", sx = "s_x";
    return {
        {up, dm, cav, rn1 * c1 * s - rn * c * s1},
        {um, dp, cav, rn1 * s1 * c - rn * s * c1},
        {up, dp, cav, rn1 * s1 * s + rn * c * c1},
        {um, dm, cav, rn1 * c1 * c + rn * s * s1},
        {"down,0", "+,1", "a+a^dag", one.cos_half},
        {"down,0", "-,1", "a+a^dag", -one.sin_half},
        {up, dm, sx, -0.5 * s1 * s},
        {um, dp, sx, 0.5 * c1 * c},
        {up, dp, sx, 0.5 * c1 * s},
        {um, dm, sx, -0.5 * s1 * c},
        {"down,0", "+,1", sx, 0.5 * one.sin_half},
        {"down,0", "-,1", sx, 0.5 * one.cos_half},
    };
}

std::vector<RateLimitRow> usc_rate_limits(const ModelParams& p, const BathSpec& cavity, const BathSpec& dipole,
                                          int n_max) {
    require_symmetric(p, "usc_rate_limits");
    if (n_max < 2) throw std::invalid_argument("usc_rate_limits: n_max must be >= 2");
    std::vector<RateLimitRow> rows;
    for (int n = 2; n <= n_max; ++n) {
        const DressedPair hi = symmetric_spectrum_and_hopfield(n, p);
        const DressedPair lo = symmetric_spectrum_and_hopfield(n - 1, p);
        const auto me = dressed_matrix_elements(n, p);
        const double w_pp = hi.omega_plus - lo.omega_plus;
        const double w_mm = hi.omega_minus - lo.omega_minus;
        const double w_mp = hi.omega_minus - lo.omega_plus;
        const std::string tag = std::to_string(n) + ")(";
        // Large g: |+,n> -> |down,n> and |-,n> -> |up,n-1>, so the cavity rows
        // reduce to the bare ladder elements n and n-1.
        rows.push_back({"cavity (+," + tag + "+," + std::to_string(n - 1) + ")",
                        cavity.spectral_density(w_pp) * me[2].value * me[2].value,
                        cavity.spectral_density(w_pp) * n});
        rows.push_back({"cavity (-," + tag + "-," + std::to_string(n - 1) + ")",
                        cavity.spectral_density(w_mm) * me[3].value * me[3].value,
                        cavity.spectral_density(w_mm) * (n - 1)});
        rows.push_back({"dipole (-," + tag + "+," + std::to_string(n - 1) + ")",
                        dipole.spectral_density(w_mp) * me[7].value * me[7].value, 0.0});
    }
    return rows;
}

}  // namespace usc
