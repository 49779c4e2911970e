#include "usc/response.hpp"

#include "usc/errors.hpp"
#include "usc/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace usc {

std::vector<double> SpectrumGrid::magnitudes() const {
    std::vector<double> out(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) out[k] = std::abs(values[k]);
    return out;
}

std::vector<double> SpectrumGrid::real_parts() const {
    std::vector<double> out(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) out[k] = values[k].real();
    return out;
}

std::vector<double> linear_grid(double start, double stop, int points) {
    if (points < 1) throw std::invalid_argument("linear_grid: points must be >= 1");
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = points == 1 ? start : start + (stop - start) * k / (points - 1);
    return g;
}

Eigen::VectorXd thermal_weights(const EigenSystem& eig, double temperature, int M, double max_tail) {
    if (temperature < 0.0) throw std::invalid_argument("temperature must be >= 0");
    if (M < 1 || M > eig.dim) throw std::invalid_argument("thermal_weights: bad level count");
    const double e0 = eig.frequencies(0);
    Eigen::VectorXd w(eig.dim);
    for (int n = 0; n < eig.dim; ++n) {
        const double de = eig.frequencies(n) - e0;
        w(n) = temperature == 0.0 ? (de == 0.0 ? 1.0 : 0.0) : std::exp(-de / temperature);
    }
    const double z = w.sum();
    const double tail = w.tail(eig.dim - M).sum() / z;
    if (tail > max_tail)
        throw TruncationError("thermal weight beyond the retained levels is " + std::to_string(tail) +
                              " (raise M or lower T)");
    return w.head(M) / w.head(M).sum();
}

std::vector<SpectralLine> spectral_lines(const EigenSystem& eig, const OperatorMatrix& op, double temperature, int M,
                                         double max_tail) {
    const Eigen::VectorXd pop = thermal_weights(eig, temperature, M, max_tail);
    const Eigen::MatrixXcd x = project_operator(eig, op, M);
    std::vector<SpectralLine> lines;
    for (int n = 0; n < M; ++n) {
        if (pop(n) == 0.0) continue;
        for (int m = 0; m < M; ++m) {
            const double w = pop(n) * std::norm(x(n, m));
            if (m == n || w == 0.0) continue;
            lines.push_back({n, m, eig.frequencies(m) - eig.frequencies(n), w});
        }
    }
    return lines;
}

SpectrumGrid broaden(const std::vector<SpectralLine>& lines, const std::vector<double>& omegas, double eta,
                     double temperature, SpectrumKind kind, double unit_scale) {
    if (!(eta > 0.0)) throw std::invalid_argument("broadening eta must be > 0");
    if (!std::is_sorted(omegas.begin(), omegas.end())) throw std::invalid_argument("frequency grid must be ascending");
    SpectrumGrid s;
    s.omegas = omegas;
    s.broadening = eta;
    s.temperature = temperature;
    s.kind = kind;
    s.values.assign(omegas.size(), cplx(0.0));
    for (std::size_t k = 0; k < omegas.size(); ++k) {
        double acc = 0.0;
        for (const SpectralLine& l : lines) {
            const double d = omegas[k] - l.omega;
            acc += l.weight * eta / M_PI / (d * d + eta * eta);
        }
        s.values[k] = unit_scale * acc;
    }
    return s;
}

SpectrumGrid cavity_structure_factor(const EigenSystem& eig, const ModelParams& p, double temperature,
                                     const std::vector<double>& omegas, double eta, int M, double unit_scale) {
    const auto lines = spectral_lines(eig, cavity_quadrature(p), temperature, M);
    return broaden(lines, omegas, eta, temperature, SpectrumKind::cavity_structure, unit_scale);
}

SpectrumGrid dipole_structure_factor(const EigenSystem& eig, const ModelParams& p, double temperature,
                                     const std::vector<double>& omegas, double eta, int M, double unit_scale) {
    const auto lines = spectral_lines(eig, dipole_x(p), temperature, M);
    return broaden(lines, omegas, eta, temperature, SpectrumKind::dipole_structure, unit_scale);
}

namespace {

SpectrumGrid impedance_from(const SpectrumGrid& s) {
    SpectrumGrid z = s;
    z.kind = SpectrumKind::impedance;
    const cplx i1(0.0, 1.0);
    for (std::size_t k = 0; k < s.values.size(); ++k) z.values[k] = -i1 * s.omegas[k] * s.values[k];
    return z;
}

}  // namespace

SpectrumGrid system_impedance(const SpectrumGrid& s_cavity) { return impedance_from(s_cavity); }

SpectrumGrid radiation_impedance(const SpectrumGrid& s_dipole) { return impedance_from(s_dipole); }

SpectrumGrid transmission(const SpectrumGrid& z_sys, double quality) {
    if (!(quality > 0.0)) throw std::invalid_argument("quality factor Q must be > 0");
    SpectrumGrid t = z_sys;
    t.kind = SpectrumKind::transmission;
    for (std::size_t k = 0; k < t.values.size(); ++k) {
        const cplx z = z_sys.values[k];
        t.values[k] = (z == cplx(0.0)) ? cplx(0.0) : z / (z + quality);
    }
    return t;
}

std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y, double min_rel_height) {
    if (x.size() != y.size()) throw std::invalid_argument("find_peaks: length mismatch");
    std::vector<Peak> peaks;
    if (y.size() < 3) return peaks;
    const double top = *std::max_element(y.begin(), y.end());
    for (std::size_t k = 1; k + 1 < y.size(); ++k) {
        if (!(y[k] > y[k - 1] && y[k] >= y[k + 1])) continue;
        if (y[k] < min_rel_height * top) continue;
        const double denom = y[k - 1] - 2.0 * y[k] + y[k + 1];
        double shift = denom != 0.0 ? 0.5 * (y[k - 1] - y[k + 1]) / denom : 0.0;
        shift = std::clamp(shift, -0.5, 0.5);
        const double h = 0.5 * (x[k + 1] - x[k - 1]);
        peaks.push_back({x[k] + shift * h, y[k] - 0.25 * (y[k - 1] - y[k + 1]) * shift});
    }
    return peaks;
}

}  // namespace usc
