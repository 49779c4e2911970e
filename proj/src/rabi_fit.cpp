#include "usc/rabi_fit.hpp"

#include "usc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

namespace usc {

namespace {

struct Spectrum {
    const std::vector<double>& t;
    std::vector<double> y;  // windowed, mean removed

    double power(double w) const {
        std::complex<double> acc(0.0);
        for (std::size_t k = 0; k < t.size(); ++k) acc += y[k] * std::polar(1.0, -w * t[k]);
        return std::norm(acc);
    }
};

int count_local_extrema(const std::vector<double>& v) {
    int n = 0;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
        const double a = v[k] - v[k - 1], b = v[k + 1] - v[k];
        if ((a > 0 && b <= 0) || (a < 0 && b >= 0)) ++n;
    }
    return n;
}

}  // namespace

RabiFit fit_rabi_decay(const std::vector<double>& times, const std::vector<double>& values) {
    const std::size_t n = times.size();
    if (n != values.size()) throw std::invalid_argument("fit_rabi_decay: length mismatch");
    if (n < 16) throw std::invalid_argument("fit_rabi_decay: need at least 16 samples");
    if (!std::is_sorted(times.begin(), times.end()) || times.back() <= times.front())
        throw std::invalid_argument("fit_rabi_decay: times must be ascending");

    if (count_local_extrema(values) < 2) throw OverdampedSeriesError("fit_rabi_decay: fewer than two extrema");

    const double span = times.back() - times.front();
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    Spectrum spec{times, std::vector<double>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const double hann = 0.5 * (1.0 - std::cos(2.0 * M_PI * k / (n - 1)));
        spec.y[k] = (values[k] - mean) * hann;
    }

    // Coarse scan at a quarter of the natural resolution, up to Nyquist.
    const double step = 2.0 * M_PI / span / 4.0;
    const double nyquist = M_PI * (n - 1) / span;
    double best_w = step, best_p = -1.0;
    for (double w = step; w <= nyquist; w += step) {
        const double pw = spec.power(w);
        if (pw > best_p) {
            best_p = pw;
            best_w = w;
        }
    }
    double lo = std::max(best_w - step, 0.5 * step), hi = best_w + step;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = spec.power(x1), f2 = spec.power(x2);
    while (hi - lo > 1e-10 * best_w) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = spec.power(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = spec.power(x2);
        }
    }
    RabiFit fit;
    fit.omega = 0.5 * (lo + hi);
    if (span * fit.omega / (2.0 * M_PI) < 5.0)
        throw std::invalid_argument("fit_rabi_decay: series covers fewer than 5 periods");

    // Phase of the dominant component locates the extrema at (phase + j pi) / omega.
    std::complex<double> proj(0.0);
    for (std::size_t k = 0; k < n; ++k) proj += spec.y[k] * std::polar(1.0, -fit.omega * times[k]);
    const double phase = -std::arg(proj);  // y ~ cos(omega t - phase)
    const double half = M_PI / fit.omega;
    std::vector<std::size_t> ext;
    for (int j = static_cast<int>(std::floor((times.front() * fit.omega - phase) / M_PI));; ++j) {
        const double centre = (phase + j * M_PI) / fit.omega;
        const double a = centre - 0.5 * half, b = centre + 0.5 * half;
        if (a > times.back()) break;
        if (a < times.front() || b > times.back()) continue;
        const bool want_max = (j % 2 == 0);
        std::size_t pick = n;
        for (std::size_t k = 0; k < n; ++k) {
            if (times[k] < a || times[k] >= b) continue;
            if (pick == n || (want_max ? values[k] > values[pick] : values[k] < values[pick])) pick = k;
        }
        if (pick != n) ext.push_back(pick);
    }
    if (ext.size() < 3) throw OverdampedSeriesError("fit_rabi_decay: too few resolved extrema");

    // Least squares of log swing against swing midpoint.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t k = 0; k + 1 < ext.size(); ++k) {
        const double swing = std::abs(values[ext[k + 1]] - values[ext[k]]);
        if (!(swing > 0.0)) continue;
        const double tm = 0.5 * (times[ext[k]] + times[ext[k + 1]]);
        const double ly = std::log(swing);
        sx += tm;
        sy += ly;
        sxx += tm * tm;
        sxy += tm * ly;
        ++m;
    }
    if (m < 2) throw OverdampedSeriesError("fit_rabi_decay: envelope not resolvable");
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    fit.decay = -slope;
    fit.extrema = static_cast<int>(ext.size());
    return fit;
}

}  // namespace usc
