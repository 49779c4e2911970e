#include "usc/errors.hpp"
#include "usc/rabi_fit.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace usc;

namespace {

std::vector<double> grid(double t_max, int n) {
    std::vector<double> t(n);
    for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
    return t;
}

}  // namespace

TEST_CASE("synthetic damped cosine") {
    const auto t = grid(200.0, 4000);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) y[i] = std::exp(-0.01 * t[i]) * std::cos(0.3 * t[i]);
    const RabiFit fit = fit_rabi_decay(t, y);
    CHECK(fit.omega == doctest::Approx(0.3).epsilon(0.01));
    CHECK(fit.decay == doctest::Approx(0.01).epsilon(0.01));
    CHECK(fit.extrema >= 3);
}

TEST_CASE("offset, phase and mild noise") {
    const auto t = grid(400.0, 6000);
    std::mt19937 rng(3);
    std::normal_distribution<double> noise(0.0, 1e-4);
    std::vector<double> y(t.size());
    // the collapse shape: e^{-rt}(cos(w t) + 1)/2 - 1/2
    for (std::size_t i = 0; i < t.size(); ++i)
        y[i] = 0.5 * std::exp(-0.004 * t[i]) * (std::cos(0.11 * t[i] + 0.7) + 1.0) - 0.5 + noise(rng);
    const RabiFit fit = fit_rabi_decay(t, y);
    CHECK(fit.omega == doctest::Approx(0.11).epsilon(0.01));
    CHECK(fit.decay == doctest::Approx(0.004).epsilon(0.05));
}

TEST_CASE("rejects short and overdamped series") {
    const auto t = grid(10.0, 500);
    std::vector<double> y(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) y[i] = std::cos(0.3 * t[i]);
    CHECK_THROWS(fit_rabi_decay(t, y));

    const auto tl = grid(100.0, 2000);
    std::vector<double> flat(tl.size());
    for (std::size_t i = 0; i < tl.size(); ++i) flat[i] = std::exp(-0.5 * tl[i]);
    CHECK_THROWS(fit_rabi_decay(tl, flat));

    CHECK_THROWS_AS(fit_rabi_decay({0.0, 1.0}, {1.0}), std::invalid_argument);
}
