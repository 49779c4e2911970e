#include "usc/grwa.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace usc;

namespace {

ModelParams at_g(double g, double eps = 0.0, int n_fock = 0) {
    ModelParams p;
    p.g = g;
    p.epsilon = eps;
    p.n_fock = n_fock;
    return p;
}

double max_level_deviation(const ModelParams& p, const std::vector<double>& approx) {
    const EigenSystem es = diagonalize(build_rabi(p));
    double worst = 0.0;
    for (std::size_t k = 0; k < approx.size(); ++k)
        worst = std::max(worst, std::abs(approx[k] - polaron_frame_shift(p) - es.frequencies(k)));
    return worst;
}

// Largest |closed form - <bra|op|ket>| over the twelve rows for n = 2..4, with
// the states either built from the block vectors or matched to eigenvectors.
double matrix_element_deviation(double g, bool exact) {
    const int nf = 100;
    const ModelParams p = at_g(g, 0.0, nf);
    const EigenSystem es = diagonalize(build_polaron_rabi(p));
    const Eigen::MatrixXcd sx = dipole_x(p).entries;
    const Eigen::MatrixXcd quad = cavity_quadrature(p).entries;
    auto [a, adag] = fock_ladder(nf);
    const Eigen::MatrixXcd pos = tensor(identity(2), {a.entries + adag.entries, "a+a^dag"}).entries;

    auto dressed = [&](int n, bool plus) {
        const DressedPair d = symmetric_spectrum_and_hopfield(n, p);
        const Eigen::VectorXcd down = oracle::product_state(1, n, nf), up = oracle::product_state(0, n - 1, nf);
        return plus ? Eigen::VectorXcd(d.cos_half * down + d.sin_half * up)
                    : Eigen::VectorXcd(-d.sin_half * down + d.cos_half * up);
    };
    auto element = [&](const Eigen::VectorXcd& bra, const Eigen::VectorXcd& ket, const Eigen::MatrixXcd& op) {
        if (!exact) return std::abs(bra.dot(op * ket));
        const int i = oracle::best_overlap(es, bra), j = oracle::best_overlap(es, ket);
        return std::abs(es.vectors.col(i).dot(op * es.vectors.col(j)));
    };

    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) {
        const auto rows = dressed_matrix_elements(n, p);
        REQUIRE(rows.size() == 12);
        const Eigen::VectorXcd up = dressed(n, true), um = dressed(n, false);
        const Eigen::VectorXcd dp = dressed(n - 1, true), dm = dressed(n - 1, false);
        const Eigen::VectorXcd g0 = oracle::product_state(1, 0, nf), p1 = dressed(1, true), m1 = dressed(1, false);
        const std::vector<std::pair<Eigen::VectorXcd, Eigen::VectorXcd>> pairs{
            {up, dm}, {um, dp}, {up, dp}, {um, dm}, {g0, p1}, {g0, m1},
            {up, dm}, {um, dp}, {up, dp}, {um, dm}, {g0, p1}, {g0, m1}};
        for (int r = 0; r < 12; ++r) {
            const Eigen::MatrixXcd& op = r < 4 ? quad : (r < 6 ? pos : sx);
            const double dev = std::abs(element(pairs[r].first, pairs[r].second, op) - std::abs(rows[r].value));
            if (dev > worst) MESSAGE("g=" << g << " n=" << n << " row " << r << " deviation " << dev);
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("block coefficients at weak coupling") {
    for (int n = 1; n < 6; ++n) {
        const BlockCoefficients b = symmetric_block(n, at_g(0.0));
        CHECK(b.A == doctest::Approx(n - 0.5));
        CHECK(b.B == doctest::Approx(n - 0.5));
        CHECK(b.C == 0.0);
        const double g = 1e-6;
        CHECK(symmetric_block(n, at_g(g)).C / g == doctest::Approx(std::sqrt(double(n)) / 2).epsilon(1e-6));
    }
    CHECK_THROWS_AS(symmetric_block(1, at_g(1.0, 0.5)), std::invalid_argument);
}

TEST_CASE("block coupling agrees with the displacement element") {
    const BlockCoefficients b = symmetric_block(1, at_g(3.0));
    CHECK(std::abs(b.C) == doctest::Approx(std::abs(displacement_element(1, 0, 3.0)) / 2).epsilon(1e-12));
}

TEST_CASE("closed-form block eigenvalues") {
    for (double g : {0.5, 2.0, 3.0})
        for (int n = 1; n < 5; ++n) {
            const BlockCoefficients b = symmetric_block(n, at_g(g));
            Eigen::Matrix2d m;
            m << b.A, b.C, b.C, b.B;
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
            const auto [hi, lo] = block_eigenvalues(b.A, b.B, b.C);
            CHECK(hi == doctest::Approx(es.eigenvalues()(1)).epsilon(1e-12));
            CHECK(lo == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-12));
            // upper eigenvector is (cos, sin)
            const DressedPair d = symmetric_spectrum_and_hopfield(n, at_g(g));
            Eigen::Vector2d v(d.cos_half, d.sin_half);
            CHECK((m * v - hi * v).norm() < 1e-12);
        }
}

TEST_CASE("Hopfield coefficients") {
    const DressedPair free = symmetric_spectrum_and_hopfield(1, at_g(0.0));
    CHECK(free.cos_half == doctest::Approx(M_SQRT1_2));
    CHECK(free.sin_half == doctest::Approx(M_SQRT1_2));
    CHECK(std::abs(symmetric_spectrum_and_hopfield(1, at_g(3.0)).sin_half) < 0.05);
}

TEST_CASE("weak coupling splitting against exact diagonalization") {
    const ModelParams p = at_g(0.1, 0.0, 40);
    const EigenSystem es = diagonalize(build_rabi(p));
    const DressedPair d = symmetric_spectrum_and_hopfield(1, p);
    CHECK(es.frequencies(2) - es.frequencies(1) == doctest::Approx(d.omega_plus - d.omega_minus).epsilon(0.01));
}

TEST_CASE("k-photon resonance") {
    const ModelParams p = at_g(2.0);
    for (int k = 1; k <= 3; ++k) {
        const double x = 2.0;
        CHECK(rabi_frequency(k, k, p) ==
              doctest::Approx(std::pow(x, k) * std::exp(-0.5 * x * x) / std::sqrt(std::tgamma(k + 1.0))));
        ModelParams res = p;
        res.epsilon = k;
        for (int n = k; n < k + 4; ++n) {
            const KResonanceBlock b = k_resonance_block(k, n, res);
            CHECK(b.splitting() == doctest::Approx(std::abs(rabi_frequency(k, n, res))));
            CHECK(b.sx_element() == doctest::Approx(0.5));
        }
    }
    CHECK(asymmetric_ground_energy(at_g(0.0)) == doctest::Approx(-0.5));
    CHECK(asymmetric_ground_energy(at_g(2.0, 0.6)) ==
          doctest::Approx(-0.5 * std::sqrt(0.36 + std::exp(-4.0))));
    CHECK(rabi_frequency(1, 3, at_g(0.0)) == 0.0);
    CHECK_THROWS_AS(rabi_frequency(2, 1, p), std::invalid_argument);
}

TEST_CASE("one-photon splitting against the exact avoided crossing") {
    const ModelParams p = at_g(3.0, 0.0, 90);
    double gap = 1e9;
    for (int i = 0; i <= 400; ++i) {
        ModelParams q = p;
        q.epsilon = 0.9 + 0.2 * i / 400.0;
        const EigenSystem es = diagonalize(build_rabi(q));
        gap = std::min(gap, es.frequencies(2) - es.frequencies(1));
    }
    CHECK(gap == doctest::Approx(std::abs(rabi_frequency(1, 1, p))).epsilon(0.05));
}

TEST_CASE("dressed matrix elements equal the block-vector elements") {
    for (double g : {1.0, 3.0}) CHECK(matrix_element_deviation(g, false) < 1e-12);
}

TEST_CASE("dressed matrix elements converge to the eigenvector elements at large coupling") {
    CHECK(matrix_element_deviation(5.0, true) < 0.02);
}

TEST_CASE("ultrastrong limits of the relaxation rates") {
    const BathSpec cav = cavity_bath(0.05), dip = dipole_bath(0.2);
    const auto weak = usc_rate_limits(at_g(3.0), cav, dip, 4);
    const auto strong = usc_rate_limits(at_g(5.0), cav, dip, 4);
    REQUIRE(weak.size() == 9);
    for (std::size_t i = 0; i < weak.size(); ++i) {
        CAPTURE(weak[i].transition);
        if (i % 3 == 2) {
            CHECK(strong[i].grwa_rate < weak[i].grwa_rate);
            CHECK(strong[i].grwa_rate < 1e-4);
        } else {
            CHECK(std::abs(strong[i].grwa_rate - strong[i].usc_limit) <=
                  std::abs(weak[i].grwa_rate - weak[i].usc_limit) + 1e-12);
            CHECK(weak[i].grwa_rate == doctest::Approx(weak[i].usc_limit).epsilon(0.1));
        }
    }
}

TEST_CASE("cavity rate between the upper dressed states matches the master equation") {
    const ModelParams p = at_g(3.0, 0.0, 90);
    const EigenSystem es = diagonalize(build_polaron_rabi(p));
    const Eigen::MatrixXd rates = transition_rates(es, coupling_operator(p, Channel::cavity), cavity_bath(0.05), 12);
    const auto rows = usc_rate_limits(p, cavity_bath(0.05), dipole_bath(0.2), 2);
    // |+,1> ~ |down,1>, |+,2> ~ |down,2>
    const int nf = 90;
    const int i1 = oracle::best_overlap(es, oracle::product_state(1, 1, nf)), i2 = oracle::best_overlap(es, oracle::product_state(1, 2, nf));
    CHECK(rates(i1, i2) == doctest::Approx(rows[0].grwa_rate).epsilon(0.1));
}

// Level accuracy of the block approximation against exact diagonalization.
// Registered as its own ctest entry.
TEST_SUITE("approximation_accuracy") {
    TEST_CASE("dressed matrix elements against eigenvectors") {
        CHECK(matrix_element_deviation(3.0, true) < 0.02);
    }

    TEST_CASE("symmetric gRWA levels against exact diagonalization") {
        for (double g : {1.0, 2.0, 3.0}) {
            const ModelParams p = at_g(g);
            CAPTURE(g);
            CHECK(max_level_deviation(p, symmetric_levels(p, 6)) < 0.02);
        }
    }

    TEST_CASE("resonant gRWA levels against exact diagonalization") {
        for (double g : {2.5, 3.5})
            for (int k = 1; k <= 3; ++k)
                for (double d : {-0.1, 0.0, 0.1}) {
                    const ModelParams p = at_g(g, k + d);
                    CAPTURE(g);
                    CAPTURE(k + d);
                    CHECK(max_level_deviation(p, k_resonance_levels(k, p, 6)) < 0.05);
                }
    }
}
