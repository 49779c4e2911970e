#include "usc/commands.hpp"
#include "usc/errors.hpp"
#include "usc/master_equation.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

using namespace usc;

namespace {

std::string csv(const ScanResult& r) {
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

}  // namespace

TEST_CASE("grid points are row-major") {
    const auto pts = grid_points({{"g", 0, 1, 2}, {"epsilon", 0, 2, 3}});
    REQUIRE(pts.size() == 6);
    CHECK(pts[1] == std::vector<double>{0.0, 1.0});
    CHECK(pts[3] == std::vector<double>{1.0, 0.0});
    CHECK(grid_points({}).size() == 1);
}

TEST_CASE("failures become NaN rows and the scan continues") {
    ScanResult r;
    r.columns = {"x", "y"};
    run_scan(
        r, {{0.0}, {1.0}, {2.0}},
        [](const std::vector<double>& p) {
            if (p[0] == 1.0) throw TruncationError("too few levels");
            return std::vector<std::vector<double>>{{p[0], 2 * p[0]}};
        },
        [](const std::vector<double>& p) { return std::vector<double>{p[0], NAN}; }, 3);
    REQUIRE(r.rows.size() == 3);
    CHECK(std::isnan(r.rows[1][1]));
    CHECK(r.rows[2][1] == 4.0);
    REQUIRE(r.failures.size() == 1);
    CHECK(r.failures[0].find("too few levels") != std::string::npos);
    CHECK(csv(r).find("nan") != std::string::npos);
}

TEST_CASE("scan output does not depend on the worker count") {
    RunConfig cfg;
    cfg.levels = 10;
    cfg.scan = {{"g", 0.0, 1.5, 4}, {"epsilon", 0.0, 1.0, 3}};
    const std::string one = csv(run_command("gap-scan", cfg, 1));
    const std::string four = csv(run_command("gap-scan", cfg, 4));
    CHECK(one == four);
    CHECK(one.find("g,epsilon,lambda") != std::string::npos);
}

TEST_CASE("one-point scan equals a direct gap") {
    RunConfig cfg;
    cfg.model.g = 1.0;
    cfg.model.epsilon = 0.5;
    cfg.levels = 12;
    const ScanResult r = run_command("gap-scan", cfg, 1);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0][2] == gap_at(cfg.model, cfg.baths(), 0.0, 12));
}

TEST_CASE("weak coupling cut decays log-linearly") {
    RunConfig cfg;
    cfg.levels = 24;
    cfg.model.n_fock = 80;
    cfg.scan = {{"g", 1.5, 3.0, 4}};
    const ScanResult r = run_command("gap-scan", cfg, 1);
    REQUIRE(r.rows.size() == 4);
    // regression of log|lambda| on g
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& row : r.rows) {
        const double x = row[0], y = std::log(std::abs(row[2]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = 4.0, slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double ss_res = 0, ss_tot = 0;
    for (const auto& row : r.rows) {
        const double y = std::log(std::abs(row[2]));
        const double fit = sy / n + slope * (row[0] - sx / n);
        ss_res += (y - fit) * (y - fit);
        ss_tot += (y - sy / n) * (y - sy / n);
    }
    CHECK(slope < 0.0);
    CHECK(1.0 - ss_res / ss_tot > 0.95);
}

TEST_CASE("subcommand column contracts") {
    RunConfig cfg;
    cfg.scan = {{"g", 0.0, 2.0, 3}};
    cfg.levels_out = 4;
    const ScanResult s = run_command("spectrum", cfg, 1);
    CHECK(s.columns == std::vector<std::string>{"g", "epsilon", "level_index", "omega_exact", "omega_grwa"});
    CHECK(s.rows.size() == 12);

    RunConfig rates;
    rates.scan = {{"T", 0.0, 2.0, 2}};
    rates.omega_grid = {"omega", 0.5, 1.5, 11};
    const ScanResult e = run_command("edm-rates", rates, 1);
    CHECK(e.columns.back() == "gamma_tot_norm");
    CHECK(e.rows.size() == 22);

    RunConfig bad;
    bad.scan = {{"T", 0.0, 1.0, 2}};
    CHECK_THROWS_AS(run_command("gap-scan", bad, 1), ConfigError);
    CHECK_THROWS_AS(run_command("nonsense", bad, 1), ConfigError);

    const ScanResult t = run_command("tla", RunConfig{}, 1);
    CHECK(t.rows.size() == 1);
    CHECK(t.metadata.front() == std::string("usc_relax ") + kVersion);
}

TEST_CASE("evolve rescaling") {
    RunConfig cfg;
    cfg.model.g = 3.0;
    cfg.model.epsilon = 1.0;
    cfg.gamma = 0.002;
    cfg.kappa = 0.008;
    cfg.samples = 200;
    cfg.t_max = 50.0;
    const ScanResult r = run_command("evolve", cfg, 1);
    REQUIRE(r.rows.size() == 200);
    for (const auto& row : r.rows)
        CHECK(row[2] == doctest::Approx(std::exp(0.001 * row[0]) * (row[1] + 0.5) - 0.5));
    // |right, 0> projected on 24 levels keeps nearly all of its s_x
    CHECK(r.rows[0][1] == doctest::Approx(0.5).epsilon(1e-3));
}
