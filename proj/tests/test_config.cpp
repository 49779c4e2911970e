#include "usc/config.hpp"
#include "usc/errors.hpp"

#include <doctest.h>

#include <string>

using namespace usc;

namespace {

RunConfig busy_config() {
    RunConfig c;
    c.model.g = 2.75;
    c.model.epsilon = -0.1;
    c.model.n_fock = 90;
    c.gamma = 0.002;
    c.kappa = 0.008;
    c.cavity_law = SpectralLaw::radiative;
    c.dipole_law = SpectralLaw::ohmic;
    c.temperature = 0.2;
    c.levels = 30;
    c.scan = {{"g", 0.0, 3.0, 20}, {"epsilon", -4.0, 4.0, 41}};
    c.output = "out.csv";
    c.format = OutputFormat::json;
    c.seed = 12345678901ULL;
    c.eta = 0.01;
    c.quality = 250.0;
    c.omega_grid = {"omega", 0.1, 2.0 / 3.0, 77};
    c.t_max = 1234.5;
    c.edm_gamma = 0.1;
    c.m0 = 3;
    c.well.mu2 = 2.2;
    c.well.qE = 0.1 / 3.0;
    return c;
}

}  // namespace

TEST_CASE("emit then parse is the identity") {
    for (const RunConfig& c : {RunConfig{}, busy_config()}) {
        const RunConfig back = parse_config(emit_config(c));
        CHECK(back == c);
        CHECK(emit_config(back) == emit_config(c));
    }
}

TEST_CASE("grammar") {
    const RunConfig c = parse_config(
        "# comment line\n"
        "g = 1.5   # trailing comment\n"
        "\n"
        "  epsilon=2\n"
        "scan = [g, 0, 3, 4]\n"
        "scan = [T, 0, 1, 2]\n"
        "dipole_law = ohmic\n");
    CHECK(c.model.g == 1.5);
    CHECK(c.model.epsilon == 2.0);
    REQUIRE(c.scan.size() == 2);
    CHECK(c.scan[1].name == "T");
    CHECK(c.scan[0].values() == std::vector<double>{0.0, 1.0, 2.0, 3.0});
    CHECK(c.dipole_law == SpectralLaw::ohmic);
    CHECK(parse_config("scan = none\n", c).scan.empty());
}

TEST_CASE("overrides apply after the file") {
    RunConfig c = parse_config("g = 1\nT = 0.5\n");
    apply_override(c, "g=3");
    apply_override(c, "scan=[epsilon, 0, 4, 9]");
    CHECK(c.model.g == 3.0);
    CHECK(c.temperature == 0.5);
    CHECK(c.scan.size() == 1);
    CHECK_THROWS_AS(apply_override(c, "g"), ConfigError);
}

TEST_CASE("errors name the key") {
    auto message = [](auto fn) {
        try {
            fn();
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message([] { parse_config("bogus = 1\n"); }).find("bogus") != std::string::npos);
    CHECK(message([] { parse_config("g = abc\n"); }).find("line 1: g") != std::string::npos);
    CHECK(message([] { parse_config("scan = [g, 0, 1]\n"); }).find("scan") != std::string::npos);
    CHECK(message([] { parse_config("format = xml\n"); }).find("csv or json") != std::string::npos);

    RunConfig c;
    c.levels = 99;
    const std::string m = message([&] { c.validate(); });
    CHECK(m.find("levels") != std::string::npos);
    CHECK(m.find("[2, 40]") != std::string::npos);

    RunConfig s;
    s.scan = {{"omega_d", 0, 1, 2}};
    CHECK(message([&] { s.validate(); }).find("scan") != std::string::npos);
    s.scan = {{"g", 0, 1, 2}, {"g", 0, 1, 2}};
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("every key is documented and settable") {
    for (const ConfigKey& k : config_keys()) {
        CHECK_FALSE(k.help.empty());
        RunConfig c;
        const std::string text = emit_config(busy_config());
        const auto pos = text.find(k.name + " = ");
        if (pos == std::string::npos) continue;
        const auto end = text.find('\n', pos);
        CHECK_NOTHROW(apply_override(c, text.substr(pos, end - pos)));
    }
}

TEST_CASE("bath list") {
    RunConfig c;
    const auto baths = c.baths();
    REQUIRE(baths.size() == 2);
    CHECK(baths[0].channel == Channel::cavity);
    CHECK(baths[0].strength == 0.05);
    CHECK(baths[1].law == SpectralLaw::radiative);
    CHECK(baths[1].strength == 0.2);
}
