// config.hpp — run configuration shared by every CLI subcommand
//
// File grammar (one setting per line):
//
//   line    := blank | comment | setting
//   comment := '#' anything
//   setting := key '=' value [comment]
//   value   := scalar | '[' scalar { ',' scalar } ']'
//
// Keys are listed by config_keys(). Scalars are numbers, integers, or bare
// words (ohmic, radiative, csv, json, true, false). The key `scan` takes
// [name, start, stop, points] and may appear at most twice; each occurrence
// appends an axis, and `scan = none` clears them. Later settings override
// earlier ones, which is also how --set key=value works.
#pragma once

#include "usc/double_well.hpp"
#include "usc/master_equation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace usc {

struct ScanAxis {
    std::string name;  // g, epsilon, omega or T
    double start{0.0};
    double stop{0.0};
    int points{1};

    std::vector<double> values() const;
    bool operator==(const ScanAxis&) const = default;
};

enum class OutputFormat { csv, json };

struct RunConfig {
    ModelParams model{1.0, 1.0, 0.0, 0.0, 0, 1};
    double gamma{0.05};
    double kappa{0.2};
    SpectralLaw cavity_law{SpectralLaw::ohmic};
    SpectralLaw dipole_law{SpectralLaw::radiative};
    double dipole_nu{3.0};
    double temperature{0.0};
    int levels{24};  // eigenlevels kept in the master equation and the response sums
    std::vector<ScanAxis> scan;
    std::string output;  // empty: stdout
    OutputFormat format{OutputFormat::csv};
    std::uint64_t seed{0};

    // response
    double eta{0.0};  // 0: w_c / Q for cavity spectra, 0.05 w_c for dipole spectra
    double quality{100.0};
    double unit_scale{1.0};
    ScanAxis omega_grid{"omega", 0.5, 1.5, 501};

    // time evolution
    double t_max{0.0};  // 0: eight periods of the k-photon Rabi oscillation
    int samples{4000};

    // extended Dicke model
    double edm_gamma{0.1};
    int n_boson{20};
    int m0{1};
    int sum_cutoff{0};

    // spectrum and rabi-freq tables
    int levels_out{6};
    int k_max{4};
    int n_max{6};

    WellParams well;

    std::vector<BathSpec> baths() const;
    // Throws ConfigError naming the offending key and its accepted range.
    void validate() const;
    bool operator==(const RunConfig&) const = default;
};

struct ConfigKey {
    std::string name;
    std::string help;
};

const std::vector<ConfigKey>& config_keys();

RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
// "key=value" as given to --set.
void apply_override(RunConfig& cfg, const std::string& assignment);
std::string emit_config(const RunConfig& cfg);

}  // namespace usc
