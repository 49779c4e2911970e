#include "usc/config.hpp"

#include "usc/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace usc {

std::vector<double> ScanAxis::values() const {
    std::vector<double> v(points);
    for (int k = 0; k < points; ++k) v[k] = points == 1 ? start : start + (stop - start) * k / (points - 1);
    return v;
}

std::vector<BathSpec> RunConfig::baths() const {
    BathSpec cav{Channel::cavity, cavity_law, 1.0, gamma, model.omega_c};
    BathSpec dip{Channel::dipole, dipole_law, dipole_nu, kappa, model.omega_d};
    return {cav, dip};
}

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError(key + ": expected a number, got '" + s + "'");
    return v;
}

long long to_integer(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError(key + ": expected an integer, got '" + s + "'");
    return v;
}

SpectralLaw to_law(const std::string& key, const std::string& s) {
    if (s == "ohmic") return SpectralLaw::ohmic;
    if (s == "radiative") return SpectralLaw::radiative;
    throw ConfigError(key + ": expected ohmic or radiative, got '" + s + "'");
}

std::string law_name(SpectralLaw l) { return l == SpectralLaw::ohmic ? "ohmic" : "radiative"; }

std::vector<std::string> split_value(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError(key + ": missing value");
    if (v.front() != '[') return {v};
    if (v.back() != ']') throw ConfigError(key + ": unterminated array");
    std::vector<std::string> out;
    std::stringstream ss(v.substr(1, v.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

const std::string& scalar(const std::string& key, const std::vector<std::string>& v) {
    if (v.size() != 1) throw ConfigError(key + ": expected a single value");
    return v[0];
}

ScanAxis to_axis(const std::string& key, const std::vector<std::string>& v) {
    if (v.size() != 4) throw ConfigError(key + ": expected [name, start, stop, points]");
    ScanAxis a;
    a.name = v[0];
    a.start = to_double(key, v[1]);
    a.stop = to_double(key, v[2]);
    a.points = static_cast<int>(to_integer(key, v[3]));
    return a;
}

std::string axis_text(const ScanAxis& a) {
    return "[" + a.name + ", " + fmt(a.start) + ", " + fmt(a.stop) + ", " + std::to_string(a.points) + "]";
}

struct Field {
    ConfigKey key;
    std::function<void(RunConfig&, const std::vector<std::string>&)> set;
    std::function<std::string(const RunConfig&)> get;  // empty result: not emitted
};

template <class Get>
Field real_field(std::string name, std::string help, Get ref) {
    return {{name, help},
            [name, ref](RunConfig& c, const std::vector<std::string>& v) { ref(c) = to_double(name, scalar(name, v)); },
            [ref](const RunConfig& c) { return fmt(ref(const_cast<RunConfig&>(c))); }};
}

template <class Get>
Field int_field(std::string name, std::string help, Get ref) {
    return {{name, help},
            [name, ref](RunConfig& c, const std::vector<std::string>& v) {
                ref(c) = static_cast<std::remove_reference_t<decltype(ref(c))>>(to_integer(name, scalar(name, v)));
            },
            [ref](const RunConfig& c) { return std::to_string(ref(const_cast<RunConfig&>(c))); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(real_field("omega_c", "cavity frequency, > 0", [](RunConfig& c) -> double& { return c.model.omega_c; }));
        f.push_back(real_field("omega_d", "dipole frequency, > 0", [](RunConfig& c) -> double& { return c.model.omega_d; }));
        f.push_back(real_field("g", "light-matter coupling, >= 0", [](RunConfig& c) -> double& { return c.model.g; }));
        f.push_back(real_field("epsilon", "dipole asymmetry, any real", [](RunConfig& c) -> double& { return c.model.epsilon; }));
        f.push_back(int_field("n_fock", "photon states kept, >= 2 (0 = automatic)", [](RunConfig& c) -> int& { return c.model.n_fock; }));
        f.push_back(int_field("spin_N", "dipole spin N/2, >= 1", [](RunConfig& c) -> int& { return c.model.spin_N; }));
        f.push_back(real_field("gamma", "cavity loss rate, >= 0", [](RunConfig& c) -> double& { return c.gamma; }));
        f.push_back(real_field("kappa", "dipole loss rate, >= 0", [](RunConfig& c) -> double& { return c.kappa; }));
        f.push_back({{"cavity_law", "cavity bath law: ohmic or radiative"},
                     [](RunConfig& c, const std::vector<std::string>& v) { c.cavity_law = to_law("cavity_law", scalar("cavity_law", v)); },
                     [](const RunConfig& c) { return law_name(c.cavity_law); }});
        f.push_back({{"dipole_law", "dipole bath law: ohmic or radiative"},
                     [](RunConfig& c, const std::vector<std::string>& v) { c.dipole_law = to_law("dipole_law", scalar("dipole_law", v)); },
                     [](const RunConfig& c) { return law_name(c.dipole_law); }});
        f.push_back(real_field("dipole_nu", "radiative exponent, >= 1", [](RunConfig& c) -> double& { return c.dipole_nu; }));
        f.push_back(real_field("T", "temperature (k_B = 1), >= 0", [](RunConfig& c) -> double& { return c.temperature; }));
        f.push_back(int_field("levels", "eigenlevels kept, in [2, 40]", [](RunConfig& c) -> int& { return c.levels; }));
        f.push_back({{"scan", "[name, start, stop, points] with name in g, epsilon, omega, T; at most two"},
                     [](RunConfig& c, const std::vector<std::string>& v) {
                         if (v.size() == 1 && v[0] == "none") {
                             c.scan.clear();
                             return;
                         }
                         c.scan.push_back(to_axis("scan", v));
                     },
                     [](const RunConfig&) { return std::string(); }});
        f.push_back({{"output", "output path (empty = stdout)"},
                     [](RunConfig& c, const std::vector<std::string>& v) { c.output = v.empty() ? "" : scalar("output", v); },
                     [](const RunConfig& c) { return c.output.empty() ? std::string() : c.output; }});
        f.push_back({{"format", "csv or json"},
                     [](RunConfig& c, const std::vector<std::string>& v) {
                         const std::string& s = scalar("format", v);
                         if (s == "csv")
                             c.format = OutputFormat::csv;
                         else if (s == "json")
                             c.format = OutputFormat::json;
                         else
                             throw ConfigError("format: expected csv or json, got '" + s + "'");
                     },
                     [](const RunConfig& c) { return std::string(c.format == OutputFormat::csv ? "csv" : "json"); }});
        f.push_back(int_field("seed", "reserved, integer", [](RunConfig& c) -> std::uint64_t& { return c.seed; }));
        f.push_back(real_field("eta", "Lorentzian half-width, >= 0 (0 = default)", [](RunConfig& c) -> double& { return c.eta; }));
        f.push_back(real_field("Q", "cavity quality factor, > 0", [](RunConfig& c) -> double& { return c.quality; }));
        f.push_back(real_field("unit_scale", "impedance unit scale, > 0", [](RunConfig& c) -> double& { return c.unit_scale; }));
        f.push_back({{"omega_grid", "[omega, start, stop, points] frequency grid for spectra"},
                     [](RunConfig& c, const std::vector<std::string>& v) {
                         c.omega_grid = to_axis("omega_grid", v);
                     },
                     [](const RunConfig& c) { return axis_text(c.omega_grid); }});
        f.push_back(real_field("t_max", "evolution end time, >= 0 (0 = eight Rabi periods)", [](RunConfig& c) -> double& { return c.t_max; }));
        f.push_back(int_field("samples", "output time samples, >= 2", [](RunConfig& c) -> int& { return c.samples; }));
        f.push_back(real_field("edm_gamma", "cavity linewidth for the EDM rates, > 0", [](RunConfig& c) -> double& { return c.edm_gamma; }));
        f.push_back(int_field("n_boson", "dipole boson levels, in [2, 40]", [](RunConfig& c) -> int& { return c.n_boson; }));
        f.push_back(int_field("m0", "initial dipole excitation, in [0, n_boson)", [](RunConfig& c) -> int& { return c.m0; }));
        f.push_back(int_field("sum_cutoff", "EDM double-sum cutoff, >= 0 (0 = automatic)", [](RunConfig& c) -> int& { return c.sum_cutoff; }));
        f.push_back(int_field("levels_out", "levels per spectrum row, >= 1", [](RunConfig& c) -> int& { return c.levels_out; }));
        f.push_back(int_field("k_max", "largest photon number k for rabi-freq, >= 1", [](RunConfig& c) -> int& { return c.k_max; }));
        f.push_back(int_field("n_max", "largest block n for rabi-freq, >= k", [](RunConfig& c) -> int& { return c.n_max; }));
        f.push_back(real_field("mu2", "double-well quadratic coefficient, > 0", [](RunConfig& c) -> double& { return c.well.mu2; }));
        f.push_back(real_field("mu4", "double-well quartic coefficient, > 0", [](RunConfig& c) -> double& { return c.well.mu4; }));
        f.push_back(real_field("qE", "double-well tilt", [](RunConfig& c) -> double& { return c.well.qE; }));
        f.push_back(real_field("mass", "particle mass, > 0", [](RunConfig& c) -> double& { return c.well.mass; }));
        f.push_back(int_field("grid_points", "double-well grid points, >= 200", [](RunConfig& c) -> int& { return c.well.grid_points; }));
        f.push_back(real_field("x_max", "double-well half width, > 0", [](RunConfig& c) -> double& { return c.well.x_max; }));
        return f;
    }();
    return table;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        for (const Field& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    for (const Field& f : fields())
        if (f.key.name == key) {
            f.set(cfg, split_value(key, value));
            return;
        }
    throw ConfigError("unknown config key '" + key + "'");
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
    apply_setting(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

RunConfig parse_config(const std::string& text, RunConfig base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        try {
            apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::string emit_config(const RunConfig& cfg) {
    std::string out;
    for (const Field& f : fields()) {
        if (f.key.name == "scan") {
            for (const ScanAxis& a : cfg.scan) out += "scan = " + axis_text(a) + "\n";
            continue;
        }
        const std::string v = f.get(cfg);
        if (!v.empty()) out += f.key.name + " = " + v + "\n";
    }
    return out;
}

void RunConfig::validate() const {
    auto fail = [](const std::string& key, const std::string& range) {
        throw ConfigError(key + ": out of range (accepted: " + range + ")");
    };
    if (!(model.omega_c > 0)) fail("omega_c", "> 0");
    if (!(model.omega_d > 0)) fail("omega_d", "> 0");
    if (!(model.g >= 0)) fail("g", ">= 0");
    if (!std::isfinite(model.epsilon)) fail("epsilon", "finite real");
    if (model.n_fock != 0 && model.n_fock < 2) fail("n_fock", ">= 2, or 0 for automatic");
    if (model.spin_N < 1) fail("spin_N", ">= 1");
    if (!(gamma >= 0)) fail("gamma", ">= 0");
    if (!(kappa >= 0)) fail("kappa", ">= 0");
    if (!(dipole_nu >= 1)) fail("dipole_nu", ">= 1");
    if (!(temperature >= 0)) fail("T", ">= 0");
    if (levels < 2 || levels > kMaxLiouvillianLevels) fail("levels", "[2, 40]");
    if (scan.size() > 2) fail("scan", "at most two axes");
    for (const ScanAxis& a : scan) {
        if (a.name != "g" && a.name != "epsilon" && a.name != "omega" && a.name != "T")
            fail("scan", "axis name g, epsilon, omega or T");
        if (a.points < 1) fail("scan", "points >= 1");
    }
    if (scan.size() == 2 && scan[0].name == scan[1].name) fail("scan", "distinct axis names");
    if (!(eta >= 0)) fail("eta", ">= 0");
    if (!(quality > 0)) fail("Q", "> 0");
    if (!(unit_scale > 0)) fail("unit_scale", "> 0");
    if (omega_grid.points < 2 || !(omega_grid.stop > omega_grid.start)) fail("omega_grid", "stop > start, points >= 2");
    if (!(t_max >= 0)) fail("t_max", ">= 0");
    if (samples < 2) fail("samples", ">= 2");
    if (!(edm_gamma > 0)) fail("edm_gamma", "> 0");
    if (n_boson < 2 || n_boson > kMaxLiouvillianLevels) fail("n_boson", "[2, 40]");
    if (m0 < 0 || m0 >= n_boson) fail("m0", "[0, n_boson)");
    if (sum_cutoff < 0) fail("sum_cutoff", ">= 0");
    if (levels_out < 1) fail("levels_out", ">= 1");
    if (k_max < 1) fail("k_max", ">= 1");
    if (n_max < k_max) fail("n_max", ">= k_max");
    if (!(well.mu2 > 0)) fail("mu2", "> 0");
    if (!(well.mu4 > 0)) fail("mu4", "> 0");
    if (!(well.mass > 0)) fail("mass", "> 0");
    if (well.grid_points < 200) fail("grid_points", ">= 200");
    if (!(well.x_max > 0)) fail("x_max", "> 0");
}

}  // namespace usc
