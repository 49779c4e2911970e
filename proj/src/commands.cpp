#include "usc/commands.hpp"

#include "usc/double_well.hpp"
#include "usc/edm.hpp"
#include "usc/errors.hpp"
#include "usc/grwa.hpp"
#include "usc/master_equation.hpp"
#include "usc/rabi_fit.hpp"
#include "usc/response.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace usc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Runner = ScanResult (*)(const RunConfig&, int);

void require_axes(const RunConfig& cfg, const std::string& cmd, std::initializer_list<const char*> allowed) {
    for (const ScanAxis& a : cfg.scan) {
        bool ok = false;
        for (const char* n : allowed) ok = ok || a.name == n;
        if (!ok) {
            std::string list;
            for (const char* n : allowed) list += (list.empty() ? "" : ", ") + std::string(n);
            throw ConfigError("scan: " + cmd + " accepts axes {" + (list.empty() ? "none" : list) + "}, got '" +
                              a.name + "'");
        }
    }
}

// Axes other than omega define the outer loop; omega (if scanned) is the grid.
std::vector<ScanAxis> point_axes(const RunConfig& cfg) {
    std::vector<ScanAxis> out;
    for (const ScanAxis& a : cfg.scan)
        if (a.name != "omega") out.push_back(a);
    return out;
}

std::vector<double> omega_values(const RunConfig& cfg) {
    for (const ScanAxis& a : cfg.scan)
        if (a.name == "omega") return a.values();
    return cfg.omega_grid.values();
}

struct Point {
    ModelParams model;
    double temperature;
};

Point at(const RunConfig& cfg, const std::vector<ScanAxis>& axes, const std::vector<double>& values) {
    Point p{cfg.model, cfg.temperature};
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i].name == "g") p.model.g = values[i];
        if (axes[i].name == "epsilon") p.model.epsilon = values[i];
        if (axes[i].name == "T") p.temperature = values[i];
    }
    return p;
}

ScanResult start(const RunConfig& cfg, const std::string& cmd, std::vector<std::string> columns) {
    ScanResult r;
    r.axes = point_axes(cfg);
    r.columns = std::move(columns);
    r.metadata.push_back(std::string("usc_relax ") + kVersion);
    r.metadata.push_back("command: " + cmd);
    std::istringstream echo(emit_config(cfg));
    for (std::string line; std::getline(echo, line);)
        if (line.rfind("output =", 0) != 0) r.metadata.push_back("config: " + line);
    return r;
}

void truncation_note(ScanResult& r, const RunConfig& cfg, HamiltonianKind kind) {
    // Report at the strongest coupling of the scan, the hardest point.
    ModelParams p = cfg.model;
    for (const ScanAxis& a : cfg.scan)
        if (a.name == "g") p.g = std::max(a.start, a.stop);
    p.epsilon = std::abs(p.epsilon);
    const int nf = p.resolved_fock();
    std::string note = "truncation: n_fock=" + std::to_string(nf) + (cfg.model.n_fock == 0 ? " (automatic)" : "") +
                       " levels=" + std::to_string(cfg.levels);
    try {
        ModelParams q = p;
        q.n_fock = nf;
        const ConvergenceReport rep = convergence_check(q, {nf, nf + 20}, kind, cfg.levels);
        note += " converged_levels=" + std::to_string(rep.converged_levels) + " at g=" + format_number(p.g);
    } catch (const std::exception& e) {
        note += std::string(" convergence check failed: ") + e.what();
    }
    r.metadata.push_back(note);
}

FailFn nan_row(std::size_t width, std::vector<int> keep) {
    return [width, keep](const std::vector<double>& pt) {
        std::vector<double> row(width, kNaN);
        for (std::size_t i = 0; i < keep.size() && i < pt.size(); ++i)
            if (keep[i] >= 0) row[keep[i]] = pt[i];
        return row;
    };
}

std::vector<int> columns_of(const std::vector<ScanAxis>& axes, const std::vector<std::string>& cols) {
    std::vector<int> idx;
    for (const ScanAxis& a : axes) {
        int k = -1;
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (cols[c] == a.name) k = static_cast<int>(c);
        idx.push_back(k);
    }
    return idx;
}

ScanResult gap_scan(const RunConfig& cfg, int jobs) {
    require_axes(cfg, "gap-scan", {"g", "epsilon"});
    ScanResult r = start(cfg, "gap-scan", {"g", "epsilon", "lambda"});
    truncation_note(r, cfg, HamiltonianKind::rabi);
    run_scan(
        r, grid_points(r.axes),
        [&](const std::vector<double>& v) {
            const Point p = at(cfg, r.axes, v);
            return std::vector<std::vector<double>>{
                {p.model.g, p.model.epsilon, gap_at(p.model, cfg.baths(), p.temperature, cfg.levels)}};
        },
        [&](const std::vector<double>& v) {
            const Point p = at(cfg, r.axes, v);
            return std::vector<double>{p.model.g, p.model.epsilon, kNaN};
        },
        jobs);
    return r;
}

std::vector<double> grwa_levels(const ModelParams& p, int count) {
    ModelParams q = p;
    q.epsilon = std::abs(p.epsilon);
    std::vector<double> lv;
    if (q.epsilon == 0.0) {
        lv = symmetric_levels(q, count);
    } else {
        const long k = std::lround(q.epsilon / q.omega_c);
        if (k < 1) return std::vector<double>(count, kNaN);
        lv = k_resonance_levels(static_cast<int>(k), q, count);
    }
    for (double& e : lv) e -= polaron_frame_shift(q);
    return lv;
}

ScanResult spectrum(const RunConfig& cfg, int jobs) {
    require_axes(cfg, "spectrum", {"g", "epsilon"});
    ScanResult r = start(cfg, "spectrum", {"g", "epsilon", "level_index", "omega_exact", "omega_grwa"});
    r.metadata.push_back("omega_grwa: symmetric blocks at epsilon = 0, nearest k-resonance otherwise");
    run_scan(
        r, grid_points(r.axes),
        [&](const std::vector<double>& v) {
            const Point p = at(cfg, r.axes, v);
            const EigenSystem es = diagonalize(build_rabi(p.model));
            const std::vector<double> approx = grwa_levels(p.model, cfg.levels_out);
            std::vector<std::vector<double>> rows;
            for (int n = 0; n < cfg.levels_out && n < es.dim; ++n)
                rows.push_back({p.model.g, p.model.epsilon, double(n), es.frequencies(n), approx[n]});
            return rows;
        },
        nan_row(5, columns_of(r.axes, r.columns)), jobs);
    return r;
}

ScanResult evolve_cmd(const RunConfig& cfg, int) {
    require_axes(cfg, "evolve", {});
    ScanResult r = start(cfg, "evolve", {"t", "sx", "sx_rescaled"});
    const ModelParams& p = cfg.model;
    const int k = std::max(1, static_cast<int>(std::lround(std::abs(p.epsilon) / p.omega_c)));
    const double omega_kk = std::abs(rabi_frequency(k, k, p));
    double t_max = cfg.t_max;
    if (t_max == 0.0) {
        if (!(omega_kk > 0.0)) throw ConfigError("t_max: required when the Rabi frequency vanishes");
        t_max = 8.0 * 2.0 * M_PI / omega_kk;
    }
    EigenSystem es = certified_spectrum(p, HamiltonianKind::polaron_rabi, cfg.levels);
    const Liouvillian L = build_liouvillian(es, p, cfg.baths(), cfg.temperature, cfg.levels);

    // |s_x = +1/2> (x) |0> in the polaron frame; spin index slow, up first.
    const int nf = p.resolved_fock();
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * nf);
    psi(0) = psi(nf) = M_SQRT1_2;
    const Eigen::MatrixXcd rho0 = project_state(es, psi, cfg.levels);
    const Eigen::MatrixXcd sx = project_operator(es, dipole_x(p), cfg.levels);
    const std::vector<double> times = linear_grid(0.0, t_max, cfg.samples);
    EvolveOptions opt;
    opt.keep_states = false;
    opt.populations = false;
    const Trajectory tr = evolve(L, rho0, times, {{"sx", sx}}, opt);
    const auto& s = tr.observables.at("sx");
    const double rate = k * cfg.gamma / 2.0;
    for (std::size_t i = 0; i < times.size(); ++i)
        r.rows.push_back({times[i], s[i], std::exp(rate * times[i]) * (s[i] + 0.5) - 0.5});
    r.metadata.push_back("k=" + std::to_string(k) + " Omega_kk=" + format_number(omega_kk) +
                         " expected_decay=" + format_number(rate));
    try {
        const RabiFit fit = fit_rabi_decay(times, s);
        r.metadata.push_back("fit: Omega=" + format_number(fit.omega) + " decay=" + format_number(fit.decay));
    } catch (const std::exception& e) {
        r.metadata.push_back(std::string("fit: unavailable (") + e.what() + ")");
    }
    return r;
}

double default_eta(const RunConfig& cfg, bool dipole) {
    if (cfg.eta > 0.0) return cfg.eta;
    return dipole ? 0.05 * cfg.model.omega_c : cfg.model.omega_c / cfg.quality;
}

ScanResult transmission_cmd(const RunConfig& cfg, int jobs) {
    require_axes(cfg, "transmission", {"epsilon", "omega"});
    ScanResult r = start(cfg, "transmission", {"epsilon", "omega", "abs_T"});
    const std::vector<double> omegas = omega_values(cfg);
    const double eta = default_eta(cfg, false);
    run_scan(
        r, grid_points(r.axes),
        [&](const std::vector<double>& v) {
            const Point p = at(cfg, r.axes, v);
            const EigenSystem es = diagonalize(build_rabi(p.model));
            const SpectrumGrid sc =
                cavity_structure_factor(es, p.model, p.temperature, omegas, eta, cfg.levels, cfg.unit_scale);
            const auto mag = transmission(system_impedance(sc), cfg.quality).magnitudes();
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < omegas.size(); ++i) rows.push_back({p.model.epsilon, omegas[i], mag[i]});
            return rows;
        },
        nan_row(3, columns_of(r.axes, r.columns)), jobs);
    return r;
}

ScanResult dipole_response_cmd(const RunConfig& cfg, int jobs) {
    require_axes(cfg, "dipole-response", {"epsilon", "omega"});
    ScanResult r = start(cfg, "dipole-response", {"epsilon", "omega", "S_dip", "abs_Z_rad"});
    const std::vector<double> omegas = omega_values(cfg);
    const double eta = default_eta(cfg, true);
    run_scan(
        r, grid_points(r.axes),
        [&](const std::vector<double>& v) {
            const Point p = at(cfg, r.axes, v);
            const EigenSystem es = diagonalize(build_rabi(p.model));
            const SpectrumGrid sd =
                dipole_structure_factor(es, p.model, p.temperature, omegas, eta, cfg.levels, cfg.unit_scale);
            const auto z = radiation_impedance(sd).magnitudes();
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < omegas.size(); ++i)
                rows.push_back({p.model.epsilon, omegas[i], sd.values[i].real(), z[i]});
            return rows;
        },
        nan_row(4, columns_of(r.axes, r.columns)), jobs);
    return r;
}

EdmParams edm_params(const RunConfig& cfg, double temperature) {
    EdmParams e;
    e.omega_c = cfg.model.omega_c;
    e.omega_d = cfg.model.omega_d;
    e.g = cfg.model.g;
    e.epsilon = cfg.model.epsilon;
    e.N = cfg.model.spin_N;
    e.gamma = cfg.edm_gamma;
    e.T = temperature;
    e.sum_cutoff = cfg.sum_cutoff;
    e.n_boson = cfg.n_boson;
    return e;
}

ScanResult edm_rates_cmd(const RunConfig& cfg, int jobs) {
    require_axes(cfg, "edm-rates", {"omega", "T"});
    ScanResult r = start(cfg, "edm-rates", {"T", "omega", "gamma_T", "gamma_tot", "gamma_tot_norm"});
    r.metadata.push_back("gamma_tot(omega) = gamma_T(omega) - gamma_T(-omega); norm = gamma_tot / (w_d^2 N / gamma)");
    const std::vector<double> omegas = omega_values(cfg);
    run_scan(
        r, grid_points(r.axes),
        [&](const std::vector<double>& v) {
            const Point p = at(cfg, r.axes, v);
            const EdmParams e = edm_params(cfg, p.temperature);
            std::vector<std::vector<double>> rows;
            for (double w : omegas) {
                const double fwd = gamma_T(w, e), tot = fwd - gamma_T(-w, e);
                rows.push_back({p.temperature, w, fwd, tot, tot / e.rate_scale()});
            }
            return rows;
        },
        nan_row(5, columns_of(r.axes, r.columns)), jobs);
    return r;
}

ScanResult edm_evolve_cmd(const RunConfig& cfg, int) {
    require_axes(cfg, "edm-evolve", {});
    ScanResult r = start(cfg, "edm-evolve", {"t", "nb"});
    const EdmParams e = edm_params(cfg, cfg.temperature);
    const double rate = total_rate(e);
    double t_max = cfg.t_max;
    if (t_max == 0.0) {
        if (!(rate > 0.0)) throw ConfigError("t_max: required when the total rate is not positive");
        t_max = 5.0 * std::max(1, cfg.m0) / rate;
    }
    const std::vector<double> times = linear_grid(0.0, t_max, cfg.samples);
    const Trajectory tr = effective_dipole_evolve(e, cfg.m0, times);
    const auto& nb = tr.observables.at("nb");
    for (std::size_t i = 0; i < times.size(); ++i) r.rows.push_back({times[i], nb[i]});
    r.metadata.push_back("gamma_tot=" + format_number(rate));
    for (const auto& w : tr.warnings) r.metadata.push_back("warning: " + w);
    return r;
}

ScanResult tla_cmd(const RunConfig& cfg, int) {
    require_axes(cfg, "tla", {});
    ScanResult r = start(cfg, "tla", {"omega_d", "x_10", "epsilon", "gap_ratio", "valid"});
    const TlaReport t = tla_parameters(cfg.well);
    r.rows.push_back({t.omega_d, t.x_10, t.epsilon, t.gap_ratio, t.valid ? 1.0 : 0.0});
    if (t.boundary_warning) r.metadata.push_back("warning: wavefunction reaches the wall; increase x_max");
    return r;
}

ScanResult rabi_freq_cmd(const RunConfig& cfg, int jobs) {
    require_axes(cfg, "rabi-freq", {"g"});
    ScanResult r = start(cfg, "rabi-freq", {"g", "k", "n", "Omega", "abs_Omega"});
    run_scan(
        r, grid_points(r.axes),
        [&](const std::vector<double>& v) {
            const Point p = at(cfg, r.axes, v);
            std::vector<std::vector<double>> rows;
            for (int k = 1; k <= cfg.k_max; ++k)
                for (int n = k; n <= cfg.n_max; ++n) {
                    const double om = rabi_frequency(k, n, p.model);
                    rows.push_back({p.model.g, double(k), double(n), om, std::abs(om)});
                }
            return rows;
        },
        nan_row(5, columns_of(r.axes, r.columns)), jobs);
    return r;
}

const std::map<std::string, Runner>& runners() {
    static const std::map<std::string, Runner> m{
        {"gap-scan", gap_scan},          {"spectrum", spectrum},
        {"evolve", evolve_cmd},          {"transmission", transmission_cmd},
        {"dipole-response", dipole_response_cmd}, {"edm-rates", edm_rates_cmd},
        {"edm-evolve", edm_evolve_cmd},  {"tla", tla_cmd},
        {"rabi-freq", rabi_freq_cmd},
    };
    return m;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : runners()) n.push_back(k);
        return n;
    }();
    return names;
}

double gap_at(const ModelParams& p, const std::vector<BathSpec>& baths, double temperature, int levels) {
    const EigenSystem es = certified_spectrum(p, HamiltonianKind::rabi, levels);
    return liouvillian_gap(build_liouvillian(es, p, baths, temperature, levels));
}

ScanResult run_command(const std::string& name, const RunConfig& cfg, int jobs) {
    const auto it = runners().find(name);
    if (it == runners().end()) throw ConfigError("unknown command '" + name + "'");
    cfg.validate();
    return it->second(cfg, std::max(1, jobs));
}

}  // namespace usc
