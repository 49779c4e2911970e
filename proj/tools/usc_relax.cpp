// usc_relax: parameter scans and figure tables for the dissipative Rabi model.
#include "usc/commands.hpp"
#include "usc/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Relaxation and spectroscopy of a dipole in an ultrastrongly coupled cavity"};
    app.set_version_flag("--version", std::string("usc_relax ") + usc::kVersion);
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, output, format;
    std::vector<std::string> overrides;
    int jobs = 0;
    bool verbose = false;
    app.add_option("--config", config_path, "Configuration file (key = value lines)")->check(CLI::ExistingFile);
    app.add_option("--set", overrides, "Override one setting, key=value (repeatable)");
    app.add_option("--output,-o", output, "Output file (default: stdout)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--jobs,-j", jobs, "Worker threads (default: USC_RELAX_JOBS or hardware)")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--verbose,-v", verbose, "Log progress and failures to stderr");
    app.add_flag_function(
        "--list-keys",
        [](std::int64_t) {
            for (const auto& k : usc::config_keys()) std::cout << k.name << "\t" << k.help << "\n";
            std::exit(0);
        },
        "Print the configuration keys and exit");

    for (const std::string& name : usc::command_names()) app.add_subcommand(name, "Run " + name);

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        usc::RunConfig cfg;
        if (!config_path.empty()) cfg = usc::load_config(config_path);
        for (const std::string& s : overrides) usc::apply_override(cfg, s);
        if (!output.empty()) cfg.output = output;
        if (!format.empty()) usc::apply_setting(cfg, "format", format);

        const int workers = usc::resolve_jobs(jobs);
        if (verbose) std::cerr << "usc_relax " << command << ": " << workers << " worker(s)\n";
        const usc::ScanResult r = usc::run_command(command, cfg, workers);
        for (const std::string& f : r.failures) std::cerr << "failed point: " << f << "\n";
        if (verbose) std::cerr << r.rows.size() << " rows, " << r.failures.size() << " failed point(s)\n";

        auto emit = [&](std::ostream& os) {
            if (cfg.format == usc::OutputFormat::json)
                usc::write_json(r, os);
            else
                usc::write_csv(r, os);
        };
        if (cfg.output.empty()) {
            emit(std::cout);
        } else {
            std::ofstream os(cfg.output);
            if (!os) throw usc::ConfigError("output: cannot open '" + cfg.output + "' for writing");
            emit(os);
        }
    } catch (const usc::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
