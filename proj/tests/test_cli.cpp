#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(USC_RELAX_EXE) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("csv output with metadata header") {
    const Run r = run("--set g=0.5 --set scan=[g,0,1,3] --jobs 2 gap-scan");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("# usc_relax ", 0) == 0);
    CHECK(r.out.find("# config: g = ") != std::string::npos);
    CHECK(r.out.find("\ng,epsilon,lambda\n") != std::string::npos);
}

TEST_CASE("config file, json and output path") {
    const std::string cfg = "cli_test.cfg", out = "cli_test.json";
    {
        std::ofstream f(cfg);
        f << "# rates of the extended Dicke model\n"
             "g = 1\nepsilon = 1\nomega_grid = [omega, 0.5, 1.5, 5]\nscan = [T, 0, 2, 2]\n";
    }
    const Run r = run("--config " + cfg + " --format json --output " + out + " edm-rates");
    CHECK(r.status == 0);
    std::ifstream in(out);
    const nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["columns"].size() == 5);
    CHECK(j["rows"].size() == 10);
    std::remove(cfg.c_str());
    std::remove(out.c_str());
}

TEST_CASE("configuration errors exit with status 2") {
    CHECK(run("--set levels=99 gap-scan").status == 2);
    CHECK(run("--set nonsense=1 tla").status == 2);
    CHECK(run("tla").status == 0);
}

TEST_CASE("worker count from the environment") {
    setenv("USC_RELAX_JOBS", "3", 1);
    const Run env = run("--verbose --set scan=[g,0,1,2] gap-scan");
    unsetenv("USC_RELAX_JOBS");
    const Run flag = run("--jobs 1 --set scan=[g,0,1,2] gap-scan");
    CHECK(env.status == 0);
    CHECK(env.out == flag.out);
}

TEST_CASE("options may follow the subcommand") {
    const Run r = run("--set g=0.5 rabi-freq --set k_max=2 --set n_max=2");
    CHECK(r.status == 0);
    CHECK(r.out.find("# config: k_max = 2") != std::string::npos);
    CHECK(r.out.find("\n0.5,2,2,") != std::string::npos);
}
