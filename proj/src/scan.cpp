#include "usc/scan.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace usc {

std::vector<std::vector<double>> grid_points(const std::vector<ScanAxis>& axes) {
    std::vector<std::vector<double>> pts{{}};
    for (const ScanAxis& a : axes) {
        std::vector<std::vector<double>> next;
        for (const auto& p : pts)
            for (double v : a.values()) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        pts = std::move(next);
    }
    return pts;
}

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("USC_RELAX_JOBS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void run_scan(ScanResult& out, const std::vector<std::vector<double>>& points, const PointFn& fn, const FailFn& fail,
              int jobs) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::vector<double>>> results(n);
    std::vector<std::string> errors(n);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                results[i] = fn(points[i]);
            } catch (const std::exception& e) {
                results[i] = {fail(points[i])};
                errors[i] = e.what();
                if (errors[i].empty()) errors[i] = "unknown failure";
            }
        }
    };
    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (auto& row : results[i]) out.rows.push_back(std::move(row));
        if (!errors[i].empty()) {
            std::string where;
            for (std::size_t a = 0; a < points[i].size() && a < out.axes.size(); ++a)
                where += (a ? ", " : "") + out.axes[a].name + "=" + format_number(points[i][a]);
            out.failures.push_back("point " + std::to_string(i) + (where.empty() ? "" : " (" + where + ")") + ": " +
                                   errors[i]);
        }
    }
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(const ScanResult& r, std::ostream& os) {
    for (const auto& m : r.metadata) os << "# " << m << '\n';
    for (const auto& f : r.failures) os << "# failed " << f << '\n';
    for (std::size_t c = 0; c < r.columns.size(); ++c) os << (c ? "," : "") << r.columns[c];
    os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
        os << '\n';
    }
}

void write_json(const ScanResult& r, std::ostream& os) {
    nlohmann::json j;
    j["metadata"] = r.metadata;
    j["failures"] = r.failures;
    j["columns"] = r.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json jr = nlohmann::json::array();
        for (double v : row) jr.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json());
        rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
    os << j.dump(1) << '\n';
}

}  // namespace usc
