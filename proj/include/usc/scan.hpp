// scan.hpp — parameter-grid execution and tabular output
#pragma once

#include "usc/config.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace usc {

struct ScanResult {
    std::vector<ScanAxis> axes;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> metadata;  // emitted as '#' lines or a JSON array
    std::vector<std::string> failures;  // one entry per failed point
};

// Outer product of the axes, last axis fastest (row-major in declaration
// order). An empty axis list yields a single empty point.
std::vector<std::vector<double>> grid_points(const std::vector<ScanAxis>& axes);

using PointFn = std::function<std::vector<std::vector<double>>(const std::vector<double>& point)>;
using FailFn = std::function<std::vector<double>(const std::vector<double>& point)>;

// Evaluates `fn` at every point on `jobs` worker threads and concatenates the
// returned rows in point order. A point that throws contributes fail(point)
// and a failure message instead.
void run_scan(ScanResult& out, const std::vector<std::vector<double>>& points, const PointFn& fn, const FailFn& fail,
              int jobs);

// --jobs, else USC_RELAX_JOBS, else hardware concurrency (at least 1).
int resolve_jobs(int requested);

void write_csv(const ScanResult& r, std::ostream& os);
void write_json(const ScanResult& r, std::ostream& os);

std::string format_number(double v);

}  // namespace usc
