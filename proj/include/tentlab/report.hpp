#pragma once

#include <json.hpp>

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace tentlab {

/// One measured quantity against its bound. relation is "<=", ">=" or
/// "holds"; pass is decided by the producer and stored as is.
struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    std::string relation = "<=";
    bool pass = false;

    bool operator==(const Check&) const = default;
};

/// pass = value <= bound (false for NaN).
Check check_le(std::string name, double value, double bound);
/// pass = value >= bound (false for NaN).
Check check_ge(std::string name, double value, double bound);
/// pass = ok; the bound column is unused.
Check check_true(std::string name, double value, bool ok);

struct StageTiming {
    std::string stage;
    double seconds = 0.0;

    bool operator==(const StageTiming&) const = default;
};

/// (scale, value) pairs of one ratio-vs-scale curve.
struct PlotSeries {
    std::string name;
    std::string x_label;
    std::string y_label;
    std::vector<std::pair<double, double>> points;

    bool operator==(const PlotSeries&) const = default;
};

struct RunReport {
    std::string experiment;
    nlohmann::json config;
    std::vector<Check> checks;
    std::vector<StageTiming> timings;
    std::vector<PlotSeries> plots;
    nlohmann::json details = nlohmann::json::object();

    /// All checks pass; an empty report passes.
    bool pass() const;
    /// Checks ordered by name.
    void sort_checks();

    bool operator==(const RunReport&) const = default;
};

nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

/// Rows check,value,bound,relation,pass with a header line.
void write_checks_csv(std::ostream& out, const RunReport& r);
/// Rows series,x,y; one per (scale, value) pair.
void write_plot_csv(std::ostream& out, const RunReport& r);

/// Writes path (JSON or checks CSV) and, when the report has curves,
/// path with extension ".plot.csv". Throws std::runtime_error if unwritable.
void emit(const RunReport& r, const std::string& format, const std::filesystem::path& path);

}  // namespace tentlab
