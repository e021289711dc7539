#include "tentlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>

namespace tentlab {

namespace {

/// JSON has no NaN or infinity; they travel as strings.
nlohmann::json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double from_number(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::invalid_argument("report: bad number '" + s + "'");
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("report: cannot write " + path.string());
    out << std::setprecision(17);
    return out;
}

}  // namespace

Check check_le(std::string name, double value, double bound) { return {std::move(name), value, bound, "<=", value <= bound}; }

Check check_ge(std::string name, double value, double bound) { return {std::move(name), value, bound, ">=", value >= bound}; }

Check check_true(std::string name, double value, bool ok) { return {std::move(name), value, 0.0, "holds", ok}; }

bool RunReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void RunReport::sort_checks() {
    std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
}

nlohmann::json to_json(const RunReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const Check& c : r.checks)
        checks.push_back({{"name", c.name}, {"value", number(c.value)}, {"bound", number(c.bound)}, {"relation", c.relation}, {"pass", c.pass}});
    nlohmann::json timings = nlohmann::json::array();
    for (const StageTiming& t : r.timings) timings.push_back({{"stage", t.stage}, {"seconds", t.seconds}});
    nlohmann::json plots = nlohmann::json::array();
    for (const PlotSeries& p : r.plots) {
        nlohmann::json pts = nlohmann::json::array();
        for (const auto& [x, y] : p.points) pts.push_back({number(x), number(y)});
        plots.push_back({{"name", p.name}, {"x", p.x_label}, {"y", p.y_label}, {"points", pts}});
    }
    return {{"experiment", r.experiment}, {"pass", r.pass()}, {"config", r.config}, {"checks", checks},
            {"timings", timings},         {"plots", plots},    {"details", r.details}};
}

RunReport report_from_json(const nlohmann::json& j) {
    RunReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.config = j.at("config");
    for (const auto& c : j.at("checks"))
        r.checks.push_back({c.at("name").get<std::string>(), from_number(c.at("value")), from_number(c.at("bound")),
                            c.at("relation").get<std::string>(), c.at("pass").get<bool>()});
    for (const auto& t : j.at("timings")) r.timings.push_back({t.at("stage").get<std::string>(), t.at("seconds").get<double>()});
    for (const auto& p : j.at("plots")) {
        PlotSeries s{p.at("name").get<std::string>(), p.at("x").get<std::string>(), p.at("y").get<std::string>(), {}};
        for (const auto& pt : p.at("points")) s.points.emplace_back(from_number(pt.at(0)), from_number(pt.at(1)));
        r.plots.push_back(std::move(s));
    }
    r.details = j.value("details", nlohmann::json::object());
    return r;
}

void write_checks_csv(std::ostream& out, const RunReport& r) {
    out << "check,value,bound,relation,pass\n";
    for (const Check& c : r.checks)
        out << c.name << ',' << c.value << ',' << c.bound << ',' << c.relation << ',' << (c.pass ? "true" : "false") << '\n';
}

void write_plot_csv(std::ostream& out, const RunReport& r) {
    out << "series,x,y\n";
    for (const PlotSeries& p : r.plots)
        for (const auto& [x, y] : p.points) out << p.name << ',' << x << ',' << y << '\n';
}

void emit(const RunReport& r, const std::string& format, const std::filesystem::path& path) {
    if (format != "json" && format != "csv") throw std::invalid_argument("report: format must be json or csv");
    {
        std::ofstream out = open_out(path);
        if (format == "json") out << to_json(r).dump(2) << '\n';
        else write_checks_csv(out, r);
        if (!out) throw std::runtime_error("report: write failed for " + path.string());
    }
    if (!r.plots.empty()) {
        std::filesystem::path plot = path;
        plot.replace_extension(".plot.csv");
        std::ofstream out = open_out(plot);
        write_plot_csv(out, r);
    }
}

}  // namespace tentlab
