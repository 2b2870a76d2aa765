#include "pidga/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "pidga/svg.hpp"

namespace fs = std::filesystem;

namespace pidga {

namespace {

void strip_fraction_zeros(std::string& s) {
    if (s.find('.') == std::string::npos) return;
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
}

std::ofstream open_for_write(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw std::runtime_error("cannot create output directory " + dir.string());
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5e", x);
    std::string sci(buf);
    const auto epos = sci.find('e');
    const int exponent = std::atoi(sci.c_str() + epos + 1);
    if (exponent >= -3 && exponent <= 5) {
        std::snprintf(buf, sizeof buf, "%.*f", 5 - exponent, x);
        std::string fixed(buf);
        strip_fraction_zeros(fixed);
        return fixed;
    }
    std::string mantissa = sci.substr(0, epos);
    strip_fraction_zeros(mantissa);
    return mantissa + sci.substr(epos);
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

double metric_value(const SweepRow& row, std::string_view metric) {
    if (metric == "po") return row.measures.percent_overshoot;
    if (metric == "st") return row.measures.settling_time_5pct;
    if (metric == "rt") return row.measures.rise_time_0_95;
    if (metric == "pt") return row.measures.peak_time;
    if (metric == "sm") return row.measures.stability_margin;
    if (metric == "sse") return row.measures.steady_state_error;
    if (metric == "mse") return row.indices.mse;
    if (metric == "iae") return row.indices.iae;
    if (metric == "ise") return row.indices.ise;
    if (metric == "itae") return row.indices.itae;
    if (metric == "itse") return row.indices.itse;
    throw std::invalid_argument("unknown metric " + std::string(metric));
}

std::vector<fs::path> emit_csv(const SweepReport& report, const fs::path& dir) {
    ensure_dir(dir);
    const auto averages = method_averages(report);
    auto has_rows = [&](const std::string& method) {
        for (const SweepRow& r : report.rows)
            if (r.method == method) return true;
        return false;
    };

    const fs::path measures_path = dir / "measures.csv";
    {
        std::ofstream out = open_for_write(measures_path);
        out << "method,po,st,rt,pt,sm\n";
        for (const MethodAverage& a : averages) {
            if (!has_rows(a.method)) continue;
            out << csv_field(a.method) << ',' << format_number(a.measures.percent_overshoot) << ','
                << format_number(a.measures.settling_time_5pct) << ','
                << format_number(a.measures.rise_time_0_95) << ','
                << format_number(a.measures.peak_time) << ','
                << format_number(a.measures.stability_margin) << '\n';
        }
        finish(out, measures_path);
    }

    const fs::path indices_path = dir / "indices.csv";
    {
        std::ofstream out = open_for_write(indices_path);
        out << "delay,method,mse,iae,ise,itae,itse\n";
        auto write = [&](const std::string& delay, const std::string& method,
                         const PerformanceIndices& ix) {
            out << delay << ',' << csv_field(method) << ',' << format_number(ix.mse) << ','
                << format_number(ix.iae) << ',' << format_number(ix.ise) << ','
                << format_number(ix.itae) << ',' << format_number(ix.itse) << '\n';
        };
        for (double d : report.delays)
            for (const std::string& m : report.methods)
                if (const SweepRow* r = report.find(d, m)) write(format_number(d), m, r->indices);
        for (const MethodAverage& a : averages)
            if (has_rows(a.method)) write("avg", a.method, a.indices);
        finish(out, indices_path);
    }

    const fs::path rows_path = dir / "rows.csv";
    {
        std::ofstream out = open_for_write(rows_path);
        out << "delay,method,kd,kp,ki,mse,iae,ise,itae,itse,po,st,rt,pt,sse,sm,converged,valid,"
               "seed,note\n";
        for (double d : report.delays)
            for (const std::string& m : report.methods) {
                const SweepRow* r = report.find(d, m);
                if (!r) continue;
                out << format_number(r->delay) << ',' << csv_field(r->method) << ','
                    << format_number(r->gains.kd) << ',' << format_number(r->gains.kp) << ','
                    << format_number(r->gains.ki);
                for (const char* metric :
                     {"mse", "iae", "ise", "itae", "itse", "po", "st", "rt", "pt", "sse", "sm"})
                    out << ',' << format_number(metric_value(*r, metric));
                out << ',' << (r->converged ? 1 : 0) << ',' << (r->valid ? 1 : 0) << ','
                    << r->seed << ',' << csv_field(r->note) << '\n';
            }
        finish(out, rows_path);
    }
    return {measures_path, indices_path, rows_path};
}

std::vector<ReferenceSeries> read_reference_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read reference file " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("reference file is empty");
    const auto header = split_csv_line(line);
    int method_col = -1, delay_col = -1;
    std::vector<std::pair<std::size_t, std::string>> metric_cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string& h = header[i];
        if (h == "method") {
            method_col = static_cast<int>(i);
        } else if (h == "delay") {
            delay_col = static_cast<int>(i);
        } else {
            SweepRow probe;
            try {
                (void)metric_value(probe, h);
            } catch (const std::invalid_argument&) {
                throw std::runtime_error("reference file: unknown column '" + h + "'");
            }
            metric_cols.emplace_back(i, h);
        }
    }
    if (method_col < 0 || delay_col < 0)
        throw std::runtime_error("reference file needs 'method' and 'delay' columns");

    std::vector<ReferenceSeries> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split_csv_line(line);
        if (f.size() != header.size())
            throw std::runtime_error("reference file line " + std::to_string(line_no) +
                                     ": wrong field count");
        auto parse = [&](const std::string& s) {
            char* end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (s.empty() || *end != '\0')
                throw std::runtime_error("reference file line " + std::to_string(line_no) +
                                         ": bad number '" + s + "'");
            return v;
        };
        const std::string& method = f[static_cast<std::size_t>(method_col)];
        const double delay = parse(f[static_cast<std::size_t>(delay_col)]);
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const ReferenceSeries& s) { return s.method == method; });
        if (it == out.end()) {
            out.push_back({method, {}});
            it = out.end() - 1;
        }
        for (const auto& [col, name] : metric_cols) {
            if (f[col].empty()) continue;
            it->metrics[name].emplace_back(delay, parse(f[col]));
        }
    }
    return out;
}

const std::vector<PlotSpec>& plot_specs() {
    static const std::vector<PlotSpec> specs = {
        {"fig3a_po.svg", "po", "Percent overshoot", "overshoot (%)", false},
        {"fig3b_st.svg", "st", "Settling time (5%)", "settling time (s)", false},
        {"fig3c_rt.svg", "rt", "Rise time (0-95%)", "rise time (s)", true},
        {"fig3d_pt.svg", "pt", "Peak time", "peak time (s)", false},
        {"fig3e_sm.svg", "sm", "Stability margin", "K_c", false},
        {"fig4a_mse.svg", "mse", "MSE", "MSE", false},
        {"fig4b_iae.svg", "iae", "IAE", "IAE", false},
        {"fig4c_ise.svg", "ise", "ISE", "ISE", false},
        {"fig4d_itae.svg", "itae", "ITAE", "ITAE", false},
        {"fig4e_itse.svg", "itse", "ITSE", "ITSE", false},
    };
    return specs;
}

std::vector<fs::path> emit_plots(const SweepReport& report, const fs::path& dir,
                                 const std::vector<ReferenceSeries>& reference) {
    if (report.delays.size() < 2) throw std::invalid_argument("plots need at least two delays");
    ensure_dir(dir);
    std::vector<fs::path> written;
    for (const PlotSpec& spec : plot_specs()) {
        svg::LineChart chart;
        chart.title = spec.title + " vs delay";
        chart.x_label = "delay (s)";
        chart.y_label = spec.y_label;
        chart.log_y = spec.log_y;
        chart.x_ticks = report.delays;
        for (const std::string& method : report.methods) {
            svg::Series s{method, {}, false};
            for (double d : report.delays) {
                const SweepRow* r = report.find(d, method);
                if (r && r->valid) s.points.emplace_back(d, metric_value(*r, spec.metric));
            }
            chart.series.push_back(std::move(s));
        }
        for (const ReferenceSeries& ref : reference) {
            const auto it = ref.metrics.find(spec.metric);
            if (it == ref.metrics.end()) continue;
            chart.series.push_back({ref.method, it->second, true});
        }
        const fs::path path = dir / spec.file;
        std::ofstream out = open_for_write(path);
        out << chart.render();
        finish(out, path);
        written.push_back(path);
    }
    return written;
}

}  // namespace pidga
