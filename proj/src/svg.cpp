#include "pidga/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace pidga::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 90.0;
constexpr double kRight = 610.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 510.0;

constexpr std::array<const char*, 10> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    return ticks;
}

}  // namespace

std::string escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string LineChart::render() const {
    auto usable = [&](double y) { return std::isfinite(y) && (!log_y || y > 0.0); };

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (double t : x_ticks) {
        xmin = std::min(xmin, t);
        xmax = std::max(xmax, t);
    }
    for (const Series& s : series)
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !usable(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
    if (xmax == xmin) xmax = xmin + 1.0;
    if (!std::isfinite(ymin)) ymin = log_y ? 1.0 : 0.0, ymax = log_y ? 10.0 : 1.0;

    std::vector<double> y_ticks;
    if (log_y) {
        ymin = std::pow(10.0, std::floor(std::log10(ymin)));
        ymax = std::pow(10.0, std::ceil(std::log10(ymax)));
        if (ymax == ymin) ymax = ymin * 10.0;
        for (double t = ymin; t <= ymax * 1.000001; t *= 10.0) y_ticks.push_back(t);
    } else {
        if (ymax == ymin) {
            ymin -= 0.5 * std::max(1.0, std::abs(ymin));
            ymax += 0.5 * std::max(1.0, std::abs(ymax));
        }
        const double pad = 0.05 * (ymax - ymin);
        ymin = ymin >= 0.0 && ymin - pad < 0.0 ? 0.0 : ymin - pad;
        ymax += pad;
        y_ticks = linear_ticks(ymin, ymax);
    }

    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft); };
    auto py = [&](double y) {
        const double f = log_y ? (std::log10(y) - std::log10(ymin)) / (std::log10(ymax) - std::log10(ymin))
                               : (y - ymin) / (ymax - ymin);
        return kBottom - f * (kBottom - kTop);
    };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" fill=\"white\"/>\n"
       << "<text class=\"title\" x=\"" << num((kLeft + kRight) / 2) << "\" y=\"30\" "
       << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"18\">" << escape(title)
       << "</text>\n";

    os << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
       << "<line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight << "\" y2=\""
       << kBottom << "\"/>\n"
       << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
       << kBottom << "\"/>\n</g>\n";

    os << "<g class=\"x-ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (double t : x_ticks) {
        const std::string x = num(px(t));
        os << "<line x1=\"" << x << "\" y1=\"" << kBottom << "\" x2=\"" << x << "\" y2=\""
           << kBottom + 6 << "\" stroke=\"black\"/>"
           << "<text x=\"" << x << "\" y=\"" << kBottom + 18 << "\" text-anchor=\"end\" "
           << "transform=\"rotate(-45 " << x << ' ' << kBottom + 18 << ")\">" << label(t)
           << "</text>\n";
    }
    os << "</g>\n";

    os << "<g class=\"y-ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (double t : y_ticks) {
        const std::string y = num(py(t));
        os << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << y << "\" x2=\"" << kRight << "\" y2=\""
           << y << "\" stroke=\"#dddddd\"/>"
           << "<text x=\"" << kLeft - 9 << "\" y=\"" << y << "\" text-anchor=\"end\" "
           << "dominant-baseline=\"middle\">" << label(t) << "</text>\n";
    }
    os << "</g>\n";

    os << "<text x=\"" << num((kLeft + kRight) / 2) << "\" y=\"" << kHeight - 20
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
       << escape(x_label) << "</text>\n"
       << "<text x=\"25\" y=\"" << num((kTop + kBottom) / 2) << "\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 25 "
       << num((kTop + kBottom) / 2) << ")\">" << escape(y_label) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const Series& s = series[i];
        const char* color = kPalette[i % kPalette.size()];
        os << "<polyline class=\"series\" data-name=\"" << escape(s.name) << "\" fill=\"none\" "
           << "stroke=\"" << color << "\" stroke-width=\"2\""
           << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        bool first = true;
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !usable(y)) continue;
            os << (first ? "" : " ") << num(px(x)) << ',' << num(py(y));
            first = false;
        }
        os << "\"/>\n";
    }

    os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = kTop + 10 + 22.0 * static_cast<double>(i);
        os << "<line x1=\"630\" y1=\"" << num(y) << "\" x2=\"660\" y2=\"" << num(y)
           << "\" stroke=\"" << kPalette[i % kPalette.size()] << "\" stroke-width=\"2\""
           << (series[i].dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>"
           << "<text x=\"668\" y=\"" << num(y) << "\" dominant-baseline=\"middle\">"
           << escape(series[i].name) << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace pidga::svg
