#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pidga::svg {

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
    bool dashed = false;
};

/// Static line chart on a fixed 800x600 viewBox.  x ticks sit at the given
/// tick positions; y ticks are chosen from the data range (decades when log_y).
struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    std::vector<double> x_ticks;
    std::vector<Series> series;

    [[nodiscard]] std::string render() const;
};

std::string escape(const std::string& text);

}  // namespace pidga::svg
