#pragma once

#include <array>
#include <cstddef>

namespace pidga {

/// PID gains in chromosome order (kd, kp, ki).
struct PidGains {
    double kd = 0.0;
    double kp = 0.0;
    double ki = 0.0;

    [[nodiscard]] std::array<double, 3> genes() const { return {kd, kp, ki}; }
    static PidGains from_genes(const std::array<double, 3>& g) { return {g[0], g[1], g[2]}; }

    friend bool operator==(const PidGains&, const PidGains&) = default;
};

struct Interval {
    double low = 0.0;
    double high = 1.0;

    [[nodiscard]] bool contains(double v) const { return v >= low && v <= high; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Search box for the three genes, indexed like PidGains::genes().
struct GeneBounds {
    std::array<Interval, 3> gene;

    [[nodiscard]] const Interval& operator[](std::size_t i) const { return gene[i]; }
    [[nodiscard]] bool contains(const std::array<double, 3>& g) const {
        return gene[0].contains(g[0]) && gene[1].contains(g[1]) && gene[2].contains(g[2]);
    }
    friend bool operator==(const GeneBounds&, const GeneBounds&) = default;
};

}  // namespace pidga
