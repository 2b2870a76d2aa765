#include "pidga/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace pidga {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0' || errno == ERANGE)
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    return d;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
    char* end = nullptr;
    errno = 0;
    if (v.empty() || v.front() == '-') throw ConfigError(key + ": expected a non-negative integer");
    const unsigned long long n = std::strtoull(v.c_str(), &end, 10);
    if (*end != '\0' || errno == ERANGE)
        throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
    return n;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"plant_gain", [](auto& c, auto& k, auto& v) { c.plant.gain = to_double(k, v); }},
        {"plant_time_constant",
         [](auto& c, auto& k, auto& v) { c.plant.time_constant = to_double(k, v); }},
        {"delays",
         [](auto& c, auto& k, auto& v) {
             c.delays.clear();
             for (const auto& item : split_list(v)) c.delays.push_back(to_double(k, item));
         }},
        {"objectives",
         [](auto& c, auto& k, auto& v) {
             c.objectives.clear();
             for (const auto& item : split_list(v)) {
                 const auto kind = parse_objective(item);
                 if (!kind) throw ConfigError(k + ": unknown objective '" + item + "'");
                 c.objectives.push_back(*kind);
             }
             if (c.objectives.empty()) throw ConfigError(k + ": empty list");
         }},
        {"dt", [](auto& c, auto& k, auto& v) { c.dt = to_double(k, v); }},
        {"horizon", [](auto& c, auto& k, auto& v) { c.horizon = to_double(k, v); }},
        {"pop_size", [](auto& c, auto& k, auto& v) { c.ga.pop_size = to_unsigned(k, v); }},
        {"max_generations",
         [](auto& c, auto& k, auto& v) { c.ga.max_generations = to_unsigned(k, v); }},
        {"selection_q", [](auto& c, auto& k, auto& v) { c.ga.selection_q = to_double(k, v); }},
        {"crossover_pairs",
         [](auto& c, auto& k, auto& v) { c.ga.crossover_pairs_per_gen = to_unsigned(k, v); }},
        {"mutation_prob", [](auto& c, auto& k, auto& v) { c.ga.mutation_prob = to_double(k, v); }},
        {"elite_count", [](auto& c, auto& k, auto& v) { c.ga.elite_count = to_unsigned(k, v); }},
        {"bounds_factor", [](auto& c, auto& k, auto& v) { c.bounds_factor = to_double(k, v); }},
        {"seed", [](auto& c, auto& k, auto& v) { c.seed = to_unsigned(k, v); }},
        {"output_dir", [](auto& c, auto&, auto& v) { c.output_dir = v; }},
        {"threads", [](auto& c, auto& k, auto& v) { c.threads = to_unsigned(k, v); }},
        {"reference_csv", [](auto& c, auto&, auto& v) { c.reference_csv = v; }},
    };
    return table;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end())
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        try {
            it->second(base, key, value);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    try {
        base.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

}  // namespace pidga
