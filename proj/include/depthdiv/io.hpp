#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "depthdiv/depth.hpp"
#include "depthdiv/distribution.hpp"

namespace depthdiv {

using json = nlohmann::ordered_json;

// --- distribution descriptors ----------------------------------------------
// {"kind":"gaussian","mu":0.0,"sigma":1.0} | {"kind":"uniform","lo":..,"hi":..}
// | {"kind":"sd_reference"}

inline json descriptor_to_json(const Distribution& dist) {
    return std::visit(
        [](const auto& p) -> json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, GaussianParams>) {
                return json{{"kind", "gaussian"}, {"mu", p.mu}, {"sigma", p.sigma}};
            } else if constexpr (std::is_same_v<T, UniformParams>) {
                return json{{"kind", "uniform"}, {"lo", p.lo}, {"hi", p.hi}};
            } else if constexpr (std::is_same_v<T, SdReferenceParams>) {
                return json{{"kind", "sd_reference"}};
            } else {
                throw std::invalid_argument("descriptor_to_json: custom laws are not serializable");
            }
        },
        dist.descriptor());
}

inline Distribution distribution_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gaussian") return Distribution::gaussian(j.at("mu").get<double>(), j.at("sigma").get<double>());
    if (kind == "uniform") return Distribution::uniform_interval(j.at("lo").get<double>(), j.at("hi").get<double>());
    if (kind == "sd_reference") return Distribution::sd_reference();
    throw std::invalid_argument("distribution_from_json: unknown kind '" + kind + "'");
}

// --- single-column sample CSV ------------------------------------------------
// One real per line; an optional header line ("value" or "depth") is skipped
// on read and written on write.

inline std::vector<double> read_value_column(std::istream& in) {
    std::vector<double> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line == "value" || line == "depth") continue;
        }
        std::size_t pos = 0;
        const double v = std::stod(line, &pos);
        out.push_back(v);
    }
    return out;
}

inline SortedSample read_sample_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sample file: " + path);
    return SortedSample::from_values(read_value_column(in));
}

inline void write_value_column(std::ostream& out, const std::vector<double>& values, const std::string& header) {
    out << header << "\n";
    out.precision(17);
    for (double v : values) out << v << "\n";
}

inline void write_sample_csv(const std::string& path, const SortedSample& sample) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sample file: " + path);
    write_value_column(out, sample.values(), "value");
}

inline void write_depth_csv(const std::string& path, const DepthSample& depths) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write depth file: " + path);
    write_value_column(out, depths.values, "depth");
}

}  // namespace depthdiv
