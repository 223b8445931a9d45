#include "grouptune/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grouptune/digest.hpp"
#include "grouptune/error.hpp"

namespace grouptune {

using nlohmann::json;

SyntheticLandscape SyntheticLandscape::from_json_text(const std::string& text,
                                                      const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError("landscape " + origin + ": not valid JSON: " +
                          e.what());
    }
    SyntheticLandscape land;
    land.base = doc.value("base", 0.0);
    land.floor = doc.value("floor", 1e-3);
    land.noise_amplitude = doc.value("noise_amplitude", 0.0);
    if (!(land.floor > 0.0))
        throw ConfigError("landscape " + origin + ": floor must be > 0");
    if (land.noise_amplitude < 0.0)
        throw ConfigError("landscape " + origin +
                          ": noise_amplitude must be >= 0");
    if (doc.contains("weights")) {
        for (auto& [k, v] : doc["weights"].items()) {
            if (!v.is_number())
                throw ConfigError("landscape " + origin + ": weight of '" + k +
                                  "' is not a number");
            land.weights[k] = v.get<double>();
        }
    }
    for (const auto& js : doc.value("synergies", json::array())) {
        SynergyRule rule;
        rule.bonus = js.value("bonus", 0.0);
        if (!js.contains("pattern") || !js["pattern"].is_object() ||
            js["pattern"].empty())
            throw ConfigError("landscape " + origin +
                              ": synergy without a non-empty 'pattern' object");
        for (auto& [flag, state] : js["pattern"].items()) {
            if (!state.is_boolean())
                throw ConfigError("landscape " + origin + ": pattern state of '" +
                                  flag + "' is not a boolean");
            rule.pattern.emplace_back(flag, state.get<bool>());
        }
        land.synergies.push_back(std::move(rule));
    }
    return land;
}

SyntheticLandscape load_landscape(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open landscape file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return SyntheticLandscape::from_json_text(buf.str(), path.string());
}

std::string SyntheticLandscape::digest() const {
    std::ostringstream canon;
    canon.precision(17);
    canon << "base=" << base << ";floor=" << floor
          << ";noise=" << noise_amplitude;
    for (const auto& [k, v] : weights) canon << ";" << k << "=" << v;
    for (const auto& s : synergies) {
        canon << ";syn" << s.bonus << ":";
        for (const auto& [f, st] : s.pattern) canon << f << (st ? "+" : "-");
    }
    return digest_hex(canon.str());
}

SyntheticEvaluator::SyntheticEvaluator(const GroupTable& table,
                                       SyntheticLandscape land,
                                       std::uint64_t noise_seed)
    : table_(table), landscape_(std::move(land)),
      weight_by_flag_(table.flag_count(), 0.0), noise_rng_(noise_seed) {
    for (const auto& [name, w] : landscape_.weights) {
        auto fi = table_.index_of(name);
        if (!fi)
            throw ConfigError("landscape weight names unknown flag '" + name +
                              "'");
        weight_by_flag_[*fi] = w;
    }
    for (const auto& rule : landscape_.synergies) {
        std::vector<std::pair<std::size_t, bool>> resolved;
        for (const auto& [name, state] : rule.pattern) {
            auto fi = table_.index_of(name);
            if (!fi)
                throw ConfigError("landscape synergy names unknown flag '" +
                                  name + "'");
            resolved.emplace_back(*fi, state);
        }
        resolved_patterns_.push_back(std::move(resolved));
    }
}

double SyntheticEvaluator::raw_perf(const Combination& comb) const {
    if (comb.size() != table_.flag_count())
        throw ConfigError("combination size does not match the group table");
    double perf = landscape_.base;
    for (std::size_t fi = 0; fi < comb.size(); ++fi)
        if (comb.enabled(fi)) perf -= weight_by_flag_[fi];
    for (std::size_t r = 0; r < resolved_patterns_.size(); ++r) {
        bool matched = true;
        for (const auto& [fi, state] : resolved_patterns_[r])
            if (comb.enabled(fi) != state) {
                matched = false;
                break;
            }
        if (matched) perf -= landscape_.synergies[r].bonus;
    }
    return perf;
}

double SyntheticEvaluator::perf_of(const Combination& comb) const {
    return std::max(raw_perf(comb), landscape_.floor);
}

Measurement SyntheticEvaluator::evaluate(const Combination& comb) {
    double perf = raw_perf(comb);
    if (landscape_.noise_amplitude > 0.0) {
        const double u = noise_rng_.uniform01();
        perf += (2.0 * u - 1.0) * landscape_.noise_amplitude;
    }
    perf = std::max(perf, landscape_.floor);
    Measurement m = Measurement::valid({perf}, "");
    m.output_digest = digest_hex("synthetic");
    return m;
}

} // namespace grouptune
