#include "polarforge/manifest.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

namespace polarforge {

nlohmann::json RunManifest::to_json() const {
    auto now = std::chrono::system_clock::now().time_since_epoch();
    nlohmann::json j;
    j["tool"] = "polarforge";
    j["version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["created_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    j["seed"] = seed;
    j["params"] = params;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    if (!results.is_null()) j["results"] = results;
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.params = j.at("params");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.inputs = j.value("inputs", std::vector<std::string>{});
    m.outputs = j.value("outputs", std::vector<std::string>{});
    return m;
}

void RunManifest::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << to_json().dump(2) << "\n";
}

RunManifest RunManifest::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    nlohmann::json j;
    is >> j;
    return from_json(j);
}

std::string RunManifest::path_for(const std::string& output_path) {
    return output_path + ".manifest.json";
}

}  // namespace polarforge
