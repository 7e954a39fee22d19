#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace polarforge {

inline constexpr const char* kToolVersion = "0.1.0";

// Every output file is paired with a manifest that re-runs the producing
// command bit-exactly: tool version, subcommand, full parameter echo,
// master seed and file paths. Timestamps are informational only.
struct RunManifest {
    std::string subcommand;
    nlohmann::json params;  // canonical parameter echo
    std::uint64_t seed = 0;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    nlohmann::json results;  // informational (e.g. evolve history); ignored on replay

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);

    void save(const std::string& path) const;
    static RunManifest load(const std::string& path);

    // manifest path convention: primary output + ".manifest.json"
    static std::string path_for(const std::string& output_path);
};

}  // namespace polarforge
