#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace procyc::cli {

/// Reproducibility record written next to every command's outputs: command,
/// resolved configuration, input digests, seed, tool version, timestamp.
struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, fnv1a64 digest
    std::uint64_t seed = 0;
    std::string version;
    std::string timestamp;

    void add_input(const std::filesystem::path& path);
    nlohmann::json to_json() const;
};

RunManifest make_manifest(const std::string& command, std::uint64_t seed);

/// FNV-1a 64-bit digest of a file's bytes, hex-encoded.
std::string file_digest(const std::filesystem::path& path);

}  // namespace procyc::cli
