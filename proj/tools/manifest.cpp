#include "manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "procyc/version.hpp"

namespace procyc::cli {

std::string file_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input for digest: " + path.string());
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const auto got = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ull;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
    return hex;
}

void RunManifest::add_input(const std::filesystem::path& path) {
    inputs.emplace_back(path.string(), file_digest(path));
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["version"] = version;
    j["timestamp"] = timestamp;
    j["seed"] = seed;
    j["config"] = config;
    j["inputs"] = nlohmann::json::array();
    for (const auto& [path, digest] : inputs) {
        j["inputs"].push_back({{"path", path}, {"fnv1a64", digest}});
    }
    return j;
}

RunManifest make_manifest(const std::string& command, std::uint64_t seed) {
    RunManifest m;
    m.command = command;
    m.seed = seed;
    m.version = kVersion;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    m.timestamp = buf;
    return m;
}

}  // namespace procyc::cli
