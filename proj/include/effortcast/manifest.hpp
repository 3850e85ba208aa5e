#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace effortcast {

/// Provenance record written next to every subcommand's outputs. The
/// timestamp is the only field allowed to differ between identical runs.
struct RunManifest {
    std::string timestamp;  // ISO-8601 UTC
    std::string subcommand;
    std::string config_digest;
    std::vector<std::pair<std::string, std::string>> input_digests;  // (path, fnv1a64)
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> output_paths;
};

std::string now_iso8601_utc();
void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace effortcast
