#include "effortcast/manifest.hpp"

#include <ctime>
#include <fstream>

#include <json.hpp>

#include "effortcast/errors.hpp"

namespace effortcast {

std::string now_iso8601_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["timestamp"] = manifest.timestamp;
    doc["subcommand"] = manifest.subcommand;
    doc["config_digest"] = manifest.config_digest;
    auto& inputs = doc["inputs"] = nlohmann::ordered_json::array();
    for (const auto& [file, digest] : manifest.input_digests) {
        inputs.push_back({{"path", file}, {"digest", digest}});
    }
    doc["seeds"] = manifest.seeds;
    doc["outputs"] = manifest.output_paths;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed while writing: " + path);
}

}  // namespace effortcast
