#pragma once

#include <filesystem>
#include <string>

#include "gsctrack/bench.hpp"
#include "gsctrack/tracker.hpp"

namespace gsctrack::config {

/// Tracker configuration plus the harness-side reset protocol, as stored in
/// one JSON file. Missing keys keep their defaults.
struct FullConfig {
    tracker::TrackerConfig tracker;
    bench::ResetProtocol reset;
};

FullConfig load_config(const std::filesystem::path& path);
FullConfig parse_config(const std::string& json_text);
std::string serialize_config(const FullConfig& cfg);
void save_config(const FullConfig& cfg, const std::filesystem::path& path);

}  // namespace gsctrack::config
