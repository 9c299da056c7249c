#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "bq/scenarios.hpp"

namespace bq {

/// Provenance of one scenario run.
struct RunManifest {
  std::map<std::string, std::string> config;
  std::string code_version;
  std::string started;
  std::string finished;
  ScenarioReport report;
};

/// Library version string.
std::string code_version();
/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

std::string to_json(const RunManifest& m);
/// Writes to_json(m); throws IoError.  Records a failed "artifacts exist"
/// check in the written file when a declared artifact is missing.
void write_manifest(const RunManifest& m, const std::filesystem::path& path);

}  // namespace bq
