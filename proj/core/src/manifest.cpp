#include "bq/manifest.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "bq/io.hpp"
#include "json.hpp"

#ifndef BQ_VERSION
#define BQ_VERSION "unknown"
#endif

namespace bq {

namespace {

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string code_version() { return BQ_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_json(const RunManifest& m) {
  nlohmann::json j;
  j["scenario"] = m.report.scenario;
  j["code_version"] = m.code_version;
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["passed"] = m.report.passed();
  j["config"] = m.config;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : m.report.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"value", number(c.value)},
                           {"bound", number(c.bound)},
                           {"detail", c.detail}});
  }
  j["metrics"] = nlohmann::json::object();
  for (const auto& [k, v] : m.report.metrics) j["metrics"][k] = number(v);
  j["artifacts"] = nlohmann::json::array();
  for (const auto& a : m.report.artifacts) j["artifacts"].push_back(a.string());
  j["notes"] = m.report.notes;
  return j.dump(2);
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
  RunManifest out = m;
  std::vector<std::string> missing;
  for (const auto& a : m.report.artifacts) {
    if (!std::filesystem::exists(a)) missing.push_back(a.string());
  }
  if (!missing.empty()) {
    std::string detail;
    for (const auto& s : missing) detail += (detail.empty() ? "" : ", ") + s;
    out.report.checks.push_back(Check{"declared artifacts exist", false, static_cast<double>(missing.size()), 0.0,
                                      "missing: " + detail});
  }
  std::ofstream f(path);
  if (!f) throw IoError(path, "cannot open for writing");
  f << to_json(out) << '\n';
  f.flush();
  if (!f) throw IoError(path, "write failed");
}

}  // namespace bq
