#pragma once

#include <string>

#include "uq/report.hpp"
#include "uq/schemes.hpp"

namespace uq {

// One scenario file: the world, plus the scheme and report settings to
// apply to it.
struct ScenarioFile {
  Scenario scenario;
  SchemeConfig scheme;
  ReportConfig report;
};

// JSON round-trip. Parse or schema violations throw std::runtime_error
// with the offending field path (e.g. "entities[2].waypoints[0]").
ScenarioFile parse_scenario(const std::string& text);
std::string serialize_scenario(const ScenarioFile& sf);

ScenarioFile load_scenario(const std::string& path);
void save_scenario(const ScenarioFile& sf, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace uq
