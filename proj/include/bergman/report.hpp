#pragma once

// Experiment suites: each runs a fixed battery of seeded checks and
// returns a report whose overall verdict is the conjunction of its
// non-informational checks.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace bergman {

inline constexpr const char* kVersion = "0.1.0";

struct SuiteInfo {
  std::string name;
  std::string anchor;  // the statement the suite exercises
};

const std::vector<SuiteInfo>& suite_catalog();
bool is_suite(const std::string& name);

struct SuiteConfig {
  std::string suite;
  std::uint64_t seed = 42;
  /// Threshold overrides keyed by check name.
  std::map<std::string, double> tolerances;
  std::filesystem::path out_dir = ".";

  nlohmann::json to_json() const;
  /// Throws ConfigError on unknown keys, wrong types, or unknown suites.
  static SuiteConfig from_json(const nlohmann::json& j);
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  // "<=", "<", ">=", ">"
  bool pass = false;
  /// Reported only; does not affect the verdict.
  bool informational = false;
  std::string detail;
};

/// Plot-ready series.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  std::string suite;
  SuiteConfig config;
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();
  std::vector<Table> tables;
  double wall_seconds = 0.0;
  std::string version = kVersion;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Numerical trouble is recorded as a failed check, never thrown.
ExperimentReport run_suite(const SuiteConfig& config);

enum class ReportFormat { json, csv, both };

/// Writes <dir>/<suite>.json and/or one <dir>/<suite>_<table>.csv per table
/// (<dir>/<suite>_checks.csv when the report has no tables). Returns the
/// paths written; throws IoError naming the path and cause.
std::vector<std::filesystem::path> emit_report(const ExperimentReport& report,
                                               ReportFormat format,
                                               const std::filesystem::path& dir);

std::string table_to_csv(const Table& t);

}  // namespace bergman
