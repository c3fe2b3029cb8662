// bergman-bench: runs experiment suites and writes JSON/CSV reports.
// Exit status: 0 all suites pass, 1 a check failed, 2 usage or config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bergman/error.hpp"
#include "bergman/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

bergman::SuiteConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw bergman::ConfigError("cannot read config file " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw bergman::ConfigError("config " + path + ": " + e.what());
  }
  return bergman::SuiteConfig::from_json(j);
}

bergman::ReportFormat parse_format(const std::string& s) {
  if (s == "json") return bergman::ReportFormat::json;
  if (s == "csv") return bergman::ReportFormat::csv;
  return bergman::ReportFormat::both;
}

int run(const std::vector<std::string>& suites, const std::optional<std::uint64_t>& seed,
        const std::optional<std::string>& out, const std::optional<std::string>& config_path,
        const std::string& format) {
  bergman::SuiteConfig base;
  if (config_path) base = load_config(*config_path);
  std::vector<std::string> names = suites;
  if (names.empty() && !base.suite.empty()) names.push_back(base.suite);
  if (names.empty()) throw bergman::ConfigError("no suite given; see `bergman-bench list`");
  for (const auto& n : names) {
    if (!bergman::is_suite(n)) throw bergman::ConfigError("unknown suite \"" + n + "\"");
  }
  if (seed) base.seed = *seed;
  if (out) base.out_dir = *out;

  bool all = true;
  for (const auto& n : names) {
    bergman::SuiteConfig cfg = base;
    cfg.suite = n;
    const bergman::ExperimentReport rep = bergman::run_suite(cfg);
    std::size_t failed = 0;
    for (const auto& c : rep.checks) {
      if (c.informational || c.pass) continue;
      ++failed;
      std::printf("  FAIL %s: %.6g %s %.6g%s%s\n", c.name.c_str(), c.value, c.relation.c_str(), c.threshold,
                  c.detail.empty() ? "" : "  ", c.detail.c_str());
    }
    std::printf("%-12s %s  %zu checks, %zu failed, %.1f s\n", n.c_str(), rep.passed() ? "PASS" : "FAIL",
                rep.checks.size(), failed, rep.wall_seconds);
    try {
      for (const auto& p : bergman::emit_report(rep, parse_format(format), cfg.out_dir)) {
        std::printf("  wrote %s\n", p.string().c_str());
      }
    } catch (const bergman::IoError& e) {
      std::fprintf(stderr, "bergman-bench: %s\n", e.what());
      return kExitFail;
    }
    std::fflush(stdout);
    all = all && rep.passed();
  }
  return all ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on weighted Bergman spaces of the disk, bidisk and ball."};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Print the suites and what each exercises");

  auto* run_cmd = app.add_subcommand("run", "Run one or more suites");
  std::vector<std::string> suites;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, config;
  std::string format = "both";
  run_cmd->add_option("suites", suites, "Suite names (see `list`); may come from the config instead");
  run_cmd->add_option("--seed", seed, "Base seed for every sampler (default 42)");
  run_cmd->add_option("--out", out, "Report directory (default .)");
  run_cmd->add_option("--config", config,
                      "JSON config: {\"suite\", \"seed\", \"tolerances\": {check: threshold}, \"out\"}");
  run_cmd->add_option("--format", format, "Report files to write")
      ->check(CLI::IsMember({"json", "csv", "both"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (list->parsed()) {
    for (const auto& s : bergman::suite_catalog()) std::printf("%-12s %s\n", s.name.c_str(), s.anchor.c_str());
    return kExitPass;
  }
  try {
    return run(suites, seed, out, config, format);
  } catch (const bergman::ConfigError& e) {
    std::fprintf(stderr, "bergman-bench: %s\n", e.what());
    return kExitUsage;
  }
}
