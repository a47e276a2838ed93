#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "chaoskit/cli/csv.hpp"
#include "chaoskit/cli/svg.hpp"

namespace chaoskit::cli {

inline constexpr std::string_view kArtifactVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 42;

using Json = nlohmann::ordered_json;

struct ScenarioConfig {
  std::string scenario;
  Json parameters = Json::object();  // overrides of the scenario defaults
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path out_dir = "chaoskit_out";
  bool plot = false;

  /// {"scenario": name, "seed": n, "out": dir, "plot": bool, "parameters": {...}}.
  /// Throws ParseError and InvalidConfig (unknown keys).
  static ScenarioConfig from_json(const std::string& text);
};

struct Verdict {
  std::string name;
  bool holds = false;
  Json evidence = Json::object();
};

struct PlotSpec {
  std::string table;
  PlotKind kind;
};

struct ResultBundle {
  Json metadata = Json::object();
  std::vector<Table> tables;
  std::vector<Verdict> verdicts;
  std::vector<PlotSpec> plots;
  std::vector<std::string> summary;  // human-readable lines for stdout

  bool all_hold() const;
  /// Throws InvalidArgument for unknown names.
  const Table& table(std::string_view name) const;
  const Verdict& verdict(std::string_view name) const;
};

std::vector<std::string_view> scenario_names();

/// Default parameters of a scenario. Throws UnknownScenario.
Json scenario_defaults(std::string_view scenario);

/// Deterministic given the config. Throws UnknownScenario, InvalidConfig.
ResultBundle run_scenario(const ScenarioConfig& config);

std::string verdicts_json(const ResultBundle& bundle);
std::string metadata_json(const ResultBundle& bundle);

/// Writes <table>.csv per table, verdicts.json, metadata.json and, when
/// config.plot is set, <table>.svg per plot. Returns the written paths.
std::vector<std::filesystem::path> write_bundle(const ResultBundle& bundle, const ScenarioConfig& config);

/// 0 when every verdict holds, 2 otherwise.
int exit_code(const ResultBundle& bundle);

}  // namespace chaoskit::cli
