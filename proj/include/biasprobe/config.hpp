#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "biasprobe/frequency.hpp"
#include "biasprobe/metrics.hpp"
#include "biasprobe/profile.hpp"
#include "biasprobe/templates.hpp"

namespace biasprobe {

struct ModelRunConfig {
  ModelProfile profile;
  std::vector<std::filesystem::path> data;  // score tables
  std::vector<int> seeds;                   // empty: every seed found in the data
  std::vector<std::size_t> alternate_k;     // extra plateau starts
};

struct FrequencyConfig {
  std::string corpus = "en-2019";
  std::optional<std::filesystem::path> sizes;
  std::optional<std::filesystem::path> cache_dir;
  std::optional<std::filesystem::path> fixtures;  // recorded responses for offline runs
  double requests_per_minute = 30.0;
  std::vector<CaseMode> modes{CaseMode::kLowercase, CaseMode::kCaseInsensitive};
  std::size_t top_n = 20;
  bool offline = true;
};

/// Everything one reproduction run needs. Relative paths in the file are
/// resolved against the file's directory.
struct RunConfig {
  std::filesystem::path output = "out";
  std::vector<Verb> verbs{Verb::kIs, Verb::kWorksAs};
  std::vector<RatioSource> sources{RatioSource::kUnnormalized, RatioSource::kNormalized};
  std::vector<std::filesystem::path> profession_lists;
  std::optional<std::filesystem::path> determiners;
  std::size_t histogram_bins = 30;
  double heatmap_floor = 0.6;
  std::vector<std::size_t> trajectory_professions{0};
  bool png = true;
  std::vector<ModelRunConfig> models;
  FrequencyConfig frequency;
};

/// Parses the INI-style config: sections [run], [frequency] and one
/// [model:<name>] per model. Unset model fields fall back to the built-in
/// profile of the same name.
RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir);

/// Command-line overrides applied after loading.
struct ConfigOverrides {
  std::optional<std::size_t> k;
  std::optional<Verb> verb;
  std::optional<RatioSource> source;
  std::optional<std::filesystem::path> output;
  std::optional<bool> offline;
};

void apply_overrides(RunConfig& cfg, const ConfigOverrides& o);

/// Splits "a, b ,c" into trimmed non-empty items.
std::vector<std::string> split_list(std::string_view text);

}  // namespace biasprobe
