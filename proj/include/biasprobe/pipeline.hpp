#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "biasprobe/config.hpp"
#include "biasprobe/report.hpp"

namespace biasprobe {

/// Writes <out>/templates/<model>.csv for every configured model and returns
/// the manifest paths.
std::vector<std::filesystem::path> run_templates(const RunConfig& cfg);

/// Estimates corpus frequencies for every profession in each configured case
/// mode. Writes <out>/frequency/<mode>.csv and the top-n ranking. When
/// `transport` is null, the config decides between recorded fixtures and the
/// live API.
std::vector<FrequencyTable> run_freq(const RunConfig& cfg, Transport* transport = nullptr);

/// Runs datastore, metrics and analysis for every (model, seed, verb, source)
/// and plateau start. Reads frequency tables written by run_freq when present.
ReportBundle analyze(const RunConfig& cfg);

/// analyze() followed by export_report() and render_figures() under cfg.output.
ReportBundle run_analyze(const RunConfig& cfg);

/// Re-renders tables and figures from an existing report.json.
ReportBundle run_report(const std::filesystem::path& report_json,
                        const std::filesystem::path& out_dir, std::optional<bool> png = {});

/// Profession axis for a model: configured lists if any, else the order of
/// first appearance in the data.
ProfessionList professions_for(const RunConfig& cfg, const ModelRunConfig& model,
                               std::span<const ScoreRecord> records);

/// Reorders `table` to follow `professions`. Throws when a profession is missing.
FrequencyTable align_frequency(const FrequencyTable& table,
                               const std::vector<std::string>& professions);

}  // namespace biasprobe
