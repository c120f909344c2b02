#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "biasprobe/analysis.hpp"
#include "biasprobe/plot.hpp"

namespace biasprobe {

inline constexpr std::string_view kToolName = "biasprobe";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// One template's pronoun probabilities over all checkpoints.
struct TrajectorySeries {
  std::string label;  // profession name, or "prior"
  std::vector<double> he, she;
};

/// Statistics for one ratio source at one plateau start.
struct SourceAnalysis {
  RatioSource source = RatioSource::kUnnormalized;
  FluctuationSummary summary;
  FluctuationStats rq1;
  double rq2 = 0.0;
  std::optional<double> rq3;
  std::optional<CaseMode> rq3_case_mode;
};

struct PlateauAnalysis {
  std::size_t k = 0;
  PriorPoint prior;
  std::vector<SourceAnalysis> sources;
};

struct RunResult {
  std::string model;
  int seed = 0;
  Verb verb = Verb::kIs;
  std::vector<std::int64_t> steps;
  std::vector<std::string> professions;
  std::vector<TrajectorySeries> trajectory;
  std::vector<std::pair<RatioSource, CorrelationMatrix>> rq4;
  std::vector<PlateauAnalysis> plateaus;
};

struct SeedCorrelationResult {
  std::string model;
  Verb verb = Verb::kIs;
  std::size_t k = 0;
  RatioSource source = RatioSource::kUnnormalized;
  CorrelationMatrix rq5;
};

struct FrequencyResult {
  CaseMode case_mode = CaseMode::kLowercase;
  std::string corpus;
  std::vector<std::pair<std::string, double>> ranking;  // top-n
  std::vector<double> sorted_frequencies;               // all professions, descending
};

struct ReportOptions {
  std::size_t histogram_bins = kDefaultHistogramBins;
  double heatmap_floor = 0.6;
  bool png = true;
  std::string ngram_corpus = "en-2019";
};

struct ReportBundle {
  ReportOptions options;
  std::vector<RunResult> runs;
  std::vector<SeedCorrelationResult> seed_correlations;
  std::vector<FrequencyResult> frequency;

  bool empty() const { return runs.empty() && seed_correlations.empty() && frequency.empty(); }
};

nlohmann::json to_json(const ReportBundle& bundle);
ReportBundle bundle_from_json(const nlohmann::json& doc);

/// Writes report/report.json and report/tables/*.csv under `out_dir`.
/// Output bytes depend only on the bundle.
void export_report(const ReportBundle& bundle, const std::filesystem::path& out_dir);

/// Writes every figure under out_dir/figures.
void render_figures(const ReportBundle& bundle, const std::filesystem::path& out_dir);

std::string verb_slug(Verb verb);

/// Divides a series by its own maximum. Throws DomainError for all-zero input.
std::vector<double> normalize_by_max(std::span<const double> series);

/// Probability (or max-normalized probability) against checkpoint step, one
/// line per pronoun and template.
plot::Canvas render_trajectory(std::span<const std::int64_t> steps,
                               std::span<const TrajectorySeries> series, bool normalize,
                               const std::string& title);

struct ScatterPrior {
  double x = 0, y = 0;
};

struct ScatterHistograms {
  Histogram x, y;
};

/// Marginal histograms drawn next to the scatter.
ScatterHistograms scatter_histograms(std::span<const double> x, std::span<const double> y,
                                     std::size_t bins);

/// Scatter of (x, y) with marginal histograms; the optional prior point is
/// drawn as an 'x' marker.
plot::Canvas render_scatter_with_marginals(std::span<const double> x, std::span<const double> y,
                                           std::optional<ScatterPrior> prior,
                                           const std::string& x_label, const std::string& y_label,
                                           const std::string& title,
                                           std::size_t bins = kDefaultHistogramBins);

/// Color of a correlation value; values below `floor` get the floor's color.
plot::Color heatmap_color(double value, double floor);

plot::Canvas render_heatmap(const CorrelationMatrix& cm, double floor, const std::string& title);

/// Frequencies in descending order on a log scale.
plot::Canvas render_frequency_rank(std::span<const double> sorted_frequencies,
                                   const std::string& title);

}  // namespace biasprobe
