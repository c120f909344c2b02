#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biasprobe/datastore.hpp"

namespace biasprobe {

/// P(he) / P(she). `context` is appended to error messages (e.g. step and
/// profession of the offending cell).
double bias_ratio(double p_he, double p_she, std::string_view context = {});

/// Ratio rescaled by the prior template: r * (prior_she / prior_he).
double normalized_ratio(double ratio, double prior_he, double prior_she,
                        std::string_view context = {});

/// P(he) + P(she).
double certainty(double p_he, double p_she, std::string_view context = {});

double arithmetic_mean(std::span<const double> values);

/// Population standard deviation (divides by n). Exactly 0 for constant input.
double population_sd(std::span<const double> values);

/// Population SD over arithmetic mean. Needs at least two values and a
/// nonzero mean.
double coefficient_of_variation(std::span<const double> values);

/// Product-moment correlation. Throws DomainError on length mismatch, fewer
/// than two points, or zero variance in either input.
double pearson(std::span<const double> x, std::span<const double> y);

enum class RatioSource { kUnnormalized, kNormalized };

std::string_view to_string(RatioSource s);
RatioSource parse_ratio_source(std::string_view text);

/// Plateau rows k..b-1 of every matrix.
struct PlateauConfig {
  std::size_t start = 0;  // k
  std::size_t rows = 0;   // b

  /// Throws InputError unless 0 <= k and at least two plateau rows remain.
  void validate() const;
};

struct FluctuationSummary {
  RatioSource source = RatioSource::kUnnormalized;
  std::vector<std::string> professions;
  std::vector<double> cv;                 // v
  std::vector<double> mean_certainty;     // c-bar
  std::vector<double> mean_normalized;    // n-bar
  std::vector<double> mean_unnormalized;  // r-bar

  /// The averaged ratio vector matching `source` (n-bar or r-bar).
  const std::vector<double>& mean_ratio() const {
    return source == RatioSource::kNormalized ? mean_normalized : mean_unnormalized;
  }
};

FluctuationSummary fluctuation_summary(const ScoreMatrixSet& mset, const PlateauConfig& cfg,
                                       RatioSource source);

/// Certainty and fluctuation of the prior template itself over the plateau:
/// mean of prior_he + prior_she, and CV of prior_he / prior_she.
struct PriorPoint {
  double mean_certainty = 0.0;
  double cv = 0.0;
};

PriorPoint prior_fluctuation(const ScoreMatrixSet& mset, const PlateauConfig& cfg);

}  // namespace biasprobe
