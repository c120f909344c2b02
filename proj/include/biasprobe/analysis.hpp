#pragma once

#include <map>
#include <string>
#include <vector>

#include "biasprobe/frequency.hpp"
#include "biasprobe/matrix.hpp"
#include "biasprobe/metrics.hpp"

namespace biasprobe {

enum class CorrelationKind { kCheckpointPair, kSeedPair };

std::string_view to_string(CorrelationKind kind);

/// Pairwise Pearson coefficients. Exactly symmetric with a unit diagonal.
struct CorrelationMatrix {
  CorrelationKind kind = CorrelationKind::kCheckpointPair;
  std::vector<long long> labels;  // checkpoint steps or seed indices
  Matrix values;
};

struct Histogram {
  std::vector<double> edges;  // bins + 1 entries
  std::vector<std::size_t> counts;

  std::size_t total() const;
};

/// Uniform bins over [0, upper]; the top edge is inclusive. With upper == 0
/// every value lands in the first bin.
Histogram make_histogram(std::span<const double> values, double upper, std::size_t bins);

struct FluctuationStats {
  double min = 0.0;
  double max = 0.0;
  Histogram histogram;
};

inline constexpr std::size_t kDefaultHistogramBins = 30;

/// Extremes of v and a histogram over [0, max(v)].
FluctuationStats rq1_stats(const FluctuationSummary& summary,
                           std::size_t bins = kDefaultHistogramBins);

/// pearson(v, c-bar).
double rq2_certainty_correlation(const FluctuationSummary& summary);

/// pearson(v, f); profession axes must match by name and order.
double rq3_frequency_correlation(const FluctuationSummary& summary, const FrequencyTable& freq);

/// Correlation of every pair of checkpoint rows of N (normalized) or R.
CorrelationMatrix rq4_checkpoint_correlations(const ScoreMatrixSet& mset, RatioSource source);

/// Correlation of averaged ratio vectors (n-bar or r-bar) between seeds.
CorrelationMatrix rq5_seed_correlations(const std::map<int, FluctuationSummary>& summaries,
                                        RatioSource source);

/// Builds a correlation matrix over equally long vectors. `what` names the
/// label kind ("step", "seed") in zero-variance errors.
CorrelationMatrix correlate_all(const std::vector<std::span<const double>>& vectors,
                                std::vector<long long> labels, CorrelationKind kind,
                                const std::string& what);

}  // namespace biasprobe
