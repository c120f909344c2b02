#include "biasprobe/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "biasprobe/error.hpp"

namespace biasprobe {

std::string_view to_string(CorrelationKind kind) {
  return kind == CorrelationKind::kSeedPair ? "seed-pair" : "checkpoint-pair";
}

std::size_t Histogram::total() const {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

Histogram make_histogram(std::span<const double> values, double upper, std::size_t bins) {
  if (bins == 0) throw InputError("histogram needs at least one bin");
  if (!(upper >= 0.0) || !std::isfinite(upper)) throw DomainError("histogram upper bound invalid");
  Histogram h;
  h.counts.assign(bins, 0);
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    h.edges[i] = upper * static_cast<double>(i) / static_cast<double>(bins);
  }
  for (double x : values) {
    if (!(x >= 0.0) || x > upper) {
      throw DomainError("histogram value outside [0, " + std::to_string(upper) + "]");
    }
    std::size_t bin = 0;
    if (upper > 0.0) {
      bin = static_cast<std::size_t>(x / upper * static_cast<double>(bins));
      bin = std::min(bin, bins - 1);
      // Keep edge values consistent with the stored edges.
      while (bin > 0 && x < h.edges[bin]) --bin;
      while (bin + 1 < bins && x >= h.edges[bin + 1]) ++bin;
    }
    ++h.counts[bin];
  }
  return h;
}

FluctuationStats rq1_stats(const FluctuationSummary& summary, std::size_t bins) {
  if (summary.cv.empty()) throw InputError("empty fluctuation summary");
  FluctuationStats stats;
  auto [lo, hi] = std::ranges::minmax_element(summary.cv);
  stats.min = *lo;
  stats.max = *hi;
  stats.histogram = make_histogram(summary.cv, stats.max, bins);
  return stats;
}

double rq2_certainty_correlation(const FluctuationSummary& summary) {
  try {
    return pearson(summary.cv, summary.mean_certainty);
  } catch (const DomainError& e) {
    throw DomainError(std::string("certainty correlation: ") + e.what());
  }
}

double rq3_frequency_correlation(const FluctuationSummary& summary, const FrequencyTable& freq) {
  if (summary.professions != freq.professions) {
    throw InputError("frequency table and fluctuation summary have different profession axes (" +
                     std::to_string(freq.professions.size()) + " vs " +
                     std::to_string(summary.professions.size()) + " professions)");
  }
  try {
    return pearson(summary.cv, freq.frequency);
  } catch (const DomainError& e) {
    throw DomainError(std::string("frequency correlation: ") + e.what());
  }
}

CorrelationMatrix correlate_all(const std::vector<std::span<const double>>& vectors,
                                std::vector<long long> labels, CorrelationKind kind,
                                const std::string& what) {
  const std::size_t n = vectors.size();
  CorrelationMatrix cm;
  cm.kind = kind;
  cm.labels = std::move(labels);
  cm.values = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double r = 1.0;
      try {
        r = pearson(vectors[i], vectors[j]);
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " (" + what + " " +
                          std::to_string(cm.labels[i]) + " vs " + std::to_string(cm.labels[j]) + ")");
      }
      if (i == j) r = 1.0;
      cm.values(i, j) = r;
      cm.values(j, i) = r;
    }
  }
  return cm;
}

CorrelationMatrix rq4_checkpoint_correlations(const ScoreMatrixSet& mset, RatioSource source) {
  if (mset.checkpoints() < 2) throw InputError("checkpoint correlations need at least two steps");
  const Matrix& m = source == RatioSource::kNormalized ? mset.normalized : mset.ratio;
  std::vector<std::span<const double>> rows;
  std::vector<long long> labels;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(m.row(r));
    labels.push_back(mset.steps[r]);
  }
  return correlate_all(rows, std::move(labels), CorrelationKind::kCheckpointPair, "step");
}

CorrelationMatrix rq5_seed_correlations(const std::map<int, FluctuationSummary>& summaries,
                                        RatioSource source) {
  if (summaries.size() < 2) throw InputError("seed correlations need at least two seeds");
  const auto& reference = summaries.begin()->second.professions;
  std::vector<std::span<const double>> vectors;
  std::vector<long long> labels;
  for (const auto& [seed, s] : summaries) {
    if (s.professions != reference) {
      throw InputError("seed " + std::to_string(seed) + " has a different profession axis");
    }
    vectors.emplace_back(source == RatioSource::kNormalized ? s.mean_normalized
                                                            : s.mean_unnormalized);
    labels.push_back(seed);
  }
  return correlate_all(vectors, std::move(labels), CorrelationKind::kSeedPair, "seed");
}

}  // namespace biasprobe
