#include "biasprobe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "biasprobe/csv.hpp"
#include "biasprobe/error.hpp"

namespace biasprobe {

namespace {

std::string with_context(std::string message, std::string_view context) {
  if (!context.empty()) {
    message += " (";
    message += context;
    message += ')';
  }
  return message;
}

void check_probability(double p, std::string_view name, std::string_view context) {
  if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
    throw DomainError(with_context(std::string(name) + " is not a probability: " +
                                       csv::format_double(p),
                                   context));
  }
}

}  // namespace

double bias_ratio(double p_he, double p_she, std::string_view context) {
  check_probability(p_he, "P(he)", context);
  check_probability(p_she, "P(she)", context);
  if (p_she == 0.0) throw DomainError(with_context("division by zero: P(she) = 0", context));
  return p_he / p_she;
}

double normalized_ratio(double ratio, double prior_he, double prior_she,
                        std::string_view context) {
  check_probability(prior_he, "prior P(he)", context);
  check_probability(prior_she, "prior P(she)", context);
  if (prior_he == 0.0 || prior_she == 0.0) {
    throw DomainError(with_context("zero prior probability in prior template", context));
  }
  return ratio * (prior_she / prior_he);
}

double certainty(double p_he, double p_she, std::string_view context) {
  check_probability(p_he, "P(he)", context);
  check_probability(p_she, "P(she)", context);
  if (p_he == 0.0 && p_she == 0.0) {
    throw DomainError(with_context("both pronoun probabilities are zero", context));
  }
  return p_he + p_she;
}

double arithmetic_mean(std::span<const double> values) {
  if (values.empty()) throw DomainError("mean of an empty sequence");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double population_sd(std::span<const double> values) {
  const double mean = arithmetic_mean(values);
  if (std::ranges::all_of(values, [&](double x) { return x == values.front(); })) return 0.0;
  double sum_sq = 0.0;
  for (double x : values) sum_sq += (x - mean) * (x - mean);
  return std::sqrt(sum_sq / static_cast<double>(values.size()));
}

double coefficient_of_variation(std::span<const double> values) {
  if (values.size() < 2) throw DomainError("coefficient of variation needs at least two values");
  const double mean = arithmetic_mean(values);
  if (mean == 0.0) throw DomainError("coefficient of variation undefined for zero mean");
  return population_sd(values) / mean;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw DomainError("pearson: length mismatch (" + std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) throw DomainError("pearson: needs at least two points");
  const double mx = arithmetic_mean(x);
  const double my = arithmetic_mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DomainError("pearson: zero variance input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::string_view to_string(RatioSource s) {
  return s == RatioSource::kNormalized ? "normalized" : "unnormalized";
}

RatioSource parse_ratio_source(std::string_view text) {
  text = csv::trim(text);
  if (text == "normalized") return RatioSource::kNormalized;
  if (text == "unnormalized") return RatioSource::kUnnormalized;
  throw InputError("unknown ratio source '" + std::string(text) +
                   "' (expected normalized or unnormalized)");
}

void PlateauConfig::validate() const {
  if (start >= rows) {
    throw InputError("plateau start k = " + std::to_string(start) + " must be below b = " +
                     std::to_string(rows));
  }
  if (rows - start < 2) {
    throw InputError("plateau k = " + std::to_string(start) + " leaves fewer than two rows of " +
                     std::to_string(rows));
  }
}

FluctuationSummary fluctuation_summary(const ScoreMatrixSet& mset, const PlateauConfig& cfg,
                                       RatioSource source) {
  if (cfg.rows != mset.checkpoints()) {
    throw InputError("plateau config expects b = " + std::to_string(cfg.rows) + " rows, matrix has " +
                     std::to_string(mset.checkpoints()));
  }
  cfg.validate();

  const Matrix& fluctuating = source == RatioSource::kNormalized ? mset.normalized : mset.ratio;
  const std::size_t p = mset.profession_count();
  FluctuationSummary s;
  s.source = source;
  s.professions = mset.professions.names();
  s.cv.resize(p);
  s.mean_certainty.resize(p);
  s.mean_normalized.resize(p);
  s.mean_unnormalized.resize(p);
  for (std::size_t t = 0; t < p; ++t) {
    try {
      s.cv[t] = coefficient_of_variation(fluctuating.column(t, cfg.start));
    } catch (const DomainError& e) {
      throw DomainError(std::string(e.what()) + " (profession '" + s.professions[t] + "')");
    }
    s.mean_certainty[t] = arithmetic_mean(mset.certainty.column(t, cfg.start));
    s.mean_normalized[t] = arithmetic_mean(mset.normalized.column(t, cfg.start));
    s.mean_unnormalized[t] = arithmetic_mean(mset.ratio.column(t, cfg.start));
  }
  return s;
}

PriorPoint prior_fluctuation(const ScoreMatrixSet& mset, const PlateauConfig& cfg) {
  cfg.validate();
  std::vector<double> sums, ratios;
  for (std::size_t row = cfg.start; row < mset.checkpoints(); ++row) {
    const std::string where = "prior template at step " + std::to_string(mset.steps[row]);
    sums.push_back(certainty(mset.prior_he[row], mset.prior_she[row], where));
    ratios.push_back(bias_ratio(mset.prior_he[row], mset.prior_she[row], where));
  }
  return {arithmetic_mean(sums), coefficient_of_variation(ratios)};
}

}  // namespace biasprobe
