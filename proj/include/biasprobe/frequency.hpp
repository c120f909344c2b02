#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biasprobe/error.hpp"
#include "biasprobe/profile.hpp"
#include "biasprobe/templates.hpp"

namespace biasprobe {

inline constexpr int kFirstYear = 1700;
inline constexpr int kLastYear = 2000;
inline constexpr std::size_t kYearCount = kLastYear - kFirstYear + 1;

/// Relative frequency of one term for each year of the corpus.
struct YearlySeries {
  std::string term;
  CaseMode case_mode = CaseMode::kLowercase;
  int first_year = kFirstYear;
  std::vector<double> values;

  int last_year() const { return first_year + static_cast<int>(values.size()) - 1; }
  friend bool operator==(const YearlySeries&, const YearlySeries&) = default;
};

/// Total tokens per year.
struct CorpusSizes {
  int first_year = kFirstYear;
  std::vector<double> sizes;
};

/// Reads "year,tokens" CSV (optional header). Years outside 1700..2000 are
/// dropped; years missing inside the range count as zero tokens.
CorpusSizes parse_corpus_sizes(std::istream& in);
CorpusSizes load_corpus_sizes(const std::filesystem::path& path);

/// Inner product of yearly sizes and yearly relative frequencies.
double total_frequency(const YearlySeries& y, const CorpusSizes& s);

/// A failure worth retrying (connection reset, HTTP 429/5xx).
class TransientTransportError : public TransportError {
 public:
  using TransportError::TransportError;
};

struct NgramQuery {
  std::string content;
  bool case_insensitive = false;
  int year_start = kFirstYear;
  int year_end = kLastYear;
  std::string corpus = "en-2019";

  /// Path and query string of the JSON endpoint, smoothing fixed to 0.
  std::string target() const;
};

/// Source of raw Ngram API responses.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::string fetch(const NgramQuery& query) = 0;
};

/// Live HTTPS client for books.google.com.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::string host = "https://books.google.com",
                         std::chrono::seconds timeout = std::chrono::seconds(30));
  std::string fetch(const NgramQuery& query) override;

 private:
  std::string host_;
  std::chrono::seconds timeout_;
};

/// Offline store of recorded API responses, one file per query
/// (see fixture_file_name). Missing files are a hard error.
class FixtureTransport : public Transport {
 public:
  explicit FixtureTransport(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::string fetch(const NgramQuery& query) override;

  static std::string fixture_file_name(const NgramQuery& query);

 private:
  std::filesystem::path dir_;
};

/// Spaces requests at least 60/requests_per_minute seconds apart.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;
  using Sleeper = std::function<void(Clock::duration)>;
  using Now = std::function<Clock::time_point()>;

  explicit RateLimiter(double requests_per_minute, Now now = Clock::now, Sleeper sleep = {});
  void acquire();

 private:
  Clock::duration interval_;
  Now now_;
  Sleeper sleep_;
  std::optional<Clock::time_point> last_;
};

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds base_delay{1000};
  double backoff = 2.0;
};

struct NgramOptions {
  std::string corpus = "en-2019";
  std::optional<std::filesystem::path> cache_dir;
  double requests_per_minute = 30.0;
  RetryPolicy retry;
};

/// Environment variable naming the default cache directory.
inline constexpr const char* kCacheDirEnv = "BIASPROBE_NGRAM_CACHE";

/// Fetches yearly series through a transport with an on-disk cache (one
/// JSON file per term and case mode), rate limiting and retry with backoff.
class NgramClient {
 public:
  using Sleeper = std::function<void(std::chrono::steady_clock::duration)>;

  NgramClient(Transport& transport, NgramOptions options, Sleeper sleep = {});

  YearlySeries fetch(const std::string& term, CaseMode mode);

  std::size_t network_calls() const { return network_calls_; }
  std::filesystem::path cache_path(const std::string& term, CaseMode mode) const;

 private:
  std::string request(const NgramQuery& query);

  Transport& transport_;
  NgramOptions options_;
  Sleeper sleep_;
  RateLimiter limiter_;
  std::mutex mutex_;
  std::size_t network_calls_ = 0;
};

/// Turns an API response into a series. `mode` decides which entries count:
/// the exact n-gram for lowercase/as-is, all casings for case-insensitive.
/// An empty response is an all-zero series.
YearlySeries parse_ngram_response(std::string_view body, const std::string& term, CaseMode mode,
                                  const std::string& queried_content);

std::string lowercase_term(std::string_view term);

struct FrequencyTable {
  CaseMode case_mode = CaseMode::kLowercase;
  std::vector<std::string> professions;
  std::vector<double> frequency;  // f
  std::vector<YearlySeries> series;  // y(t); empty when loaded from a table file
  CorpusSizes sizes;
};

FrequencyTable build_frequency_table(const ProfessionList& professions, const CorpusSizes& sizes,
                                     NgramClient& client, CaseMode mode);

/// Top `top_n` professions by descending frequency; ties keep list order.
std::vector<std::pair<std::string, double>> rank_professions(const FrequencyTable& table,
                                                             std::size_t top_n);

/// "profession,frequency" CSV.
void write_frequency_table(std::ostream& out, const FrequencyTable& table);
FrequencyTable read_frequency_table(std::istream& in, CaseMode mode);
FrequencyTable load_frequency_table(const std::filesystem::path& path, CaseMode mode);

}  // namespace biasprobe
