#include "biasprobe/frequency.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "biasprobe/csv.hpp"
#include "biasprobe/io.hpp"

namespace biasprobe {

namespace {

using nlohmann::json;

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

void default_sleep(std::chrono::steady_clock::duration d) { std::this_thread::sleep_for(d); }

std::vector<double> read_timeseries(const json& entry, std::size_t expected) {
  if (!entry.is_object() || !entry.contains("timeseries") || !entry["timeseries"].is_array()) {
    throw TransportError("malformed Ngram response: entry without timeseries array");
  }
  const auto& ts = entry["timeseries"];
  if (ts.size() != expected) {
    throw TransportError("malformed Ngram response: timeseries has " + std::to_string(ts.size()) +
                         " values, expected " + std::to_string(expected));
  }
  std::vector<double> values;
  values.reserve(expected);
  for (const auto& v : ts) {
    if (!v.is_number()) throw TransportError("malformed Ngram response: non-numeric value");
    const double x = v.get<double>();
    if (!std::isfinite(x) || x < 0.0) {
      throw TransportError("malformed Ngram response: negative or non-finite frequency");
    }
    values.push_back(x);
  }
  return values;
}

std::string entry_type(const json& entry) {
  if (entry.contains("type") && entry["type"].is_string()) return entry["type"].get<std::string>();
  return {};
}

std::string entry_ngram(const json& entry) {
  if (entry.contains("ngram") && entry["ngram"].is_string()) return entry["ngram"].get<std::string>();
  return {};
}

}  // namespace

std::string lowercase_term(std::string_view term) {
  std::string out(term);
  std::ranges::transform(out, out.begin(),
                         [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

CorpusSizes parse_corpus_sizes(std::istream& in) {
  CorpusSizes sizes;
  sizes.sizes.assign(kYearCount, 0.0);
  csv::Reader reader(in);
  std::vector<std::string> fields;
  std::size_t in_range = 0;
  bool first = true;
  while (reader.next(fields)) {
    if (fields.size() == 1 && csv::trim(fields[0]).empty()) continue;
    if (fields.size() < 2) {
      throw InputError("corpus sizes line " + std::to_string(reader.line()) +
                       ": expected year,tokens");
    }
    if (first) {
      first = false;
      if (csv::trim(fields[0]) == "year") continue;
    }
    try {
      const long long year = csv::parse_int(fields[0], "year");
      const double tokens = csv::parse_double(fields[1], "token count");
      if (!std::isfinite(tokens) || tokens < 0) throw InputError("negative token count");
      if (year < kFirstYear || year > kLastYear) continue;
      sizes.sizes[static_cast<std::size_t>(year - kFirstYear)] = tokens;
      ++in_range;
    } catch (const InputError& e) {
      throw InputError("corpus sizes line " + std::to_string(reader.line()) + ": " + e.what());
    }
  }
  if (in_range == 0) throw InputError("corpus sizes contain no year within 1700-2000");
  return sizes;
}

CorpusSizes load_corpus_sizes(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus sizes " + path.string());
  return parse_corpus_sizes(in);
}

double total_frequency(const YearlySeries& y, const CorpusSizes& s) {
  if (y.first_year != s.first_year || y.values.size() != s.sizes.size()) {
    throw InputError("year axes differ: series '" + y.term + "' covers " +
                     std::to_string(y.first_year) + "-" + std::to_string(y.last_year()) +
                     ", corpus sizes cover " + std::to_string(s.first_year) + "-" +
                     std::to_string(s.first_year + static_cast<int>(s.sizes.size()) - 1));
  }
  return std::inner_product(s.sizes.begin(), s.sizes.end(), y.values.begin(), 0.0);
}

std::string NgramQuery::target() const {
  std::string t = "/ngrams/json?content=" + percent_encode(content) +
                  "&year_start=" + std::to_string(year_start) +
                  "&year_end=" + std::to_string(year_end) + "&corpus=" + percent_encode(corpus) +
                  "&smoothing=0";
  if (case_insensitive) t += "&case_insensitive=true";
  return t;
}

std::string FixtureTransport::fixture_file_name(const NgramQuery& q) {
  return percent_encode(q.content) + (q.case_insensitive ? "__ci__" : "__cs__") +
         percent_encode(q.corpus) + ".json";
}

std::string FixtureTransport::fetch(const NgramQuery& query) {
  const auto path = dir_ / fixture_file_name(query);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TransportError("offline: no recorded response " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

RateLimiter::RateLimiter(double requests_per_minute, Now now, Sleeper sleep)
    : now_(std::move(now)), sleep_(sleep ? std::move(sleep) : Sleeper(default_sleep)) {
  if (!(requests_per_minute > 0.0)) throw InputError("requests per minute must be positive");
  interval_ = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(60.0 / requests_per_minute));
}

void RateLimiter::acquire() {
  auto t = now_();
  if (last_ && t < *last_ + interval_) {
    sleep_(*last_ + interval_ - t);
    t = std::max(now_(), *last_ + interval_);
  }
  last_ = t;
}

NgramClient::NgramClient(Transport& transport, NgramOptions options, Sleeper sleep)
    : transport_(transport),
      options_(std::move(options)),
      sleep_(sleep ? std::move(sleep) : Sleeper(default_sleep)),
      limiter_(options_.requests_per_minute, RateLimiter::Clock::now, sleep_) {}

std::filesystem::path NgramClient::cache_path(const std::string& term, CaseMode mode) const {
  if (!options_.cache_dir) return {};
  return *options_.cache_dir / (percent_encode(term) + "__" + std::string(to_string(mode)) + "__" +
                                percent_encode(options_.corpus) + ".json");
}

std::string NgramClient::request(const NgramQuery& query) {
  auto delay = std::chrono::duration<double, std::milli>(options_.retry.base_delay);
  for (int attempt = 1;; ++attempt) {
    limiter_.acquire();
    ++network_calls_;
    try {
      return transport_.fetch(query);
    } catch (const TransientTransportError& e) {
      if (attempt >= options_.retry.max_attempts) {
        throw TransportError("Ngram request for '" + query.content + "' failed after " +
                             std::to_string(attempt) + " attempts: " + e.what());
      }
      sleep_(std::chrono::duration_cast<std::chrono::steady_clock::duration>(delay));
      delay *= options_.retry.backoff;
    }
  }
}

YearlySeries NgramClient::fetch(const std::string& term, CaseMode mode) {
  std::lock_guard lock(mutex_);
  const auto cached = cache_path(term, mode);
  if (!cached.empty() && std::filesystem::exists(cached)) {
    const json doc = json::parse(read_file(cached), nullptr, false);
    if (doc.is_discarded() || !doc.contains("values")) {
      throw InputError("corrupt cache file " + cached.string());
    }
    YearlySeries s;
    s.term = term;
    s.case_mode = mode;
    s.first_year = doc.value("first_year", kFirstYear);
    s.values = doc["values"].get<std::vector<double>>();
    return s;
  }

  NgramQuery query;
  query.corpus = options_.corpus;
  query.case_insensitive = mode == CaseMode::kCaseInsensitive;
  query.content = mode == CaseMode::kLowercase ? lowercase_term(term) : term;
  YearlySeries series = parse_ngram_response(request(query), term, mode, query.content);

  if (!cached.empty()) {
    json doc;
    doc["term"] = term;
    doc["case_mode"] = std::string(to_string(mode));
    doc["corpus"] = options_.corpus;
    doc["first_year"] = series.first_year;
    doc["values"] = series.values;
    write_file_atomic(cached, doc.dump(1) + "\n");
  }
  return series;
}

YearlySeries parse_ngram_response(std::string_view body, const std::string& term, CaseMode mode,
                                  const std::string& queried_content) {
  const json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    throw TransportError("malformed Ngram response for '" + term + "': expected a JSON array");
  }
  YearlySeries series;
  series.term = term;
  series.case_mode = mode;
  series.values.assign(kYearCount, 0.0);

  auto add = [&](const json& entry) {
    const auto values = read_timeseries(entry, kYearCount);
    for (std::size_t i = 0; i < kYearCount; ++i) series.values[i] += values[i];
  };

  if (doc.empty()) return series;
  for (const auto& entry : doc) read_timeseries(entry, kYearCount);

  if (mode == CaseMode::kCaseInsensitive) {
    bool any = false;
    for (const auto& e : doc) {
      if (entry_type(e) == "EXPANSION") add(e), any = true;
    }
    if (!any) {
      for (const auto& e : doc) {
        if (entry_type(e) == "CASE_INSENSITIVE") {
          add(e);
          return series;
        }
      }
      for (const auto& e : doc) add(e);
    }
    return series;
  }

  for (const auto& e : doc) {
    if (entry_ngram(e) == queried_content) {
      add(e);
      return series;
    }
  }
  for (const auto& e : doc) {
    const auto type = entry_type(e);
    if (type.empty() || type == "NGRAM") {
      add(e);
      return series;
    }
  }
  return series;
}

FrequencyTable build_frequency_table(const ProfessionList& professions, const CorpusSizes& sizes,
                                     NgramClient& client, CaseMode mode) {
  FrequencyTable table;
  table.case_mode = mode;
  table.sizes = sizes;
  for (const auto& p : professions) {
    YearlySeries y = client.fetch(p.name, mode);
    table.professions.push_back(p.name);
    table.frequency.push_back(total_frequency(y, sizes));
    table.series.push_back(std::move(y));
  }
  return table;
}

std::vector<std::pair<std::string, double>> rank_professions(const FrequencyTable& table,
                                                             std::size_t top_n) {
  if (top_n > table.professions.size()) {
    throw InputError("cannot rank top " + std::to_string(top_n) + " of " +
                     std::to_string(table.professions.size()) + " professions");
  }
  std::vector<std::size_t> order(table.professions.size());
  std::iota(order.begin(), order.end(), 0);
  std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
    return table.frequency[a] > table.frequency[b];
  });
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < top_n; ++i) {
    out.emplace_back(table.professions[order[i]], table.frequency[order[i]]);
  }
  return out;
}

void write_frequency_table(std::ostream& out, const FrequencyTable& table) {
  csv::write_row(out, {"profession", "frequency"});
  for (std::size_t i = 0; i < table.professions.size(); ++i) {
    csv::write_row(out, {table.professions[i], csv::format_double(table.frequency[i])});
  }
}

FrequencyTable read_frequency_table(std::istream& in, CaseMode mode) {
  FrequencyTable table;
  table.case_mode = mode;
  csv::Reader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields) || fields.size() != 2 || fields[0] != "profession") {
    throw InputError("frequency table must start with header profession,frequency");
  }
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 2) {
      throw InputError("frequency table line " + std::to_string(reader.line()) +
                       ": expected 2 fields");
    }
    const double f = csv::parse_double(fields[1], "frequency");
    if (!(f >= 0.0)) {
      throw InputError("frequency table line " + std::to_string(reader.line()) +
                       ": negative frequency");
    }
    table.professions.push_back(fields[0]);
    table.frequency.push_back(f);
  }
  return table;
}

FrequencyTable load_frequency_table(const std::filesystem::path& path, CaseMode mode) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open frequency table " + path.string());
  return read_frequency_table(in, mode);
}

}  // namespace biasprobe
