#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "biasprobe/frequency.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace biasprobe;
using nlohmann::json;

namespace {

std::string series_json(const std::string& ngram, const std::string& type, double value) {
  json e;
  e["ngram"] = ngram;
  e["parent"] = "";
  e["type"] = type;
  e["timeseries"] = std::vector<double>(kYearCount, value);
  return e.dump();
}

/// Scripted transport: fails with the given errors first, then returns `body`.
class ScriptedTransport : public Transport {
 public:
  std::vector<std::function<void()>> failures;
  std::string body = "[]";
  std::vector<NgramQuery> seen;

  std::string fetch(const NgramQuery& q) override {
    seen.push_back(q);
    if (seen.size() <= failures.size()) failures[seen.size() - 1]();
    return body;
  }
};

CorpusSizes ones() {
  CorpusSizes s;
  s.sizes.assign(kYearCount, 1.0);
  return s;
}

FrequencyTable table_of(std::vector<std::string> names, std::vector<double> f) {
  FrequencyTable t;
  t.professions = std::move(names);
  t.frequency = std::move(f);
  return t;
}

}  // namespace

TEST_CASE("total_frequency") {
  SUBCASE("two-year toy") {
    YearlySeries y{"x", CaseMode::kLowercase, 1999, {0.1, 0.2}};
    CorpusSizes s{1999, {10, 20}};
    CHECK(total_frequency(y, s) == doctest::Approx(5.0).epsilon(1e-15));
  }
  SUBCASE("random series against naive sum") {
    for (int trial = 0; trial < 200; ++trial) {
      YearlySeries y{"t", CaseMode::kLowercase, kFirstYear, std::vector<double>(kYearCount)};
      CorpusSizes s{kFirstYear, std::vector<double>(kYearCount)};
      for (std::size_t i = 0; i < kYearCount; ++i) {
        y.values[i] = test::uniform(0.0, 1e-4);
        s.sizes[i] = test::uniform(0.0, 1e9);
      }
      const double expected = oracle::dot(s.sizes, y.values);
      CHECK(total_frequency(y, s) == doctest::Approx(expected).epsilon(1e-12));

      const double a = test::uniform(0.1, 10.0);
      YearlySeries scaled = y;
      for (auto& v : scaled.values) v *= a;
      CHECK(total_frequency(scaled, s) == doctest::Approx(a * expected).epsilon(1e-12));
    }
  }
  SUBCASE("axis mismatch") {
    YearlySeries y{"short", CaseMode::kLowercase, kFirstYear, std::vector<double>(10, 0.1)};
    CHECK_THROWS_AS(total_frequency(y, ones()), InputError);
  }
  SUBCASE("absent term") {
    YearlySeries y{"zz", CaseMode::kLowercase, kFirstYear, std::vector<double>(kYearCount, 0.0)};
    CHECK(total_frequency(y, ones()) == 0.0);
  }
}

TEST_CASE("corpus sizes parsing") {
  std::istringstream in("year,tokens\n1600,5\n1700,100\n1701,200.0\n2000,3\n2019,9\n");
  const auto s = parse_corpus_sizes(in);
  REQUIRE(s.sizes.size() == kYearCount);
  CHECK(s.sizes[0] == 100);
  CHECK(s.sizes[1] == 200);
  CHECK(s.sizes[2] == 0);
  CHECK(s.sizes.back() == 3);

  std::istringstream none("1600,5\n");
  CHECK_THROWS_AS(parse_corpus_sizes(none), InputError);
  std::istringstream neg("1700,-1\n");
  CHECK_THROWS_AS(parse_corpus_sizes(neg), InputError);
  std::istringstream bad("1700,abc\n");
  CHECK_THROWS_AS(parse_corpus_sizes(bad), InputError);
}

TEST_CASE("parse_ngram_response") {
  SUBCASE("empty response is all zero") {
    const auto s = parse_ngram_response("[]", "zzqx", CaseMode::kLowercase, "zzqx");
    CHECK(s.values == std::vector<double>(kYearCount, 0.0));
  }
  SUBCASE("exact ngram picked") {
    const std::string body = "[" + series_json("nurse", "NGRAM", 2e-6) + "]";
    const auto s = parse_ngram_response(body, "nurse", CaseMode::kLowercase, "nurse");
    CHECK(s.values[0] == 2e-6);
  }
  SUBCASE("case-insensitive sums expansions") {
    const std::string body = "[" + series_json("nurse (All)", "CASE_INSENSITIVE", 3e-6) + "," +
                             series_json("nurse", "EXPANSION", 2e-6) + "," +
                             series_json("Nurse", "EXPANSION", 1e-6) + "]";
    const auto s = parse_ngram_response(body, "nurse", CaseMode::kCaseInsensitive, "nurse");
    CHECK(s.values[5] == doctest::Approx(3e-6));
  }
  SUBCASE("case-insensitive aggregate only") {
    const std::string body = "[" + series_json("nurse (All)", "CASE_INSENSITIVE", 3e-6) + "]";
    const auto s = parse_ngram_response(body, "nurse", CaseMode::kCaseInsensitive, "nurse");
    CHECK(s.values[5] == 3e-6);
  }
  SUBCASE("malformed") {
    CHECK_THROWS_AS(parse_ngram_response("{", "x", CaseMode::kLowercase, "x"), TransportError);
    CHECK_THROWS_AS(parse_ngram_response("{}", "x", CaseMode::kLowercase, "x"), TransportError);
    CHECK_THROWS_AS(
        parse_ngram_response(R"([{"ngram":"x","timeseries":[1,2]}])", "x", CaseMode::kLowercase, "x"),
        TransportError);
    json e;
    e["ngram"] = "x";
    e["timeseries"] = std::vector<double>(kYearCount, -1.0);
    CHECK_THROWS_AS(parse_ngram_response("[" + e.dump() + "]", "x", CaseMode::kLowercase, "x"),
                    TransportError);
  }
}

TEST_CASE("recorded fixtures") {
  FixtureTransport transport(test::fixtures() / "ngram");
  NgramClient client(transport, {.requests_per_minute = 1e6});
  const auto sizes = load_corpus_sizes(test::fixtures() / "corpus_sizes.csv");
  const double lower = total_frequency(client.fetch("president", CaseMode::kLowercase), sizes);
  const double any = total_frequency(client.fetch("president", CaseMode::kCaseInsensitive), sizes);
  CHECK(lower > 0.0);
  CHECK(any >= lower);
  CHECK(total_frequency(client.fetch("zzqx-nonword", CaseMode::kLowercase), sizes) == 0.0);
  CHECK_THROWS_AS(client.fetch("not-recorded", CaseMode::kLowercase), TransportError);
}

TEST_CASE("cache makes repeated fetches free") {
  const auto dir = test::scratch_dir("ngram_cache");
  ScriptedTransport transport;
  transport.body = "[" + series_json("nurse", "NGRAM", 4e-6) + "]";
  NgramClient first(transport, {.cache_dir = dir, .requests_per_minute = 1e6});
  const auto a = first.fetch("Nurse", CaseMode::kLowercase);
  CHECK(first.network_calls() == 1);
  CHECK(transport.seen.at(0).content == "nurse");
  CHECK_FALSE(transport.seen.at(0).case_insensitive);
  CHECK(std::filesystem::exists(first.cache_path("Nurse", CaseMode::kLowercase)));

  NgramClient second(transport, {.cache_dir = dir, .requests_per_minute = 1e6});
  const auto b = second.fetch("Nurse", CaseMode::kLowercase);
  CHECK(second.network_calls() == 0);
  CHECK(a.values == b.values);

  std::ofstream(first.cache_path("Nurse", CaseMode::kCaseInsensitive)) << "{not json";
  CHECK_THROWS_AS(second.fetch("Nurse", CaseMode::kCaseInsensitive), InputError);
}

TEST_CASE("retry and backoff") {
  std::vector<std::chrono::steady_clock::duration> sleeps;
  auto sleeper = [&](std::chrono::steady_clock::duration d) { sleeps.push_back(d); };
  const NgramOptions opts{.requests_per_minute = 1e9,
                          .retry = {.max_attempts = 3, .base_delay = std::chrono::milliseconds(100)}};

  SUBCASE("transient failures then success") {
    ScriptedTransport t;
    auto fail = [] { throw TransientTransportError("HTTP 429"); };
    t.failures = {fail, fail};
    NgramClient c(t, opts, sleeper);
    CHECK_NOTHROW(c.fetch("x", CaseMode::kLowercase));
    CHECK(c.network_calls() == 3);
    std::vector<std::chrono::steady_clock::duration> backoff;
    for (auto d : sleeps) {
      if (d >= std::chrono::milliseconds(50)) backoff.push_back(d);
    }
    REQUIRE(backoff.size() == 2);
    CHECK(backoff[0] == std::chrono::milliseconds(100));
    CHECK(backoff[1] == std::chrono::milliseconds(200));
  }
  SUBCASE("exhausted") {
    ScriptedTransport t;
    auto fail = [] { throw TransientTransportError("HTTP 503"); };
    t.failures = {fail, fail, fail};
    NgramClient c(t, opts, sleeper);
    CHECK_THROWS_AS(c.fetch("x", CaseMode::kLowercase), TransportError);
    CHECK(c.network_calls() == 3);
  }
  SUBCASE("permanent error is not retried") {
    ScriptedTransport t;
    t.failures = {[] { throw TransportError("HTTP 404"); }};
    NgramClient c(t, opts, sleeper);
    CHECK_THROWS_AS(c.fetch("x", CaseMode::kLowercase), TransportError);
    CHECK(c.network_calls() == 1);
  }
}

TEST_CASE("rate limiter spaces requests") {
  using Clock = RateLimiter::Clock;
  Clock::time_point now{};
  std::vector<Clock::duration> slept;
  RateLimiter limiter(
      30.0, [&] { return now; },
      [&](Clock::duration d) {
        slept.push_back(d);
        now += d;
      });
  limiter.acquire();
  CHECK(slept.empty());
  limiter.acquire();
  REQUIRE(slept.size() == 1);
  CHECK(slept[0] == std::chrono::seconds(2));
  now += std::chrono::seconds(5);
  limiter.acquire();
  CHECK(slept.size() == 1);
  CHECK_THROWS_AS(RateLimiter(0.0), InputError);
}

TEST_CASE("query target") {
  NgramQuery q{.content = "x-ray", .case_insensitive = true};
  const auto t = q.target();
  CHECK(t.find("content=x-ray") != std::string::npos);
  CHECK(t.find("year_start=1700") != std::string::npos);
  CHECK(t.find("year_end=2000") != std::string::npos);
  CHECK(t.find("smoothing=0") != std::string::npos);
  CHECK(t.find("case_insensitive=true") != std::string::npos);
  CHECK(FixtureTransport::fixture_file_name(q) == "x-ray__ci__en-2019.json");
}

TEST_CASE("rank_professions") {
  const auto t = table_of({"a", "b", "c", "d"}, {1.0, 5.0, 5.0, 0.5});
  const auto top = rank_professions(t, 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0].first == "b");
  CHECK(top[1].first == "c");
  CHECK(top[2].first == "a");
  CHECK(rank_professions(t, 0).empty());
  CHECK_THROWS_AS(rank_professions(t, 5), InputError);

  auto scaled = t;
  for (auto& f : scaled.frequency) f *= 7.5;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rank_professions(scaled, 4)[i].first == rank_professions(t, 4)[i].first);
  }
}

TEST_CASE("frequency table round trip") {
  const auto t = table_of({"nurse", "heir, apparent", "x"}, {1.25e9, 0.0, 3.0 / 7.0});
  std::ostringstream out;
  write_frequency_table(out, t);
  std::istringstream in(out.str());
  const auto back = read_frequency_table(in, CaseMode::kLowercase);
  CHECK(back.professions == t.professions);
  CHECK(back.frequency == t.frequency);
  std::istringstream bad("name,f\n");
  CHECK_THROWS_AS(read_frequency_table(bad, CaseMode::kLowercase), InputError);
}
