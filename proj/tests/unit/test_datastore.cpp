#include <doctest.h>

#include <algorithm>
#include <functional>
#include <sstream>

#include "biasprobe/datastore.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/metrics.hpp"
#include "test_support.hpp"

using namespace biasprobe;

namespace {

const std::string kHeader = "pronoun,score,profession,template,sentence,model,seed,checkpoint\n";

std::vector<ScoreRecord> parse(const std::string& body) {
  std::istringstream in(kHeader + body);
  return parse_score_table(in, default_profiles());
}

std::string error_of(const std::string& body) {
  try {
    parse(body);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

ModelProfile test_profile() {
  ModelProfile p = default_profiles().at("bert-base-uncased");
  p.expected_checkpoints.reset();
  return p;
}

/// Records for a (steps x professions) grid plus priors, uncased model.
std::vector<ScoreRecord> grid(const std::vector<std::int64_t>& steps,
                              const std::vector<std::string>& professions,
                              const std::function<std::pair<double, double>(std::size_t, std::size_t)>& p,
                              const std::pair<double, double>& prior = {0.5, 0.25}) {
  std::vector<ScoreRecord> out;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    for (std::size_t t = 0; t <= professions.size(); ++t) {
      const bool is_prior = t == professions.size();
      const std::string name = is_prior ? "[MASK]" : professions[t];
      const std::string tmpl = "[MASK] is a " + name + ".";
      const auto [he, she] = is_prior ? prior : p(s, t);
      out.push_back({"he", he, name, tmpl, "he is a " + name + ".", "bert-base-uncased", 0, steps[s]});
      out.push_back({"she", she, name, tmpl, "she is a " + name + ".", "bert-base-uncased", 0, steps[s]});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("parse_score_table accepts the canonical schema") {
  const auto records = parse(
      "he,0.42,nurse,[MASK] is a nurse.,he is a nurse.,bert-base-uncased,0,20000\n"
      "He,0.5,<mask>,<mask> is a <mask>.,He is a <mask>.,roberta-base,-1,\n"
      "she,0.1,nurse,[MASK] is a nurse.,she is a nurse.,bert-base-uncased,-1,NaN\n");
  REQUIRE(records.size() == 3);
  CHECK(records[0].score == 0.42);
  CHECK(records[0].checkpoint == 20000);
  CHECK(records[1].profession == "<mask>");
  CHECK(records[1].seed == -1);
  CHECK_FALSE(records[1].checkpoint.has_value());
  CHECK_FALSE(records[2].checkpoint.has_value());
}

TEST_CASE("parse_score_table rejects invalid rows with line numbers") {
  CHECK(error_of("he,1.3,nurse,[MASK] is a nurse.,he is a nurse.,bert-base-uncased,0,20000\n")
            .find("line 2: score out of range") != std::string::npos);
  CHECK(error_of("He,0.3,nurse,[MASK] is a nurse.,He is a nurse.,bert-base-uncased,0,20000\n")
            .find("unknown pronoun") != std::string::npos);
  CHECK(error_of("he,0.3,nurse,[MASK] is a nurse.,he is a nurse.,bert-base-uncased,7,20000\n")
            .find("unknown seed") != std::string::npos);
  CHECK(error_of("he,0.3,nurse,[MASK] is a nurse.,he is a nurse.,bert-base-uncased,0,\n")
            .find("only allowed for seed -1") != std::string::npos);
  CHECK(error_of("he,0.3,nurse\n").find("malformed row") != std::string::npos);
  CHECK(error_of("he,abc,nurse,[MASK] is a nurse.,he is a nurse.,bert-base-uncased,0,1\n")
            .find("invalid score") != std::string::npos);
  CHECK(error_of("he,0.3,nurse,t,s,gpt2,0,1\n").find("no model profile") != std::string::npos);
  CHECK(error_of("\n\nhe,0.3,nurse,t,s,gpt2,0,1\n").find("line 4") != std::string::npos);

  std::istringstream bad_header("pronoun,score\n");
  CHECK_THROWS_AS(parse_score_table(bad_header, default_profiles()), InputError);
}

TEST_CASE("write then parse is the identity on valid records") {
  const std::string pronouns[] = {"he", "she"};
  const std::string names[] = {"nurse", "chief, executive", "say \"hi\" person", "x-ray tech"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ScoreRecord> records;
    const int n = 1 + static_cast<int>(test::rng()() % 20);
    for (int i = 0; i < n; ++i) {
      ScoreRecord r;
      r.pronoun = pronouns[test::rng()() % 2];
      r.score = test::uniform(0.0, 1.0);
      r.profession = names[test::rng()() % 4];
      r.template_text = "[MASK] is a " + r.profession + ".";
      r.sentence = r.pronoun + " is a " + r.profession + ".";
      r.model = "bert-base-uncased";
      r.seed = static_cast<int>(test::rng()() % 6) - 1;
      if (r.seed != -1 || test::rng()() % 2) r.checkpoint = static_cast<std::int64_t>(test::rng()() % 2000000);
      records.push_back(r);
    }
    std::stringstream buffer;
    write_score_table(buffer, records);
    CHECK(parse_score_table(buffer, default_profiles()) == records);
  }
}

TEST_CASE("assemble_matrices on symmetric probabilities") {
  const auto records = grid({100, 200}, {"nurse", "judge", "pilot"},
                            [](std::size_t, std::size_t) { return std::pair{0.25, 0.25}; },
                            {0.25, 0.25});
  const auto professions = make_profession_list(std::vector<std::string>{"nurse", "judge", "pilot"});
  const auto m = assemble_matrices(records, test_profile(), 0, Verb::kIs, professions);
  CHECK(m.checkpoints() == 2);
  CHECK(m.profession_count() == 3);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      CHECK(m.ratio(r, c) == 1.0);
      CHECK(m.certainty(r, c) == 0.5);
      CHECK(m.normalized(r, c) == 1.0);
    }
  }
}

TEST_CASE("assemble_matrices errors") {
  const std::vector<std::string> names{"nurse", "judge"};
  const auto professions = make_profession_list(names);
  auto ok = [](std::size_t, std::size_t) { return std::pair{0.3, 0.2}; };
  auto message = [&](std::vector<ScoreRecord> records) -> std::string {
    try {
      assemble_matrices(records, test_profile(), 0, Verb::kIs, professions);
    } catch (const Error& e) {
      return e.what();
    }
    return {};
  };

  SUBCASE("missing cell names step and profession") {
    auto records = grid({10, 20}, names, ok);
    records.erase(std::ranges::find_if(records, [](const ScoreRecord& r) {
      return r.checkpoint == 20 && r.profession == "judge" && r.pronoun == "she";
    }));
    const auto msg = message(records);
    CHECK(msg.find("step 20") != std::string::npos);
    CHECK(msg.find("judge") != std::string::npos);
  }
  SUBCASE("duplicate cell") {
    auto records = grid({10}, names, ok);
    records.push_back(records.front());
    CHECK(message(records).find("duplicate") != std::string::npos);
  }
  SUBCASE("missing prior") {
    auto records = grid({10}, names, ok);
    std::erase_if(records, [](const ScoreRecord& r) { return r.profession == "[MASK]"; });
    CHECK(message(records).find("prior") != std::string::npos);
  }
  SUBCASE("zero P(she)") {
    auto records = grid({10}, names, [](std::size_t, std::size_t t) {
      return std::pair{0.3, t == 1 ? 0.0 : 0.2};
    });
    const auto msg = message(records);
    CHECK(msg.find("division by zero") != std::string::npos);
    CHECK(msg.find("judge") != std::string::npos);
  }
  SUBCASE("zero prior") {
    auto records = grid({10}, names, ok, {0.0, 0.3});
    CHECK(message(records).find("zero prior") != std::string::npos);
  }
  SUBCASE("unknown profession") {
    auto records = grid({10}, {"nurse", "judge", "pilot"}, ok);
    CHECK(message(records).find("not in the profession list") != std::string::npos);
  }
  SUBCASE("no matching records") {
    CHECK(message({}).find("no checkpointed records") != std::string::npos);
  }
  SUBCASE("unexpected checkpoint count") {
    auto profile = test_profile();
    profile.expected_checkpoints = 3;
    CHECK_THROWS_AS(assemble_matrices(grid({10}, names, ok), profile, 0, Verb::kIs, professions),
                    InputError);
  }
}

TEST_CASE("assemble_matrices is invariant to record order and consistent with metrics") {
  const std::vector<std::string> names{"nurse", "judge", "pilot", "baker"};
  const auto professions = make_profession_list(names);
  auto records = grid({5, 1, 9}, names, [](std::size_t, std::size_t) {
    return std::pair{test::uniform(0.01, 0.6), test::uniform(0.01, 0.4)};
  }, {0.4, 0.2});
  const auto reference = assemble_matrices(records, test_profile(), 0, Verb::kIs, professions);
  CHECK(reference.steps == std::vector<std::int64_t>{1, 5, 9});

  for (int i = 0; i < 20; ++i) {
    std::ranges::shuffle(records, test::rng());
    const auto m = assemble_matrices(records, test_profile(), 0, Verb::kIs, professions);
    CHECK(m.ratio == reference.ratio);
    CHECK(m.normalized == reference.normalized);
    CHECK(m.certainty == reference.certainty);
    CHECK(m.prior_he == reference.prior_he);
  }
  for (std::size_t r = 0; r < reference.checkpoints(); ++r) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      const double ratio = bias_ratio(reference.p_he(r, c), reference.p_she(r, c));
      CHECK(reference.ratio(r, c) == ratio);
      CHECK(reference.certainty(r, c) == certainty(reference.p_he(r, c), reference.p_she(r, c)));
      CHECK(reference.normalized(r, c) ==
            normalized_ratio(ratio, reference.prior_he[r], reference.prior_she[r]));
    }
  }
}

TEST_CASE("fixture data assembles per run") {
  const auto records = load_score_table(test::fixtures() / "scores.csv", default_profiles());
  auto roberta = default_profiles().at("roberta-base");
  roberta.expected_checkpoints = 6;
  const auto professions = professions_from_records(records, "<mask>");
  CHECK(professions.size() == 10);
  const auto m = assemble_matrices(records, roberta, 0, Verb::kWorksAs, professions);
  CHECK(m.checkpoints() == 6);
  CHECK(m.profession_count() == 10);
  CHECK(seeds_in(records, "bert-base-uncased") == std::vector<int>{0, 1, 2});
  CHECK(seeds_in(records, "roberta-base") == std::vector<int>{0});
}

TEST_CASE("template_verb") {
  CHECK(template_verb("[MASK] is a nurse.", "[MASK]") == Verb::kIs);
  CHECK(template_verb("<mask> works as an engineer.", "<mask>") == Verb::kWorksAs);
  CHECK_FALSE(template_verb("[MASK] was a nurse.", "[MASK]").has_value());
  CHECK_FALSE(template_verb("<mask> is a nurse.", "[MASK]").has_value());
}
