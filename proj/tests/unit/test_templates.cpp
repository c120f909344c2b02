#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "biasprobe/error.hpp"
#include "biasprobe/io.hpp"
#include "biasprobe/templates.hpp"
#include "test_support.hpp"

using namespace biasprobe;
namespace fs = std::filesystem;

namespace {

fs::path write_list(const fs::path& dir, const std::string& name, const std::string& body) {
  const auto path = dir / name;
  std::ofstream(path) << body;
  return path;
}

std::size_t count(std::string_view haystack, std::string_view needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos;
       pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("load_professions merges lists in order and tracks origin") {
  const fs::path lists[] = {test::fixtures() / "professions" / "stereotype.txt",
                            test::fixtures() / "professions" / "wiki.txt"};
  const ProfessionList list = load_professions(lists);
  REQUIRE(list.size() == 10);
  CHECK(list[0].name == "nurse");
  CHECK(list[0].origin == ListOrigin::kStereotype);
  CHECK(list[1].name == "engineer");
  CHECK(list[1].origin == ListOrigin::kBoth);
  CHECK(list[4].name == "president");
  CHECK(list[4].origin == ListOrigin::kWiki);
  CHECK(list.index_of("umpire") == 9);
  CHECK_FALSE(list.index_of("Umpire").has_value());
}

TEST_CASE("load_professions edge cases") {
  const auto dir = test::scratch_dir("professions");

  SUBCASE("singleton") {
    const fs::path paths[] = {write_list(dir, "one.txt", "nurse\n")};
    const auto list = load_professions(paths);
    REQUIRE(list.size() == 1);
    CHECK(list[0].name == "nurse");
  }
  SUBCASE("same name in two files is one entry from both") {
    const fs::path paths[] = {write_list(dir, "a.txt", "doctor\n"),
                              write_list(dir, "b.txt", "doctor\n")};
    const auto list = load_professions(paths);
    REQUIRE(list.size() == 1);
    CHECK(list[0].origin == ListOrigin::kBoth);
  }
  SUBCASE("duplicate inside one file warns and keeps one") {
    const fs::path paths[] = {write_list(dir, "dup.txt", "nurse\r\nnurse\n\n  judge  \n")};
    const auto list = load_professions(paths);
    CHECK(list.size() == 2);
    CHECK(list[1].name == "judge");
    REQUIRE(list.warnings.size() == 1);
    CHECK(list.warnings[0].find("duplicate") != std::string::npos);
  }
  SUBCASE("dedup is case-sensitive") {
    const fs::path paths[] = {write_list(dir, "case.txt", "President\npresident\n")};
    CHECK(load_professions(paths).size() == 2);
  }
  SUBCASE("missing file") {
    const fs::path paths[] = {dir / "nope.txt"};
    CHECK_THROWS_AS(load_professions(paths), InputError);
  }
  SUBCASE("empty merged list") {
    const fs::path paths[] = {write_list(dir, "empty.txt", "\n\n")};
    CHECK_THROWS_AS(load_professions(paths), InputError);
  }
  SUBCASE("mask token inside a name") {
    const fs::path paths[] = {write_list(dir, "mask.txt", "nurse\n[MASK] helper\n")};
    CHECK_THROWS_AS(load_professions(paths), InputError);
  }
}

TEST_CASE("choose_determiner") {
  CHECK(choose_determiner("president") == Determiner::kA);
  CHECK(choose_determiner("engineer") == Determiner::kAn);
  CHECK(choose_determiner("heir") == Determiner::kAn);
  CHECK(choose_determiner("honest broker") == Determiner::kAn);
  CHECK(choose_determiner("hourly worker") == Determiner::kAn);
  CHECK(choose_determiner("university lecturer") == Determiner::kA);
  CHECK(choose_determiner("urologist") == Determiner::kA);
  CHECK(choose_determiner("umpire") == Determiner::kAn);
  CHECK(choose_determiner("Engineer") == Determiner::kAn);
  CHECK(choose_determiner("FBI agent") == Determiner::kAn);
  CHECK(choose_determiner("one-man band") == Determiner::kA);

  DeterminerLexicon custom;
  custom.set("nurse", Determiner::kAn);
  CHECK(choose_determiner("nurse", custom) == Determiner::kAn);
  // Without the shipped overrides the vowel-letter rule gets "heir" wrong.
  CHECK(choose_determiner("heir", custom) == Determiner::kA);
}

TEST_CASE("determiner lexicon: longest prefix wins, exact beats prefix") {
  auto lex = DeterminerLexicon::parse("# comment\nuni-\ta\nunin-\tan\nunion\tan\n");
  CHECK(lex.size() == 3);
  CHECK(lex.lookup("university") == Determiner::kA);
  CHECK(lex.lookup("uninsured driver") == Determiner::kAn);
  CHECK(lex.lookup("union") == Determiner::kAn);
  CHECK_FALSE(lex.lookup("nurse").has_value());
  CHECK_THROWS_AS(DeterminerLexicon::parse("heir an\n"), InputError);
  CHECK_THROWS_AS(DeterminerLexicon::parse("heir\tthe\n"), InputError);
}

TEST_CASE("shipped lexicon file matches the built-in lexicon") {
  const auto file = DeterminerLexicon::load(test::source_dir() / "data" / "determiners.tsv");
  CHECK(file.exact_entries() == DeterminerLexicon::builtin().exact_entries());
  CHECK(file.prefix_entries() == DeterminerLexicon::builtin().prefix_entries());
}

TEST_CASE("render_template follows the grammar") {
  CHECK(render_template(Verb::kIs, "president", "[MASK]").rendered == "[MASK] is a president.");
  CHECK(render_template(Verb::kWorksAs, "engineer", "[MASK]").rendered ==
        "[MASK] works as an engineer.");
  const auto prior = render_prior_template(Verb::kIs, "[MASK]");
  CHECK(prior.rendered == "[MASK] is a [MASK].");
  CHECK(prior.is_prior());
  CHECK(prior.determiner == Determiner::kA);
  CHECK(render_prior_template(Verb::kWorksAs, "<mask>").rendered == "<mask> works as a <mask>.");
}

TEST_CASE("enumerate_probe_set counts and order") {
  const fs::path lists[] = {test::fixtures() / "professions" / "stereotype.txt",
                            test::fixtures() / "professions" / "wiki.txt"};
  const auto professions = load_professions(lists);
  const Verb both[] = {Verb::kIs, Verb::kWorksAs};
  const auto specs = enumerate_probe_set(professions, both, "[MASK]");
  REQUIRE(specs.size() == 2 * (professions.size() + 1));
  CHECK(specs[0].rendered == "[MASK] is a nurse.");
  CHECK(specs[professions.size()].is_prior());
  CHECK(specs.back().is_prior());
  CHECK(specs.back().verb == Verb::kWorksAs);

  const Verb is_only[] = {Verb::kIs};
  const auto single = make_profession_list(std::vector<std::string>{"nurse"});
  CHECK(enumerate_probe_set(single, is_only, "[MASK]").size() == 2);
  CHECK_THROWS_AS(enumerate_probe_set(ProfessionList{}, is_only, "[MASK]"), InputError);
  CHECK_THROWS_AS(enumerate_probe_set(single, std::span<const Verb>{}, "[MASK]"), InputError);

  SUBCASE("rendering is injective and mask counts are fixed") {
    std::set<std::string> seen;
    for (const auto& s : specs) {
      CHECK(seen.insert(s.rendered).second);
      CHECK(count(s.rendered, "[MASK]") == (s.is_prior() ? 2u : 1u));
      CHECK(s.rendered.ends_with('.'));
      CHECK(s.rendered.find("  ") == std::string::npos);
    }
  }
  SUBCASE("determiner choice is idempotent") {
    for (const auto& p : professions) {
      CHECK(choose_determiner(p.name) == choose_determiner(p.name));
    }
  }
}

TEST_CASE("template manifest matches the golden files") {
  const fs::path lists[] = {test::fixtures() / "professions" / "stereotype.txt",
                            test::fixtures() / "professions" / "wiki.txt"};
  const auto professions = load_professions(lists);
  const Verb both[] = {Verb::kIs, Verb::kWorksAs};
  for (const auto& [model, mask] : {std::pair{"roberta-base", "<mask>"},
                                    std::pair{"bert-base-uncased", "[MASK]"}}) {
    std::ostringstream out;
    write_template_manifest(out, enumerate_probe_set(professions, both, mask), mask);
    const auto golden =
        read_file(test::fixtures() / "golden" / (std::string("templates_") + model + ".csv"));
    CHECK(out.str() == golden);
  }
}
