#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace biasprobe {

enum class ListOrigin { kStereotype, kWiki, kBoth };

std::string_view to_string(ListOrigin origin);

struct Profession {
  std::string name;  // surface form, casing preserved
  ListOrigin origin = ListOrigin::kStereotype;

  friend bool operator==(const Profession&, const Profession&) = default;
};

/// Merged, deduplicated professions. The position of an item is its column
/// index in every score matrix.
class ProfessionList {
 public:
  ProfessionList() = default;

  /// Appends `name`, or marks an existing entry as coming from both lists.
  /// Returns false when the name was already present.
  bool add(std::string name, ListOrigin origin);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Profession& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Profession>& items() const { return items_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::vector<std::string> names() const;

  /// Non-fatal problems found while loading (duplicates inside one file).
  std::vector<std::string> warnings;

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<Profession> items_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct ProfessionSource {
  std::filesystem::path path;
  ListOrigin origin = ListOrigin::kWiki;
};

/// Mask spellings that may never appear inside a profession name.
inline constexpr std::string_view kKnownMaskTokens[] = {"[MASK]", "<mask>"};

/// Reads newline-delimited lists and merges them in order; case-sensitive
/// dedup keeps the first occurrence.
ProfessionList load_professions(std::span<const ProfessionSource> sources);

/// Convenience overload: the first file is the stereotype list, the rest
/// are treated as wiki lists.
ProfessionList load_professions(std::span<const std::filesystem::path> paths);

/// Builds a list from names already in memory (all tagged `origin`).
ProfessionList make_profession_list(std::span<const std::string> names,
                                    ListOrigin origin = ListOrigin::kWiki);

enum class Determiner { kA, kAn };

std::string_view to_string(Determiner d);

/// Exceptions to the vowel-letter rule for "a"/"an".
///
/// Keys are lowercase. A key ending in '-' matches any name starting with the
/// key's stem; other keys match the whole name or its first word. Exact
/// matches win over prefix matches and longer prefixes win over shorter ones.
class DeterminerLexicon {
 public:
  DeterminerLexicon() = default;

  /// The lexicon shipped with the library (see data/determiners.tsv).
  static const DeterminerLexicon& builtin();

  /// Parses "name<TAB>a|an" lines; '#' starts a comment.
  static DeterminerLexicon parse(std::string_view text);
  static DeterminerLexicon load(const std::filesystem::path& path);

  void set(std::string key, Determiner d);
  std::optional<Determiner> lookup(std::string_view name) const;
  std::size_t size() const { return exact_.size() + prefix_.size(); }

  const std::map<std::string, Determiner>& exact_entries() const { return exact_; }
  const std::map<std::string, Determiner>& prefix_entries() const { return prefix_; }

 private:
  std::map<std::string, Determiner> exact_;
  std::map<std::string, Determiner> prefix_;
};

Determiner choose_determiner(std::string_view profession,
                             const DeterminerLexicon& lexicon = DeterminerLexicon::builtin());

enum class Verb { kIs, kWorksAs };

std::string_view to_string(Verb verb);
Verb parse_verb(std::string_view text);

struct TemplateSpec {
  Verb verb = Verb::kIs;
  Determiner determiner = Determiner::kA;
  std::optional<std::string> profession;  // nullopt for the prior template
  std::string rendered;

  bool is_prior() const { return !profession.has_value(); }
  friend bool operator==(const TemplateSpec&, const TemplateSpec&) = default;
};

/// "[MASK] <verb> <det> <profession>." for a profession.
TemplateSpec render_template(Verb verb, std::string_view profession, std::string_view mask_token,
                             const DeterminerLexicon& lexicon = DeterminerLexicon::builtin());

/// Prior template: the profession slot holds a second mask token, determiner "a".
TemplateSpec render_prior_template(Verb verb, std::string_view mask_token);

/// One spec per (verb, profession), in list order, then the prior template,
/// repeated for each verb in the given order.
std::vector<TemplateSpec> enumerate_probe_set(
    const ProfessionList& professions, std::span<const Verb> verbs, std::string_view mask_token,
    const DeterminerLexicon& lexicon = DeterminerLexicon::builtin());

/// Writes the probe manifest consumed by the scoring script: CSV with header
/// "verb,profession,template"; the prior row carries the mask token as profession.
void write_template_manifest(std::ostream& out, std::span<const TemplateSpec> specs,
                             std::string_view mask_token);

}  // namespace biasprobe
