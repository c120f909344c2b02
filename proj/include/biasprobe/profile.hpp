#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace biasprobe {

enum class PronounCase { kLower, kCapitalized };

/// How a profession is looked up in the n-gram corpus.
enum class CaseMode { kLowercase, kCaseInsensitive, kAsIs };

std::string_view to_string(PronounCase c);
std::string_view to_string(CaseMode m);
CaseMode parse_case_mode(std::string_view text);

/// Everything model-specific the pipeline needs: tokenizer mask spelling,
/// pronoun casing in score tables, and plateau defaults.
struct ModelProfile {
  std::string name;
  std::string mask_token = "[MASK]";
  PronounCase pronouns = PronounCase::kLower;
  std::optional<std::size_t> expected_checkpoints;  // b, when known
  std::size_t plateau_start = 0;                    // k
  CaseMode frequency_case = CaseMode::kLowercase;

  std::string he() const { return pronouns == PronounCase::kLower ? "he" : "He"; }
  std::string she() const { return pronouns == PronounCase::kLower ? "she" : "She"; }
};

using ProfileRegistry = std::map<std::string, ModelProfile, std::less<>>;

/// roberta-base (cased, "<mask>", b = 62, k = 36) and bert-base-uncased
/// (uncased, "[MASK]", b = 29, k = 18).
ProfileRegistry default_profiles();

/// Shorter plateau starts used as a robustness check: 49 for roberta-base,
/// 24 for bert-base-uncased.
std::optional<std::size_t> alternate_plateau_start(std::string_view model);

}  // namespace biasprobe
