#include "biasprobe/profile.hpp"

#include "biasprobe/csv.hpp"
#include "biasprobe/error.hpp"

namespace biasprobe {

std::string_view to_string(PronounCase c) {
  return c == PronounCase::kLower ? "uncased" : "cased";
}

std::string_view to_string(CaseMode m) {
  switch (m) {
    case CaseMode::kLowercase: return "lowercase";
    case CaseMode::kCaseInsensitive: return "case-insensitive";
    case CaseMode::kAsIs: return "as-is";
  }
  return "?";
}

CaseMode parse_case_mode(std::string_view text) {
  text = csv::trim(text);
  if (text == "lowercase") return CaseMode::kLowercase;
  if (text == "case-insensitive") return CaseMode::kCaseInsensitive;
  if (text == "as-is") return CaseMode::kAsIs;
  throw InputError("unknown case mode '" + std::string(text) + "'");
}

ProfileRegistry default_profiles() {
  ProfileRegistry profiles;
  profiles["roberta-base"] = ModelProfile{
      .name = "roberta-base",
      .mask_token = "<mask>",
      .pronouns = PronounCase::kCapitalized,
      .expected_checkpoints = 62,
      .plateau_start = 36,
      .frequency_case = CaseMode::kCaseInsensitive,
  };
  profiles["bert-base-uncased"] = ModelProfile{
      .name = "bert-base-uncased",
      .mask_token = "[MASK]",
      .pronouns = PronounCase::kLower,
      .expected_checkpoints = 29,
      .plateau_start = 18,
      .frequency_case = CaseMode::kLowercase,
  };
  return profiles;
}

std::optional<std::size_t> alternate_plateau_start(std::string_view model) {
  if (model == "roberta-base") return 49;
  if (model == "bert-base-uncased") return 24;
  return std::nullopt;
}

}  // namespace biasprobe
