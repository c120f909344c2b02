#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biasprobe/matrix.hpp"
#include "biasprobe/profile.hpp"
#include "biasprobe/templates.hpp"

namespace biasprobe {

/// One row of a score table: the probability that `pronoun` fills the first
/// mask of `template_text` under one checkpoint.
struct ScoreRecord {
  std::string pronoun;
  double score = 0.0;
  std::string profession;  // or the model's mask token for the prior template
  std::string template_text;
  std::string sentence;
  std::string model;
  int seed = 0;
  std::optional<std::int64_t> checkpoint;  // absent for the public checkpoint

  friend bool operator==(const ScoreRecord&, const ScoreRecord&) = default;
};

/// Column names of the canonical CSV, in order.
inline constexpr std::string_view kScoreColumns[] = {
    "pronoun", "score", "profession", "template", "sentence", "model", "seed", "checkpoint"};

/// Reads a canonical score table (header row required). Every row is
/// validated against the model profiles; errors carry the line number.
std::vector<ScoreRecord> parse_score_table(std::istream& in, const ProfileRegistry& profiles);

std::vector<ScoreRecord> load_score_table(const std::filesystem::path& path,
                                          const ProfileRegistry& profiles);

void write_score_table(std::ostream& out, std::span<const ScoreRecord> records);

/// Checks one record in isolation; throws InputError.
void validate_record(const ScoreRecord& record, const ProfileRegistry& profiles);

/// Verb encoded in a masked template ("<mask> is ..." / "<mask> works as ...").
std::optional<Verb> template_verb(std::string_view template_text, std::string_view mask_token);

/// Aligned per-checkpoint matrices for one (model, seed, verb) run.
struct ScoreMatrixSet {
  std::string model;
  int seed = 0;
  Verb verb = Verb::kIs;
  std::vector<std::int64_t> steps;  // strictly increasing, length b
  ProfessionList professions;       // length p
  Matrix p_he, p_she;
  Matrix ratio;            // R = P_he / P_she
  Matrix normalized;       // N = R * prior_she / prior_he
  Matrix certainty;        // C = P_he + P_she
  std::vector<double> prior_he, prior_she;

  std::size_t checkpoints() const { return steps.size(); }
  std::size_t profession_count() const { return professions.size(); }
};

/// Builds the matrix set from records of one model/seed/verb. Records of other
/// runs are ignored, as are public-checkpoint rows without a step.
ScoreMatrixSet assemble_matrices(std::span<const ScoreRecord> records, const ModelProfile& profile,
                                 int seed, Verb verb, const ProfessionList& professions);

/// Professions in order of first appearance, excluding the prior rows.
ProfessionList professions_from_records(std::span<const ScoreRecord> records,
                                        std::string_view mask_token);

/// Seeds present in `records` for `model`, ascending; -1 only if it has steps.
std::vector<int> seeds_in(std::span<const ScoreRecord> records, std::string_view model);

}  // namespace biasprobe
