#include "biasprobe/datastore.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#include "biasprobe/csv.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/metrics.hpp"

namespace biasprobe {

namespace {

constexpr std::size_t kColumnCount = std::size(kScoreColumns);

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

bool is_absent(std::string_view field) {
  field = csv::trim(field);
  return field.empty() || field == "NaN" || field == "nan" || field == "NA";
}

std::string cell_name(std::int64_t step, std::string_view profession) {
  return "step " + std::to_string(step) + ", profession '" + std::string(profession) + "'";
}

}  // namespace

void validate_record(const ScoreRecord& r, const ProfileRegistry& profiles) {
  if (!std::isfinite(r.score) || r.score < 0.0 || r.score > 1.0) {
    throw InputError("score out of range [0,1]: " + csv::format_double(r.score));
  }
  auto profile = profiles.find(r.model);
  if (profile == profiles.end()) throw InputError("no model profile for '" + r.model + "'");
  if (r.pronoun != profile->second.he() && r.pronoun != profile->second.she()) {
    throw InputError("unknown pronoun '" + r.pronoun + "' for model " + r.model + " (expected " +
                     profile->second.he() + "/" + profile->second.she() + ")");
  }
  if (r.seed < -1 || r.seed > 4) {
    throw InputError("unknown seed index " + std::to_string(r.seed));
  }
  if (!r.checkpoint && r.seed != -1) {
    throw InputError("missing checkpoint is only allowed for seed -1");
  }
  if (r.profession.empty()) throw InputError("empty profession");
}

std::vector<ScoreRecord> parse_score_table(std::istream& in, const ProfileRegistry& profiles) {
  csv::Reader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields)) throw InputError("score table is empty");
  if (!fields.empty() && fields[0].starts_with("\xEF\xBB\xBF")) fields[0].erase(0, 3);
  if (fields.size() != kColumnCount ||
      !std::equal(fields.begin(), fields.end(), std::begin(kScoreColumns),
                  [](const std::string& a, std::string_view b) { return csv::trim(a) == b; })) {
    throw InputError(at_line(reader.line()) +
                     "header must be pronoun,score,profession,template,sentence,model,seed,"
                     "checkpoint");
  }

  std::vector<ScoreRecord> records;
  while (reader.next(fields)) {
    if (fields.size() == 1 && csv::trim(fields[0]).empty()) continue;
    const auto line = reader.line();
    if (fields.size() != kColumnCount) {
      throw InputError(at_line(line) + "malformed row: expected " + std::to_string(kColumnCount) +
                       " fields, got " + std::to_string(fields.size()));
    }
    try {
      ScoreRecord r;
      r.pronoun = fields[0];
      r.score = csv::parse_double(fields[1], "score");
      r.profession = fields[2];
      r.template_text = fields[3];
      r.sentence = fields[4];
      r.model = fields[5];
      r.seed = static_cast<int>(csv::parse_int(fields[6], "seed index"));
      if (!is_absent(fields[7])) r.checkpoint = csv::parse_int(fields[7], "checkpoint");
      validate_record(r, profiles);
      records.push_back(std::move(r));
    } catch (const InputError& e) {
      throw InputError(at_line(line) + e.what());
    }
  }
  return records;
}

std::vector<ScoreRecord> load_score_table(const std::filesystem::path& path,
                                          const ProfileRegistry& profiles) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open score table " + path.string());
  try {
    return parse_score_table(in, profiles);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_score_table(std::ostream& out, std::span<const ScoreRecord> records) {
  csv::write_row(out, {kScoreColumns[0], kScoreColumns[1], kScoreColumns[2], kScoreColumns[3],
                       kScoreColumns[4], kScoreColumns[5], kScoreColumns[6], kScoreColumns[7]});
  for (const auto& r : records) {
    const std::string score = csv::format_double(r.score);
    const std::string seed = std::to_string(r.seed);
    const std::string step = r.checkpoint ? std::to_string(*r.checkpoint) : std::string();
    csv::write_row(out, {r.pronoun, score, r.profession, r.template_text, r.sentence, r.model,
                         seed, step});
  }
}

std::optional<Verb> template_verb(std::string_view text, std::string_view mask_token) {
  if (!text.starts_with(mask_token)) return std::nullopt;
  text.remove_prefix(mask_token.size());
  if (text.starts_with(" is ")) return Verb::kIs;
  if (text.starts_with(" works as ")) return Verb::kWorksAs;
  return std::nullopt;
}

ScoreMatrixSet assemble_matrices(std::span<const ScoreRecord> records, const ModelProfile& profile,
                                 int seed, Verb verb, const ProfessionList& professions) {
  if (professions.empty()) throw InputError("cannot assemble matrices without professions");

  const std::string he = profile.he();
  const std::string run = profile.name + " seed " + std::to_string(seed) + " verb '" +
                          std::string(to_string(verb)) + "'";

  std::vector<const ScoreRecord*> selected;
  std::set<std::int64_t> step_set;
  for (const auto& r : records) {
    if (r.model != profile.name || r.seed != seed || !r.checkpoint) continue;
    if (template_verb(r.template_text, profile.mask_token) != verb) continue;
    selected.push_back(&r);
    step_set.insert(*r.checkpoint);
  }
  if (step_set.empty()) throw InputError("no checkpointed records for " + run);

  ScoreMatrixSet m;
  m.model = profile.name;
  m.seed = seed;
  m.verb = verb;
  m.steps.assign(step_set.begin(), step_set.end());
  m.professions = professions;

  const std::size_t b = m.steps.size();
  const std::size_t p = professions.size();
  std::map<std::int64_t, std::size_t> row_of;
  for (std::size_t i = 0; i < b; ++i) row_of[m.steps[i]] = i;

  // Column p holds the prior template.
  const double unset = std::numeric_limits<double>::quiet_NaN();
  Matrix he_scores(b, p + 1, unset), she_scores(b, p + 1, unset);
  for (const ScoreRecord* r : selected) {
    std::size_t col = p;
    if (r->profession != profile.mask_token) {
      auto idx = professions.index_of(r->profession);
      if (!idx) {
        throw InputError(run + ": profession '" + r->profession + "' is not in the profession list");
      }
      col = *idx;
    }
    const std::size_t row = row_of.at(*r->checkpoint);
    Matrix& target = r->pronoun == he ? he_scores : she_scores;
    if (!std::isnan(target(row, col))) {
      throw InputError(run + ": duplicate '" + r->pronoun + "' score for " +
                       cell_name(*r->checkpoint,
                                 col == p ? std::string_view("<prior>") : r->profession));
    }
    target(row, col) = r->score;
  }

  m.p_he = Matrix(b, p);
  m.p_she = Matrix(b, p);
  m.ratio = Matrix(b, p);
  m.normalized = Matrix(b, p);
  m.certainty = Matrix(b, p);
  m.prior_he.resize(b);
  m.prior_she.resize(b);
  for (std::size_t row = 0; row < b; ++row) {
    const std::int64_t step = m.steps[row];
    if (std::isnan(he_scores(row, p)) || std::isnan(she_scores(row, p))) {
      throw InputError(run + ": missing prior-template record at step " + std::to_string(step));
    }
    m.prior_he[row] = he_scores(row, p);
    m.prior_she[row] = she_scores(row, p);
    for (std::size_t col = 0; col < p; ++col) {
      const std::string_view name = professions[col].name;
      const double ph = he_scores(row, col);
      const double ps = she_scores(row, col);
      if (std::isnan(ph) || std::isnan(ps)) {
        throw InputError(run + ": missing " + (std::isnan(ph) ? he : profile.she()) +
                         " score for " + cell_name(step, name));
      }
      const std::string where = run + ", " + cell_name(step, name);
      m.p_he(row, col) = ph;
      m.p_she(row, col) = ps;
      m.ratio(row, col) = bias_ratio(ph, ps, where);
      m.normalized(row, col) =
          normalized_ratio(m.ratio(row, col), m.prior_he[row], m.prior_she[row],
                           run + ", prior template at step " + std::to_string(step));
      m.certainty(row, col) = certainty(ph, ps, where);
    }
  }
  if (profile.expected_checkpoints && *profile.expected_checkpoints != b) {
    throw InputError(run + ": expected " + std::to_string(*profile.expected_checkpoints) +
                     " checkpoints, found " + std::to_string(b));
  }
  return m;
}

ProfessionList professions_from_records(std::span<const ScoreRecord> records,
                                        std::string_view mask_token) {
  ProfessionList list;
  for (const auto& r : records) {
    if (r.profession == mask_token) continue;
    if (std::ranges::find(kKnownMaskTokens, r.profession) != std::end(kKnownMaskTokens)) continue;
    list.add(r.profession, ListOrigin::kWiki);
  }
  return list;
}

std::vector<int> seeds_in(std::span<const ScoreRecord> records, std::string_view model) {
  std::set<int> seeds;
  for (const auto& r : records) {
    if (r.model == model && r.checkpoint) seeds.insert(r.seed);
  }
  return {seeds.begin(), seeds.end()};
}

}  // namespace biasprobe
