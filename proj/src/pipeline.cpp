#include "biasprobe/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "biasprobe/csv.hpp"
#include "biasprobe/datastore.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/io.hpp"

namespace biasprobe {

namespace fs = std::filesystem;

namespace {

DeterminerLexicon lexicon_for(const RunConfig& cfg) {
  return cfg.determiners ? DeterminerLexicon::load(*cfg.determiners) : DeterminerLexicon::builtin();
}

ProfileRegistry registry_for(const RunConfig& cfg) {
  ProfileRegistry registry = default_profiles();
  for (const auto& m : cfg.models) registry[m.profile.name] = m.profile;
  return registry;
}

fs::path frequency_path(const RunConfig& cfg, CaseMode mode) {
  return cfg.output / "frequency" / (std::string(to_string(mode)) + ".csv");
}

std::vector<std::size_t> plateau_starts(const ModelRunConfig& m) {
  std::vector<std::size_t> ks{m.profile.plateau_start};
  for (auto k : m.alternate_k) {
    if (std::ranges::find(ks, k) == ks.end()) ks.push_back(k);
  }
  return ks;
}

FrequencyResult summarize_frequency(const FrequencyTable& table, std::size_t top_n,
                                    const std::string& corpus) {
  FrequencyResult r;
  r.case_mode = table.case_mode;
  r.corpus = corpus;
  r.ranking = rank_professions(table, std::min(top_n, table.professions.size()));
  r.sorted_frequencies = table.frequency;
  std::ranges::sort(r.sorted_frequencies, std::greater<>());
  return r;
}

}  // namespace

ProfessionList professions_for(const RunConfig& cfg, const ModelRunConfig& model,
                               std::span<const ScoreRecord> records) {
  if (!cfg.profession_lists.empty()) return load_professions(cfg.profession_lists);
  std::vector<ScoreRecord> mine;
  for (const auto& r : records) {
    if (r.model == model.profile.name) mine.push_back(r);
  }
  ProfessionList list = professions_from_records(mine, model.profile.mask_token);
  if (list.empty()) throw InputError("no professions found for model " + model.profile.name);
  return list;
}

std::vector<fs::path> run_templates(const RunConfig& cfg) {
  if (cfg.profession_lists.empty()) {
    throw InputError("templates: config [run] professions must list the profession files");
  }
  if (cfg.models.empty()) throw InputError("templates: no [model:<name>] sections configured");
  const ProfessionList professions = load_professions(cfg.profession_lists);
  const DeterminerLexicon lexicon = lexicon_for(cfg);
  std::vector<fs::path> written;
  for (const auto& m : cfg.models) {
    const auto specs = enumerate_probe_set(professions, cfg.verbs, m.profile.mask_token, lexicon);
    std::ostringstream out;
    write_template_manifest(out, specs, m.profile.mask_token);
    const fs::path path = cfg.output / "templates" / (m.profile.name + ".csv");
    write_file_atomic(path, out.str());
    written.push_back(path);
  }
  return written;
}

std::vector<FrequencyTable> run_freq(const RunConfig& cfg, Transport* transport) {
  const auto& fc = cfg.frequency;
  if (!fc.sizes) throw InputError("freq: config [frequency] sizes is required");
  const CorpusSizes sizes = load_corpus_sizes(*fc.sizes);

  ProfessionList professions;
  if (!cfg.profession_lists.empty()) {
    professions = load_professions(cfg.profession_lists);
  } else {
    throw InputError("freq: config [run] professions must list the profession files");
  }

  std::unique_ptr<Transport> owned;
  if (!transport) {
    if (fc.offline) {
      if (!fc.fixtures && !fc.cache_dir) {
        throw InputError("freq: offline mode needs [frequency] fixtures or a cache directory");
      }
      owned = std::make_unique<FixtureTransport>(fc.fixtures.value_or(cfg.output / "no-fixtures"));
    } else {
      owned = std::make_unique<HttpTransport>();
    }
    transport = owned.get();
  }

  NgramOptions options;
  options.corpus = fc.corpus;
  options.cache_dir = fc.cache_dir;
  if (!options.cache_dir) {
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) options.cache_dir = fs::path(env);
  }
  options.requests_per_minute = fc.requests_per_minute;
  NgramClient client(*transport, options);

  std::vector<FrequencyTable> tables;
  for (CaseMode mode : fc.modes) {
    FrequencyTable table = build_frequency_table(professions, sizes, client, mode);
    std::ostringstream out;
    write_frequency_table(out, table);
    write_file_atomic(frequency_path(cfg, mode), out.str());

    const auto ranking = rank_professions(table, std::min(fc.top_n, table.professions.size()));
    std::ostringstream top;
    csv::write_row(top, {"rank", "profession", "frequency"});
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      csv::write_row(top, {std::to_string(i + 1), ranking[i].first,
                           csv::format_double(ranking[i].second)});
    }
    write_file_atomic(cfg.output / "frequency" /
                          ("top" + std::to_string(fc.top_n) + "_" +
                           std::string(to_string(mode)) + ".csv"),
                      top.str());
    tables.push_back(std::move(table));
  }
  return tables;
}

FrequencyTable align_frequency(const FrequencyTable& table,
                               const std::vector<std::string>& professions) {
  std::unordered_map<std::string, double> by_name;
  for (std::size_t i = 0; i < table.professions.size(); ++i) {
    by_name.emplace(table.professions[i], table.frequency[i]);
  }
  FrequencyTable aligned;
  aligned.case_mode = table.case_mode;
  aligned.sizes = table.sizes;
  for (const auto& name : professions) {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      throw InputError("frequency table has no entry for profession '" + name + "'");
    }
    aligned.professions.push_back(name);
    aligned.frequency.push_back(it->second);
  }
  return aligned;
}

ReportBundle analyze(const RunConfig& cfg) {
  if (cfg.models.empty()) throw InputError("analyze: no [model:<name>] sections configured");
  const ProfileRegistry registry = registry_for(cfg);

  ReportBundle bundle;
  bundle.options.histogram_bins = cfg.histogram_bins;
  bundle.options.heatmap_floor = cfg.heatmap_floor;
  bundle.options.png = cfg.png;
  bundle.options.ngram_corpus = cfg.frequency.corpus;

  std::map<CaseMode, FrequencyTable> frequency;
  for (CaseMode mode : {CaseMode::kLowercase, CaseMode::kCaseInsensitive, CaseMode::kAsIs}) {
    const fs::path path = frequency_path(cfg, mode);
    if (fs::exists(path)) {
      frequency.emplace(mode, load_frequency_table(path, mode));
      bundle.frequency.push_back(
          summarize_frequency(frequency.at(mode), cfg.frequency.top_n, cfg.frequency.corpus));
    }
  }

  for (const auto& m : cfg.models) {
    if (m.data.empty()) throw InputError("analyze: model " + m.profile.name + " has no data files");
    std::vector<ScoreRecord> records;
    for (const auto& path : m.data) {
      auto part = load_score_table(path, registry);
      records.insert(records.end(), std::make_move_iterator(part.begin()),
                     std::make_move_iterator(part.end()));
    }
    const ProfessionList professions = professions_for(cfg, m, records);
    std::vector<int> seeds = m.seeds.empty() ? seeds_in(records, m.profile.name) : m.seeds;
    const auto present = seeds_in(records, m.profile.name);
    for (int seed : seeds) {
      if (std::ranges::find(present, seed) == present.end()) {
        throw InputError("analyze: no checkpointed records for model " + m.profile.name +
                         " seed " + std::to_string(seed));
      }
    }
    if (seeds.empty()) throw InputError("analyze: no checkpointed records for " + m.profile.name);

    std::optional<FrequencyTable> freq;
    if (auto it = frequency.find(m.profile.frequency_case); it != frequency.end()) {
      freq = align_frequency(it->second, professions.names());
    }
    const auto ks = plateau_starts(m);

    for (Verb verb : cfg.verbs) {
      // seed-level summaries per (k, source) for the seed-pair analysis
      std::map<std::pair<std::size_t, RatioSource>, std::map<int, FluctuationSummary>> by_seed;
      for (int seed : seeds) {
        const ScoreMatrixSet mset = assemble_matrices(records, m.profile, seed, verb, professions);
        RunResult run;
        run.model = m.profile.name;
        run.seed = seed;
        run.verb = verb;
        run.steps = mset.steps;
        run.professions = mset.professions.names();
        run.trajectory.push_back({"prior", mset.prior_he, mset.prior_she});
        for (std::size_t t : cfg.trajectory_professions) {
          if (t >= mset.profession_count()) continue;
          run.trajectory.push_back({mset.professions[t].name, mset.p_he.column(t),
                                    mset.p_she.column(t)});
        }
        for (RatioSource source : cfg.sources) {
          run.rq4.emplace_back(source, rq4_checkpoint_correlations(mset, source));
        }
        for (std::size_t k : ks) {
          const PlateauConfig plateau{k, mset.checkpoints()};
          try {
            plateau.validate();
          } catch (const InputError& e) {
            throw InputError(m.profile.name + " seed " + std::to_string(seed) + ": " + e.what());
          }
          PlateauAnalysis pa;
          pa.k = k;
          pa.prior = prior_fluctuation(mset, plateau);
          for (RatioSource source : cfg.sources) {
            SourceAnalysis sa;
            sa.source = source;
            sa.summary = fluctuation_summary(mset, plateau, source);
            sa.rq1 = rq1_stats(sa.summary, cfg.histogram_bins);
            sa.rq2 = rq2_certainty_correlation(sa.summary);
            if (freq) {
              sa.rq3 = rq3_frequency_correlation(sa.summary, *freq);
              sa.rq3_case_mode = freq->case_mode;
            }
            by_seed[{k, source}][seed] = sa.summary;
            pa.sources.push_back(std::move(sa));
          }
          run.plateaus.push_back(std::move(pa));
        }
        bundle.runs.push_back(std::move(run));
      }
      if (seeds.size() >= 2) {
        for (const auto& [key, summaries] : by_seed) {
          SeedCorrelationResult s;
          s.model = m.profile.name;
          s.verb = verb;
          s.k = key.first;
          s.source = key.second;
          s.rq5 = rq5_seed_correlations(summaries, key.second);
          bundle.seed_correlations.push_back(std::move(s));
        }
      }
    }
  }
  return bundle;
}

ReportBundle run_analyze(const RunConfig& cfg) {
  ReportBundle bundle = analyze(cfg);
  export_report(bundle, cfg.output);
  render_figures(bundle, cfg.output);
  return bundle;
}

ReportBundle run_report(const fs::path& report_json, const fs::path& out_dir,
                        std::optional<bool> png) {
  const auto doc = nlohmann::json::parse(read_file(report_json), nullptr, false);
  if (doc.is_discarded()) throw InputError("cannot parse " + report_json.string());
  ReportBundle bundle;
  try {
    bundle = bundle_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(report_json.string() + ": " + e.what());
  }
  if (png) bundle.options.png = *png;
  export_report(bundle, out_dir);
  render_figures(bundle, out_dir);
  return bundle;
}

}  // namespace biasprobe
