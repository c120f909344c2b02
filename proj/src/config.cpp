#include "biasprobe/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <set>

#include "biasprobe/csv.hpp"
#include "biasprobe/error.hpp"

namespace biasprobe {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kModelPrefix = "model:";

bool parse_bool(std::string_view text, const std::string& key) {
  text = csv::trim(text);
  if (text == "true" || text == "yes" || text == "1" || text == "on") return true;
  if (text == "false" || text == "no" || text == "0" || text == "off") return false;
  throw InputError("config key '" + key + "': expected a boolean, got '" + std::string(text) + "'");
}

std::size_t parse_size(std::string_view text, const std::string& key) {
  const long long v = csv::parse_int(text, "value for '" + key + "'");
  if (v < 0) throw InputError("config key '" + key + "' must not be negative");
  return static_cast<std::size_t>(v);
}

fs::path resolve(const fs::path& base, std::string_view value) {
  fs::path p{std::string(csv::trim(value))};
  return p.is_absolute() ? p : base / p;
}

std::vector<fs::path> resolve_list(const fs::path& base, std::string_view value) {
  std::vector<fs::path> out;
  for (const auto& item : split_list(value)) out.push_back(resolve(base, item));
  return out;
}

void check_known(const pt::ptree& section, const std::string& name,
                 std::initializer_list<std::string_view> keys) {
  for (const auto& [key, _] : section) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InputError("unknown key '" + key + "' in section [" + name + "]");
    }
  }
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (true) {
    const auto comma = text.find(',');
    auto item = csv::trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

RunConfig parse_run_config(std::istream& in, const fs::path& base_dir) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }

  RunConfig cfg;
  cfg.output = base_dir / "out";
  const auto builtin = default_profiles();
  std::set<std::string> seen_models;

  for (const auto& [section_name, section] : tree) {
    if (section_name == "run") {
      check_known(section, section_name,
                  {"output", "verbs", "sources", "professions", "determiners", "histogram_bins",
                   "heatmap_floor", "trajectory_professions", "png"});
      for (const auto& [key, node] : section) {
        const std::string value = node.get_value<std::string>();
        if (key == "output") cfg.output = resolve(base_dir, value);
        else if (key == "verbs") {
          cfg.verbs.clear();
          for (const auto& v : split_list(value)) cfg.verbs.push_back(parse_verb(v));
        } else if (key == "sources") {
          cfg.sources.clear();
          for (const auto& s : split_list(value)) cfg.sources.push_back(parse_ratio_source(s));
        } else if (key == "professions") cfg.profession_lists = resolve_list(base_dir, value);
        else if (key == "determiners") cfg.determiners = resolve(base_dir, value);
        else if (key == "histogram_bins") cfg.histogram_bins = parse_size(value, key);
        else if (key == "heatmap_floor") cfg.heatmap_floor = csv::parse_double(value, key);
        else if (key == "trajectory_professions") {
          cfg.trajectory_professions.clear();
          for (const auto& i : split_list(value)) cfg.trajectory_professions.push_back(parse_size(i, key));
        } else if (key == "png") cfg.png = parse_bool(value, key);
      }
    } else if (section_name == "frequency") {
      check_known(section, section_name,
                  {"corpus", "sizes", "cache", "fixtures", "requests_per_minute", "modes", "top_n",
                   "offline"});
      auto& f = cfg.frequency;
      for (const auto& [key, node] : section) {
        const std::string value = node.get_value<std::string>();
        if (key == "corpus") f.corpus = std::string(csv::trim(value));
        else if (key == "sizes") f.sizes = resolve(base_dir, value);
        else if (key == "cache") f.cache_dir = resolve(base_dir, value);
        else if (key == "fixtures") f.fixtures = resolve(base_dir, value);
        else if (key == "requests_per_minute") f.requests_per_minute = csv::parse_double(value, key);
        else if (key == "modes") {
          f.modes.clear();
          for (const auto& m : split_list(value)) f.modes.push_back(parse_case_mode(m));
        } else if (key == "top_n") f.top_n = parse_size(value, key);
        else if (key == "offline") f.offline = parse_bool(value, key);
      }
    } else if (section_name.starts_with(kModelPrefix)) {
      const std::string name = section_name.substr(kModelPrefix.size());
      if (name.empty()) throw InputError("model section without a name");
      if (!seen_models.insert(name).second) throw InputError("duplicate model section " + name);
      check_known(section, section_name,
                  {"mask", "pronouns", "checkpoints", "k", "alt_k", "data", "seeds",
                   "frequency_case"});
      ModelRunConfig m;
      if (auto it = builtin.find(name); it != builtin.end()) {
        m.profile = it->second;
        if (auto alt = alternate_plateau_start(name)) m.alternate_k.push_back(*alt);
      } else {
        m.profile.name = name;
      }
      for (const auto& [key, node] : section) {
        const std::string value = node.get_value<std::string>();
        if (key == "mask") m.profile.mask_token = std::string(csv::trim(value));
        else if (key == "pronouns") {
          const auto v = csv::trim(value);
          if (v == "cased") m.profile.pronouns = PronounCase::kCapitalized;
          else if (v == "uncased") m.profile.pronouns = PronounCase::kLower;
          else throw InputError("pronouns must be 'cased' or 'uncased'");
        } else if (key == "checkpoints") {
          const auto v = csv::trim(value);
          if (v.empty() || v == "any") m.profile.expected_checkpoints.reset();
          else m.profile.expected_checkpoints = parse_size(v, key);
        } else if (key == "k") m.profile.plateau_start = parse_size(value, key);
        else if (key == "alt_k") {
          m.alternate_k.clear();
          for (const auto& k : split_list(value)) m.alternate_k.push_back(parse_size(k, key));
        } else if (key == "data") m.data = resolve_list(base_dir, value);
        else if (key == "seeds") {
          for (const auto& s : split_list(value)) {
            m.seeds.push_back(static_cast<int>(csv::parse_int(s, "seed")));
          }
        } else if (key == "frequency_case") m.profile.frequency_case = parse_case_mode(value);
      }
      cfg.models.push_back(std::move(m));
    } else {
      throw InputError("unknown config section [" + section_name + "]");
    }
  }
  if (cfg.verbs.empty()) throw InputError("config selects no verbs");
  if (cfg.sources.empty()) throw InputError("config selects no ratio sources");
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  try {
    return parse_run_config(in, path.parent_path().empty() ? fs::path(".") : path.parent_path());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void apply_overrides(RunConfig& cfg, const ConfigOverrides& o) {
  if (o.k) {
    for (auto& m : cfg.models) m.profile.plateau_start = *o.k;
  }
  if (o.verb) cfg.verbs = {*o.verb};
  if (o.source) cfg.sources = {*o.source};
  if (o.output) cfg.output = *o.output;
  if (o.offline) cfg.frequency.offline = *o.offline;
}

}  // namespace biasprobe
