#include "biasprobe/templates.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

#include "biasprobe/csv.hpp"
#include "biasprobe/error.hpp"

namespace biasprobe {

namespace {

// Keep in sync with data/determiners.tsv (a unit test compares them).
constexpr std::string_view kBuiltinLexicon =
    "heir-\tan\n"
    "honest-\tan\n"
    "honor-\tan\n"
    "honour-\tan\n"
    "hour-\tan\n"
    "one-\ta\n"
    "euro-\ta\n"
    "eunuch\ta\n"
    "union-\ta\n"
    "unit-\ta\n"
    "univers-\ta\n"
    "uniform-\ta\n"
    "user-\ta\n"
    "urologist\ta\n"
    "ufologist\ta\n"
    "utility\ta\n"
    "ukulele-\ta\n"
    "fbi\tan\n"
    "hr\tan\n"
    "mp\tan\n"
    "rn\tan\n"
    "lpn\tan\n"
    "x-ray\tan\n";

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::ranges::transform(out, out.begin(),
                         [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(ListOrigin origin) {
  switch (origin) {
    case ListOrigin::kStereotype: return "stereotype-list";
    case ListOrigin::kWiki: return "wiki-list";
    case ListOrigin::kBoth: return "both";
  }
  return "?";
}

bool ProfessionList::add(std::string name, ListOrigin origin) {
  if (auto it = index_.find(name); it != index_.end()) {
    auto& existing = items_[it->second];
    if (existing.origin != origin) existing.origin = ListOrigin::kBoth;
    return false;
  }
  index_.emplace(name, items_.size());
  items_.push_back(Profession{std::move(name), origin});
  return true;
}

std::optional<std::size_t> ProfessionList::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> ProfessionList::names() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const auto& p : items_) out.push_back(p.name);
  return out;
}

ProfessionList load_professions(std::span<const ProfessionSource> sources) {
  ProfessionList list;
  for (const auto& source : sources) {
    std::ifstream in(source.path);
    if (!in) throw InputError("cannot open profession list " + source.path.string());
    std::vector<std::string> seen_here;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view name = csv::trim(line);
      if (line_no == 1 && name.starts_with("\xEF\xBB\xBF")) name.remove_prefix(3);
      if (name.empty()) continue;
      for (auto mask : kKnownMaskTokens) {
        if (name.find(mask) != std::string_view::npos) {
          throw InputError(source.path.string() + ":" + std::to_string(line_no) +
                           ": profession contains a mask token");
        }
      }
      std::string owned(name);
      if (std::ranges::find(seen_here, owned) != seen_here.end()) {
        list.warnings.push_back(source.path.string() + ":" + std::to_string(line_no) +
                                ": duplicate profession '" + owned + "' ignored");
        continue;
      }
      seen_here.push_back(owned);
      list.add(std::move(owned), source.origin);
    }
  }
  if (list.empty()) throw InputError("merged profession list is empty");
  return list;
}

ProfessionList load_professions(std::span<const std::filesystem::path> paths) {
  std::vector<ProfessionSource> sources;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    sources.push_back({paths[i], i == 0 ? ListOrigin::kStereotype : ListOrigin::kWiki});
  }
  return load_professions(sources);
}

ProfessionList make_profession_list(std::span<const std::string> names, ListOrigin origin) {
  ProfessionList list;
  for (const auto& n : names) list.add(n, origin);
  return list;
}

std::string_view to_string(Determiner d) { return d == Determiner::kAn ? "an" : "a"; }

const DeterminerLexicon& DeterminerLexicon::builtin() {
  static const DeterminerLexicon lexicon = parse(kBuiltinLexicon);
  return lexicon;
}

DeterminerLexicon DeterminerLexicon::parse(std::string_view text) {
  DeterminerLexicon lexicon;
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = csv::trim(line);
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw InputError("determiner lexicon line " + std::to_string(line_no) +
                       ": expected name<TAB>a|an");
    }
    auto key = csv::trim(line.substr(0, tab));
    auto value = csv::trim(line.substr(tab + 1));
    if (key.empty() || (value != "a" && value != "an")) {
      throw InputError("determiner lexicon line " + std::to_string(line_no) +
                       ": expected name<TAB>a|an");
    }
    lexicon.set(lowercase(key), value == "an" ? Determiner::kAn : Determiner::kA);
  }
  return lexicon;
}

DeterminerLexicon DeterminerLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open determiner lexicon " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void DeterminerLexicon::set(std::string key, Determiner d) {
  if (key.size() > 1 && key.back() == '-') {
    key.pop_back();
    prefix_[std::move(key)] = d;
  } else {
    exact_[std::move(key)] = d;
  }
}

std::optional<Determiner> DeterminerLexicon::lookup(std::string_view name) const {
  const std::string lower = lowercase(name);
  if (auto it = exact_.find(lower); it != exact_.end()) return it->second;
  const std::string first_word = lower.substr(0, lower.find(' '));
  if (auto it = exact_.find(first_word); it != exact_.end()) return it->second;

  const std::string* best = nullptr;
  std::optional<Determiner> result;
  for (const auto& [stem, d] : prefix_) {
    if (lower.starts_with(stem) && (!best || stem.size() > best->size())) {
      best = &stem;
      result = d;
    }
  }
  return result;
}

Determiner choose_determiner(std::string_view profession, const DeterminerLexicon& lexicon) {
  if (auto d = lexicon.lookup(profession)) return *d;
  auto first = std::ranges::find_if(profession, [](unsigned char c) { return std::isalpha(c); });
  if (first == profession.end()) return Determiner::kA;
  switch (std::tolower(static_cast<unsigned char>(*first))) {
    case 'a': case 'e': case 'i': case 'o': case 'u': return Determiner::kAn;
    default: return Determiner::kA;
  }
}

std::string_view to_string(Verb verb) { return verb == Verb::kIs ? "is" : "works as"; }

Verb parse_verb(std::string_view text) {
  text = csv::trim(text);
  if (text == "is") return Verb::kIs;
  if (text == "works as" || text == "works_as" || text == "works-as") return Verb::kWorksAs;
  throw InputError("unknown verb '" + std::string(text) + "' (expected 'is' or 'works as')");
}

TemplateSpec render_template(Verb verb, std::string_view profession, std::string_view mask_token,
                             const DeterminerLexicon& lexicon) {
  TemplateSpec spec;
  spec.verb = verb;
  spec.determiner = choose_determiner(profession, lexicon);
  spec.profession = std::string(profession);
  spec.rendered = std::string(mask_token) + ' ' + std::string(to_string(verb)) + ' ' +
                  std::string(to_string(spec.determiner)) + ' ' + std::string(profession) + '.';
  return spec;
}

TemplateSpec render_prior_template(Verb verb, std::string_view mask_token) {
  TemplateSpec spec;
  spec.verb = verb;
  spec.determiner = Determiner::kA;
  spec.rendered = std::string(mask_token) + ' ' + std::string(to_string(verb)) + " a " +
                  std::string(mask_token) + '.';
  return spec;
}

std::vector<TemplateSpec> enumerate_probe_set(const ProfessionList& professions,
                                              std::span<const Verb> verbs,
                                              std::string_view mask_token,
                                              const DeterminerLexicon& lexicon) {
  if (professions.empty()) throw InputError("probe set needs at least one profession");
  if (verbs.empty()) throw InputError("probe set needs at least one verb");
  std::vector<TemplateSpec> specs;
  specs.reserve(verbs.size() * (professions.size() + 1));
  for (Verb verb : verbs) {
    for (const auto& p : professions) {
      specs.push_back(render_template(verb, p.name, mask_token, lexicon));
    }
    specs.push_back(render_prior_template(verb, mask_token));
  }
  return specs;
}

void write_template_manifest(std::ostream& out, std::span<const TemplateSpec> specs,
                             std::string_view mask_token) {
  csv::write_row(out, {"verb", "profession", "template"});
  for (const auto& spec : specs) {
    csv::write_row(out, {to_string(spec.verb),
                         spec.is_prior() ? mask_token : std::string_view(*spec.profession),
                         spec.rendered});
  }
}

}  // namespace biasprobe
