#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "biasprobe/error.hpp"
#include "biasprobe/metrics.hpp"
#include "biasprobe/pipeline.hpp"

namespace py = pybind11;
using namespace biasprobe;

namespace {

std::vector<std::pair<std::string, std::string>> probe_set(const std::vector<std::string>& names,
                                                           const std::string& mask) {
  const Verb verbs[] = {Verb::kIs, Verb::kWorksAs};
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& spec : enumerate_probe_set(make_profession_list(names), verbs, mask)) {
    out.emplace_back(std::string(to_string(spec.verb)), spec.rendered);
  }
  return out;
}

std::string analyze_config(const std::filesystem::path& config,
                           std::optional<std::filesystem::path> out) {
  RunConfig cfg = load_run_config(config);
  if (out) cfg.output = *out;
  run_freq(cfg);
  return to_json(run_analyze(cfg)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Template-based gender-bias statistics over pre-training checkpoints";
  m.attr("__version__") = std::string(kToolVersion);

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
  py::register_exception<TransportError>(m, "TransportError", PyExc_OSError);

  m.def("bias_ratio", [](double he, double she) { return bias_ratio(he, she); });
  m.def("normalized_ratio", [](double r, double qh, double qs) { return normalized_ratio(r, qh, qs); });
  m.def("certainty", [](double he, double she) { return certainty(he, she); });
  m.def("coefficient_of_variation",
        [](const std::vector<double>& v) { return coefficient_of_variation(v); });
  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) {
    return pearson(x, y);
  });
  m.def("total_frequency", [](const std::vector<double>& sizes, const std::vector<double>& rel) {
    YearlySeries y{"", CaseMode::kLowercase, kFirstYear, rel};
    return total_frequency(y, CorpusSizes{kFirstYear, sizes});
  }, "Inner product of yearly corpus sizes (1700-2000) and relative frequencies.");

  m.def("determiner", [](const std::string& profession) {
    return std::string(to_string(choose_determiner(profession)));
  });
  m.def("builtin_lexicon", [] {
    std::vector<std::pair<std::string, std::string>> out;
    const auto& lex = DeterminerLexicon::builtin();
    for (const auto& [k, d] : lex.exact_entries()) out.emplace_back(k, std::string(to_string(d)));
    for (const auto& [k, d] : lex.prefix_entries()) {
      out.emplace_back(k + "-", std::string(to_string(d)));
    }
    return out;
  }, "Exception entries as (key, determiner); prefix keys end in '-'.");
  m.def("render_template", [](const std::string& verb, const std::string& profession,
                              const std::string& mask) {
    return render_template(parse_verb(verb), profession, mask).rendered;
  });
  m.def("probe_set", &probe_set, py::arg("professions"), py::arg("mask") = "[MASK]",
        "(verb, template) pairs for both verbs, prior template last per verb.");
  m.def("analyze_config", &analyze_config, py::arg("config"), py::arg("out") = py::none(),
        "Runs freq and analyze for an INI config; returns the report as a JSON string.");
}
