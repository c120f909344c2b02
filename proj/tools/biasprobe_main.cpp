// Command-line driver: templates, freq, analyze, report.

#include <CLI11.hpp>

#include <iostream>

#include "biasprobe/error.hpp"
#include "biasprobe/pipeline.hpp"

namespace {

using namespace biasprobe;

struct GlobalOptions {
  std::string config;
  bool offline = false;
  bool live = false;
  std::optional<std::size_t> k;
  std::optional<std::string> verb;
  std::optional<std::string> source;
  std::optional<std::string> out;
};

RunConfig load(const GlobalOptions& g) {
  if (g.config.empty()) throw InputError("--config is required");
  RunConfig cfg = load_run_config(g.config);
  ConfigOverrides o;
  o.k = g.k;
  if (g.verb) o.verb = parse_verb(*g.verb);
  if (g.source) o.source = parse_ratio_source(*g.source);
  if (g.out) o.output = *g.out;
  if (g.offline) o.offline = true;
  if (g.live) o.offline = false;
  apply_overrides(cfg, o);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Template-based gender-bias analysis over pre-training checkpoints"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--config", g.config, "Run configuration (INI)");
  auto* offline = app.add_flag("--offline", g.offline, "Use recorded Ngram responses and cache only");
  app.add_flag("--live", g.live, "Query the live Ngram API")->excludes(offline);
  app.add_option("--k", g.k, "Plateau start row for every model");
  app.add_option("--verb", g.verb, "Restrict to one verb: 'is' or 'works as'");
  app.add_option("--source", g.source, "Restrict to one ratio source")
      ->check(CLI::IsMember({"normalized", "unnormalized"}));
  app.add_option("--out", g.out, "Output directory");

  auto* templates = app.add_subcommand("templates", "Write probe template manifests");
  auto* freq = app.add_subcommand("freq", "Estimate profession corpus frequencies");
  auto* analyze = app.add_subcommand("analyze", "Compute fluctuation and correlation reports");
  auto* report = app.add_subcommand("report", "Re-render tables and figures from report.json");
  std::string report_in;
  report->add_option("--in", report_in, "report.json to render (default: <out>/report/report.json)");
  bool no_png = false;
  report->add_flag("--no-png", no_png, "Skip raster figures");

  CLI11_PARSE(app, argc, argv);

  try {
    if (templates->parsed()) {
      for (const auto& path : run_templates(load(g))) std::cout << path.string() << '\n';
    } else if (freq->parsed()) {
      const RunConfig cfg = load(g);
      for (const auto& table : run_freq(cfg)) {
        std::cout << to_string(table.case_mode) << ": " << table.professions.size()
                  << " professions\n";
        const auto top = rank_professions(table, std::min<std::size_t>(cfg.frequency.top_n,
                                                                        table.professions.size()));
        for (std::size_t i = 0; i < top.size(); ++i) {
          std::cout << "  " << i + 1 << ". " << top[i].first << '\n';
        }
      }
    } else if (analyze->parsed()) {
      const RunConfig cfg = load(g);
      const ReportBundle bundle = run_analyze(cfg);
      for (const auto& run : bundle.runs) {
        for (const auto& p : run.plateaus) {
          for (const auto& s : p.sources) {
            std::cout << run.model << " seed " << run.seed << " '" << to_string(run.verb)
                      << "' k=" << p.k << ' ' << to_string(s.source) << ": min(v)=" << s.rq1.min
                      << " max(v)=" << s.rq1.max << " r(v,c)=" << s.rq2;
            if (s.rq3) std::cout << " r(v,f)=" << *s.rq3;
            std::cout << '\n';
          }
        }
      }
      std::cout << "report written to " << (cfg.output / "report" / "report.json").string() << '\n';
    } else if (report->parsed()) {
      std::filesystem::path out = g.out ? std::filesystem::path(*g.out) : std::filesystem::path();
      if (out.empty()) out = load(g).output;
      const std::filesystem::path in =
          report_in.empty() ? out / "report" / "report.json" : std::filesystem::path(report_in);
      run_report(in, out, no_png ? std::optional<bool>(false) : std::nullopt);
      std::cout << "figures written to " << (out / "figures").string() << '\n';
    }
  } catch (const biasprobe::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
