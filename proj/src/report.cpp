#include "biasprobe/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "biasprobe/csv.hpp"
#include "biasprobe/error.hpp"
#include "biasprobe/io.hpp"

namespace biasprobe {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    rows.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows) {
  const std::size_t n = rows.size();
  const std::size_t cols = n ? rows.at(0).size() : 0;
  Matrix m(n, cols);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != cols) throw InputError("ragged matrix in report");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c].get<double>();
  }
  return m;
}

json correlation_to_json(const CorrelationMatrix& cm) {
  return {{"kind", std::string(to_string(cm.kind))},
          {"labels", cm.labels},
          {"values", matrix_to_json(cm.values)}};
}

CorrelationMatrix correlation_from_json(const json& j) {
  CorrelationMatrix cm;
  cm.kind = j.at("kind").get<std::string>() == "seed-pair" ? CorrelationKind::kSeedPair
                                                           : CorrelationKind::kCheckpointPair;
  cm.labels = j.at("labels").get<std::vector<long long>>();
  cm.values = matrix_from_json(j.at("values"));
  return cm;
}

std::string run_key(const RunResult& run) {
  return run.model + "__seed" + std::to_string(run.seed) + "__" + verb_slug(run.verb);
}

std::string table(const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  csv::write_row(out, header);
  for (const auto& row : rows) csv::write_row(out, row);
  return out.str();
}

std::string correlation_table(const CorrelationMatrix& cm) {
  std::vector<std::string> header{"label"};
  for (auto l : cm.labels) header.push_back(std::to_string(l));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < cm.labels.size(); ++i) {
    std::vector<std::string> row{std::to_string(cm.labels[i])};
    for (std::size_t j = 0; j < cm.labels.size(); ++j) {
      row.push_back(csv::format_double(cm.values(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return table(header, rows);
}

std::string opt_number(const std::optional<double>& v) {
  return v ? csv::format_double(*v) : std::string();
}

}  // namespace

std::string verb_slug(Verb verb) { return verb == Verb::kIs ? "is" : "works_as"; }

json to_json(const ReportBundle& bundle) {
  json doc;
  doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  doc["metadata"] = {
      {"standard_deviation", "population"},
      {"pearson_zero_variance", "error"},
      {"ratio_space", "linear"},
      {"histogram_bins", bundle.options.histogram_bins},
      {"histogram_range", "[0, max(v)]"},
      {"heatmap_floor", bundle.options.heatmap_floor},
      {"ngram_corpus", bundle.options.ngram_corpus},
      {"ngram_years", {kFirstYear, kLastYear}},
  };

  json runs = json::array();
  for (const auto& run : bundle.runs) {
    json r;
    r["model"] = run.model;
    r["seed"] = run.seed;
    r["verb"] = std::string(to_string(run.verb));
    r["b"] = run.steps.size();
    r["steps"] = run.steps;
    r["professions"] = run.professions;
    json traj = json::array();
    for (const auto& s : run.trajectory) {
      traj.push_back({{"label", s.label}, {"he", s.he}, {"she", s.she}});
    }
    r["trajectory"] = traj;
    json rq4 = json::array();
    for (const auto& [source, cm] : run.rq4) {
      json entry = correlation_to_json(cm);
      entry["source"] = std::string(to_string(source));
      rq4.push_back(entry);
    }
    r["rq4"] = rq4;
    json plateaus = json::array();
    for (const auto& p : run.plateaus) {
      json pj;
      pj["k"] = p.k;
      pj["prior"] = {{"mean_certainty", p.prior.mean_certainty}, {"cv", p.prior.cv}};
      json sources = json::array();
      for (const auto& s : p.sources) {
        json sj;
        sj["source"] = std::string(to_string(s.source));
        sj["rq1"] = {{"min", s.rq1.min},
                     {"max", s.rq1.max},
                     {"histogram",
                      {{"edges", s.rq1.histogram.edges}, {"counts", s.rq1.histogram.counts}}}};
        sj["rq2"] = {{"pearson_cv_certainty", s.rq2}};
        if (s.rq3) {
          sj["rq3"] = {{"pearson_cv_frequency", *s.rq3},
                       {"case_mode", std::string(to_string(*s.rq3_case_mode))}};
        } else {
          sj["rq3"] = nullptr;
        }
        sj["vectors"] = {{"cv", s.summary.cv},
                         {"mean_certainty", s.summary.mean_certainty},
                         {"mean_normalized", s.summary.mean_normalized},
                         {"mean_unnormalized", s.summary.mean_unnormalized}};
        sources.push_back(sj);
      }
      pj["sources"] = sources;
      plateaus.push_back(pj);
    }
    r["plateaus"] = plateaus;
    runs.push_back(r);
  }
  doc["runs"] = runs;

  json seeds = json::array();
  for (const auto& s : bundle.seed_correlations) {
    json sj = correlation_to_json(s.rq5);
    sj["model"] = s.model;
    sj["verb"] = std::string(to_string(s.verb));
    sj["k"] = s.k;
    sj["source"] = std::string(to_string(s.source));
    seeds.push_back(sj);
  }
  doc["rq5"] = seeds;

  json freq = json::array();
  for (const auto& f : bundle.frequency) {
    json ranking = json::array();
    for (const auto& [name, value] : f.ranking) {
      ranking.push_back({{"profession", name}, {"frequency", value}});
    }
    freq.push_back({{"case_mode", std::string(to_string(f.case_mode))},
                    {"corpus", f.corpus},
                    {"ranking", ranking},
                    {"sorted_frequencies", f.sorted_frequencies}});
  }
  doc["frequency"] = freq;
  return doc;
}

ReportBundle bundle_from_json(const json& doc) {
  ReportBundle bundle;
  const auto& meta = doc.at("metadata");
  bundle.options.histogram_bins = meta.at("histogram_bins").get<std::size_t>();
  bundle.options.heatmap_floor = meta.at("heatmap_floor").get<double>();
  bundle.options.ngram_corpus = meta.at("ngram_corpus").get<std::string>();

  for (const auto& r : doc.at("runs")) {
    RunResult run;
    run.model = r.at("model").get<std::string>();
    run.seed = r.at("seed").get<int>();
    run.verb = parse_verb(r.at("verb").get<std::string>());
    run.steps = r.at("steps").get<std::vector<std::int64_t>>();
    run.professions = r.at("professions").get<std::vector<std::string>>();
    for (const auto& t : r.at("trajectory")) {
      run.trajectory.push_back({t.at("label").get<std::string>(),
                                t.at("he").get<std::vector<double>>(),
                                t.at("she").get<std::vector<double>>()});
    }
    for (const auto& c : r.at("rq4")) {
      run.rq4.emplace_back(parse_ratio_source(c.at("source").get<std::string>()),
                           correlation_from_json(c));
    }
    for (const auto& pj : r.at("plateaus")) {
      PlateauAnalysis p;
      p.k = pj.at("k").get<std::size_t>();
      p.prior.mean_certainty = pj.at("prior").at("mean_certainty").get<double>();
      p.prior.cv = pj.at("prior").at("cv").get<double>();
      for (const auto& sj : pj.at("sources")) {
        SourceAnalysis s;
        s.source = parse_ratio_source(sj.at("source").get<std::string>());
        s.rq1.min = sj.at("rq1").at("min").get<double>();
        s.rq1.max = sj.at("rq1").at("max").get<double>();
        s.rq1.histogram.edges = sj.at("rq1").at("histogram").at("edges").get<std::vector<double>>();
        s.rq1.histogram.counts =
            sj.at("rq1").at("histogram").at("counts").get<std::vector<std::size_t>>();
        s.rq2 = sj.at("rq2").at("pearson_cv_certainty").get<double>();
        if (!sj.at("rq3").is_null()) {
          s.rq3 = sj.at("rq3").at("pearson_cv_frequency").get<double>();
          s.rq3_case_mode = parse_case_mode(sj.at("rq3").at("case_mode").get<std::string>());
        }
        const auto& v = sj.at("vectors");
        s.summary.source = s.source;
        s.summary.professions = run.professions;
        s.summary.cv = v.at("cv").get<std::vector<double>>();
        s.summary.mean_certainty = v.at("mean_certainty").get<std::vector<double>>();
        s.summary.mean_normalized = v.at("mean_normalized").get<std::vector<double>>();
        s.summary.mean_unnormalized = v.at("mean_unnormalized").get<std::vector<double>>();
        p.sources.push_back(std::move(s));
      }
      run.plateaus.push_back(std::move(p));
    }
    bundle.runs.push_back(std::move(run));
  }
  for (const auto& sj : doc.at("rq5")) {
    SeedCorrelationResult s;
    s.model = sj.at("model").get<std::string>();
    s.verb = parse_verb(sj.at("verb").get<std::string>());
    s.k = sj.at("k").get<std::size_t>();
    s.source = parse_ratio_source(sj.at("source").get<std::string>());
    s.rq5 = correlation_from_json(sj);
    bundle.seed_correlations.push_back(std::move(s));
  }
  for (const auto& fj : doc.at("frequency")) {
    FrequencyResult f;
    f.case_mode = parse_case_mode(fj.at("case_mode").get<std::string>());
    f.corpus = fj.at("corpus").get<std::string>();
    for (const auto& e : fj.at("ranking")) {
      f.ranking.emplace_back(e.at("profession").get<std::string>(), e.at("frequency").get<double>());
    }
    f.sorted_frequencies = fj.at("sorted_frequencies").get<std::vector<double>>();
    bundle.frequency.push_back(std::move(f));
  }
  return bundle;
}

void export_report(const ReportBundle& bundle, const fs::path& out_dir) {
  if (bundle.empty()) throw InputError("nothing to report: no analysis results");
  const fs::path report_dir = out_dir / "report";
  const fs::path tables = report_dir / "tables";

  std::vector<std::vector<std::string>> summary_rows;
  for (const auto& run : bundle.runs) {
    const std::string key = run_key(run);
    for (const auto& [source, cm] : run.rq4) {
      write_file_atomic(tables / ("rq4__" + key + "__" + std::string(to_string(source)) + ".csv"),
                        correlation_table(cm));
    }
    for (const auto& p : run.plateaus) {
      for (const auto& s : p.sources) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t t = 0; t < s.summary.cv.size(); ++t) {
          rows.push_back({s.summary.professions[t], csv::format_double(s.summary.cv[t]),
                          csv::format_double(s.summary.mean_certainty[t]),
                          csv::format_double(s.summary.mean_normalized[t]),
                          csv::format_double(s.summary.mean_unnormalized[t])});
        }
        const std::string name = "fluctuation__" + key + "__k" + std::to_string(p.k) + "__" +
                                 std::string(to_string(s.source)) + ".csv";
        write_file_atomic(tables / name,
                          table({"profession", "cv", "mean_certainty", "mean_normalized",
                                 "mean_unnormalized"},
                                rows));
        summary_rows.push_back({run.model, std::to_string(run.seed),
                                std::string(to_string(run.verb)), std::to_string(p.k),
                                std::string(to_string(s.source)), csv::format_double(s.rq1.min),
                                csv::format_double(s.rq1.max), csv::format_double(s.rq2),
                                opt_number(s.rq3)});
      }
    }
  }
  write_file_atomic(tables / "summary.csv",
                    table({"model", "seed", "verb", "k", "source", "min_cv", "max_cv",
                           "pearson_cv_certainty", "pearson_cv_frequency"},
                          summary_rows));

  for (const auto& s : bundle.seed_correlations) {
    write_file_atomic(tables / ("rq5__" + s.model + "__" + verb_slug(s.verb) + "__k" +
                                std::to_string(s.k) + "__" + std::string(to_string(s.source)) +
                                ".csv"),
                      correlation_table(s.rq5));
  }
  for (const auto& f : bundle.frequency) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < f.ranking.size(); ++i) {
      rows.push_back({std::to_string(i + 1), f.ranking[i].first,
                      csv::format_double(f.ranking[i].second)});
    }
    write_file_atomic(tables / ("frequency_top__" + std::string(to_string(f.case_mode)) + ".csv"),
                      table({"rank", "profession", "frequency"}, rows));
  }

  write_file_atomic(report_dir / "report.json", to_json(bundle).dump(1) + "\n");
}

std::vector<double> normalize_by_max(std::span<const double> series) {
  if (series.empty()) throw DomainError("cannot normalize an empty series");
  const double peak = *std::ranges::max_element(series);
  if (!(peak > 0.0)) throw DomainError("cannot normalize an all-zero series by its maximum");
  std::vector<double> out;
  out.reserve(series.size());
  for (double v : series) out.push_back(v / peak);
  return out;
}

plot::Canvas render_trajectory(std::span<const std::int64_t> steps,
                               std::span<const TrajectorySeries> series, bool normalize,
                               const std::string& title) {
  if (series.empty()) throw InputError("trajectory needs at least one template");
  if (steps.empty()) throw InputError("trajectory needs at least one checkpoint");
  struct Drawn {
    std::string label;
    std::vector<double> values;
  };
  std::vector<Drawn> lines;
  double top = 0.0;
  for (const auto& s : series) {
    if (s.he.size() != steps.size() || s.she.size() != steps.size()) {
      throw InputError("trajectory series '" + s.label + "' does not match the step axis");
    }
    for (const auto& [pronoun, values] : {std::pair{"he", &s.he}, std::pair{"she", &s.she}}) {
      Drawn d{s.label + " / " + pronoun, normalize ? normalize_by_max(*values) : *values};
      top = std::max(top, *std::ranges::max_element(d.values));
      lines.push_back(std::move(d));
    }
  }
  if (top <= 0.0) top = 1.0;

  plot::Canvas c(720, 440);
  const plot::Scale x{static_cast<double>(steps.front()), static_cast<double>(steps.back()), 80, 520};
  const plot::Scale y{0.0, top * 1.05, 380, 40};
  c.add(plot::Text{{300, 24}, title, 13.0, plot::Anchor::kMiddle});
  plot::draw_axes(c, x, y, "pre-training step",
                  normalize ? "probability / max probability" : "probability");
  for (std::size_t i = 0; i < lines.size(); ++i) {
    plot::Polyline pl{{}, plot::palette(i), 1.5};
    for (std::size_t j = 0; j < steps.size(); ++j) {
      pl.points.push_back({x(static_cast<double>(steps[j])), y(lines[i].values[j])});
    }
    c.add(std::move(pl));
    const double ly = 50 + 18.0 * static_cast<double>(i);
    c.add(plot::Line{{540, ly - 4}, {560, ly - 4}, plot::palette(i), 2.0});
    c.add(plot::Text{{566, ly}, lines[i].label, 11.0});
  }
  return c;
}

ScatterHistograms scatter_histograms(std::span<const double> x, std::span<const double> y,
                                     std::size_t bins) {
  if (x.size() != y.size()) {
    throw InputError("scatter inputs differ in length (" + std::to_string(x.size()) + " vs " +
                     std::to_string(y.size()) + ")");
  }
  const auto upper = [](std::span<const double> v) {
    return v.empty() ? 0.0 : *std::ranges::max_element(v);
  };
  return {make_histogram(x, upper(x), bins), make_histogram(y, upper(y), bins)};
}

plot::Canvas render_scatter_with_marginals(std::span<const double> x, std::span<const double> y,
                                           std::optional<ScatterPrior> prior,
                                           const std::string& x_label, const std::string& y_label,
                                           const std::string& title, std::size_t bins) {
  const ScatterHistograms hist = scatter_histograms(x, y, bins);
  double x_max = hist.x.edges.back(), y_max = hist.y.edges.back();
  if (prior) {
    x_max = std::max(x_max, prior->x);
    y_max = std::max(y_max, prior->y);
  }
  if (x_max <= 0.0) x_max = 1.0;
  if (y_max <= 0.0) y_max = 1.0;

  plot::Canvas c(600, 600);
  const plot::Scale sx{0.0, x_max * 1.05, 80, 460};
  const plot::Scale sy{0.0, y_max * 1.05, 540, 160};
  c.add(plot::Text{{300, 20}, title, 13.0, plot::Anchor::kMiddle});
  plot::draw_axes(c, sx, sy, x_label, y_label);
  for (std::size_t i = 0; i < x.size(); ++i) {
    c.add(plot::Circle{{sx(x[i]), sy(y[i])}, 2.5, plot::kBlue, 0.6});
  }
  if (prior) c.add(plot::Cross{{sx(prior->x), sy(prior->y)}, 10.0, plot::kRed, 2.5});

  // Marginals: x histogram above the plot, y histogram to the right.
  const auto peak = [](const Histogram& h) {
    std::size_t m = 1;
    for (auto n : h.counts) m = std::max(m, n);
    return static_cast<double>(m);
  };
  const double px = peak(hist.x), py = peak(hist.y);
  for (std::size_t b = 0; b < hist.x.counts.size(); ++b) {
    const double h = 100.0 * static_cast<double>(hist.x.counts[b]) / px;
    const double x0 = sx(hist.x.edges[b]), x1 = sx(hist.x.edges[b + 1]);
    c.add(plot::Rect{x0, 150 - h, std::max(0.5, x1 - x0), h, plot::kGray});
  }
  for (std::size_t b = 0; b < hist.y.counts.size(); ++b) {
    const double w = 100.0 * static_cast<double>(hist.y.counts[b]) / py;
    const double y0 = sy(hist.y.edges[b + 1]), y1 = sy(hist.y.edges[b]);
    c.add(plot::Rect{470, y0, w, std::max(0.5, y1 - y0), plot::kGray});
  }
  return c;
}

plot::Color heatmap_color(double value, double floor) {
  static constexpr plot::Color kStops[] = {
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};
  double t = 1.0;
  if (floor < 1.0) t = (std::max(value, floor) - floor) / (1.0 - floor);
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * (std::size(kStops) - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos), std::size(kStops) - 2);
  const double f = pos - static_cast<double>(i);
  const auto mix = [f](std::uint8_t a, std::uint8_t b) {
    return static_cast<std::uint8_t>(std::lround(a + (b - a) * f));
  };
  return {mix(kStops[i].r, kStops[i + 1].r), mix(kStops[i].g, kStops[i + 1].g),
          mix(kStops[i].b, kStops[i + 1].b)};
}

plot::Canvas render_heatmap(const CorrelationMatrix& cm, double floor, const std::string& title) {
  const std::size_t n = cm.labels.size();
  plot::Canvas c(640, 600);
  c.add(plot::Text{{300, 24}, title, 13.0, plot::Anchor::kMiddle});
  const double left = 90, top = 50, side = 460;
  const double cell = n ? side / static_cast<double>(n) : side;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      c.add(plot::Rect{left + cell * static_cast<double>(j), top + cell * static_cast<double>(i),
                       cell, cell, heatmap_color(cm.values(i, j), floor)});
    }
  }
  const std::size_t stride = std::max<std::size_t>(1, n / 10);
  for (std::size_t i = 0; i < n; i += stride) {
    const double mid = cell * (static_cast<double>(i) + 0.5);
    c.add(plot::Text{{left - 6, top + mid + 3}, std::to_string(cm.labels[i]), 9.0,
                     plot::Anchor::kEnd});
    c.add(plot::Text{{left + mid, top + side + 14}, std::to_string(cm.labels[i]), 9.0,
                     plot::Anchor::kEnd, -45.0});
  }
  // Color bar from the floor (or -1) up to 1.
  const double lo = std::max(-1.0, std::min(floor, 1.0));
  for (int s = 0; s < 100; ++s) {
    const double v = lo + (1.0 - lo) * s / 99.0;
    c.add(plot::Rect{left + side + 30, top + side - side * (s + 1) / 100.0, 18, side / 100.0 + 0.5,
                     heatmap_color(v, floor)});
  }
  c.add(plot::Text{{left + side + 52, top + 8}, "1.0", 10.0});
  c.add(plot::Text{{left + side + 52, top + side}, plot::format_tick(lo), 10.0});
  return c;
}

plot::Canvas render_frequency_rank(std::span<const double> sorted, const std::string& title) {
  if (sorted.empty()) throw InputError("frequency plot needs at least one profession");
  double lo = INFINITY, hi = 0.0;
  for (double f : sorted) {
    if (f > 0.0) {
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
  }
  if (hi <= 0.0) lo = hi = 1.0;
  const double l0 = std::floor(std::log10(lo)), l1 = std::ceil(std::log10(hi)) + (lo == hi ? 1 : 0);
  plot::Canvas c(640, 420);
  const plot::Scale x{0.0, static_cast<double>(sorted.size() - 1), 80, 600};
  const plot::Scale y{l0, l1, 360, 40};
  c.add(plot::Text{{340, 24}, title, 13.0, plot::Anchor::kMiddle});
  plot::draw_axes(c, x, y, "profession rank", "log10 estimated frequency");
  plot::Polyline pl{{}, plot::kBlue, 1.5};
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double v = sorted[i] > 0.0 ? std::log10(sorted[i]) : l0;
    pl.points.push_back({x(static_cast<double>(i)), y(v)});
  }
  c.add(std::move(pl));
  return c;
}

void render_figures(const ReportBundle& bundle, const fs::path& out_dir) {
  const fs::path figures = out_dir / "figures";
  const bool png = bundle.options.png;
  auto emit = [&](const plot::Canvas& c, const fs::path& base) {
    c.write_svg(fs::path(base).replace_extension(".svg"));
    if (png) c.write_png(fs::path(base).replace_extension(".png"));
  };

  for (const auto& run : bundle.runs) {
    const fs::path dir = figures / run.model / std::to_string(run.seed) / verb_slug(run.verb);
    const std::string tag = run.model + ", seed " + std::to_string(run.seed) + ", \"" +
                            std::string(to_string(run.verb)) + "\"";
    if (!run.trajectory.empty()) {
      emit(render_trajectory(run.steps, run.trajectory, true, "Pronoun probabilities, " + tag),
           dir / "trajectory");
    }
    for (const auto& [source, cm] : run.rq4) {
      emit(render_heatmap(cm, bundle.options.heatmap_floor,
                          "Checkpoint-pair correlation (" + std::string(to_string(source)) +
                              "), " + tag),
           dir / ("heatmap_" + std::string(to_string(source))));
    }
    for (const auto& p : run.plateaus) {
      for (const auto& s : p.sources) {
        std::optional<ScatterPrior> prior;
        if (s.source == RatioSource::kUnnormalized) {
          prior = ScatterPrior{p.prior.mean_certainty, p.prior.cv};
        }
        emit(render_scatter_with_marginals(
                 s.summary.mean_certainty, s.summary.cv, prior, "mean certainty",
                 "coefficient of variation",
                 "Fluctuation vs certainty (" + std::string(to_string(s.source)) + ", k=" +
                     std::to_string(p.k) + "), " + tag,
                 bundle.options.histogram_bins),
             dir / ("scatter_" + std::string(to_string(s.source)) + "_k" + std::to_string(p.k)));
      }
    }
  }
  for (const auto& s : bundle.seed_correlations) {
    emit(render_heatmap(s.rq5, -1.0,
                        "Seed-pair correlation (" + std::string(to_string(s.source)) + ", k=" +
                            std::to_string(s.k) + "), " + s.model),
         figures / s.model / "seeds" / verb_slug(s.verb) /
             ("rq5_" + std::string(to_string(s.source)) + "_k" + std::to_string(s.k)));
  }
  for (const auto& f : bundle.frequency) {
    if (f.sorted_frequencies.empty()) continue;
    emit(render_frequency_rank(f.sorted_frequencies,
                               "Profession frequencies (" + std::string(to_string(f.case_mode)) +
                                   ")"),
         figures / "frequency" / std::string(to_string(f.case_mode)));
  }
}

}  // namespace biasprobe
