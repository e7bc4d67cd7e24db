#include "mtlearn/report.hpp"

#include <map>
#include <set>

#include <json.hpp>

#include "mtlearn/error.hpp"
#include "mtlearn/svg.hpp"
#include "mtlearn/text.hpp"

namespace mtlearn {

namespace fs = std::filesystem;

namespace {

const LangCode& excluded_source() {
  static const LangCode ro("ro");
  return ro;
}

std::string r_label(const std::optional<double>& r) {
  if (!r) return "Pearson's r = n/a";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "Pearson's r = %.3f", *r);
  return buf;
}

void write_scatter_plot(const fs::path& path, const std::string& title, const std::string& y_label,
                        std::span<const ScatterPoint> points, const std::optional<double>& r) {
  std::map<LangCode, svg::Series> by_source;
  for (const auto& p : points) {
    auto& s = by_source.try_emplace(p.pair.src, svg::Series{"source " + p.pair.src.str(), {}}).first->second;
    s.points.emplace_back(p.auc, p.intelligibility);
  }
  svg::Chart chart{title + " (" + r_label(r) + ")", "AUC", y_label, {}};
  for (auto& [lang, series] : by_source) chart.series.push_back(std::move(series));
  text::write_file_atomic(path, svg::scatter_chart(chart));
}

void write_curve_plots(const fs::path& plots_dir, std::span<const LearningCurve> curves) {
  std::map<LangCode, svg::Chart> by_source;
  for (const auto& c : curves) {
    auto& chart = by_source
                      .try_emplace(c.pair.src, svg::Chart{"Learning curves from " + c.pair.src.str(),
                                                          "% of training data", "relative BLEU", {}})
                      .first->second;
    svg::Series s{c.pair.str(), {}};
    for (const auto& p : c.points) s.points.emplace_back(p.fraction.percent(), p.relative);
    chart.series.push_back(std::move(s));
  }
  for (const auto& [lang, chart] : by_source) {
    text::write_file_atomic(plots_dir / ("curves_" + lang.str() + ".svg"), svg::line_chart(chart));
  }
}

ReportSummary write_auc_bundle(const AucMap& auc, const EmbeddedMatrices& matrices, const fs::path& dir) {
  ReportSummary summary;
  summary.auc = auc;
  text::write_file_atomic(dir / "auc.csv", auc_csv(auc).to_string());

  const auto written = scatter_points(auc, matrices.written);
  const auto spoken = scatter_points(auc, matrices.spoken);
  const auto spoken_kept = filter_by_source(spoken, excluded_source());
  summary.pearson_written = try_pearson(written);
  summary.pearson_spoken = try_pearson(spoken);
  summary.pearson_spoken_excl_ro = try_pearson(spoken_kept);

  text::write_file_atomic(dir / "scatter_written.csv", scatter_csv(written).to_string());
  text::write_file_atomic(dir / "scatter_spoken.csv", scatter_csv(spoken).to_string());
  text::write_file_atomic(dir / "scatter_spoken_excl_ro.csv", scatter_csv(spoken, excluded_source()).to_string());

  const auto plots = dir / "plots";
  write_scatter_plot(plots / "scatter_written.svg", "AUC vs written intelligibility", "written intelligibility",
                     written, summary.pearson_written);
  write_scatter_plot(plots / "scatter_spoken.svg", "AUC vs spoken intelligibility", "spoken intelligibility",
                     spoken, summary.pearson_spoken);
  write_scatter_plot(plots / "scatter_spoken_excl_ro.svg", "AUC vs spoken intelligibility, ro source excluded",
                     "spoken intelligibility", spoken_kept, summary.pearson_spoken_excl_ro);

  text::write_file_atomic(dir / "summary.json", summary.to_json());
  return summary;
}

}  // namespace

std::string ReportSummary::to_json() const {
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json j;
  j["auc"] = nlohmann::ordered_json::object();
  for (const auto& [pair, area] : auc) j["auc"][pair.str()] = area;
  j["pearson_written"] = opt(pearson_written);
  j["pearson_spoken"] = opt(pearson_spoken);
  j["pearson_spoken_excl_ro"] = opt(pearson_spoken_excl_ro);
  return j.dump(2) + "\n";
}

std::vector<LearningCurve> curves_from_ledger(const RunLedger& ledger) {
  if (!ledger.complete()) {
    throw Error(Errc::incomplete_ledger,
                std::to_string(ledger.cells().size() - ledger.count(CellStatus::done)) + " of " +
                    std::to_string(ledger.cells().size()) + " cells are not done");
  }
  std::map<PairId, std::vector<RawPoint>> raw;
  for (const auto& c : ledger.cells()) raw[c.pair].push_back({c.fraction, c.bleu.value_or(0.0)});
  std::vector<LearningCurve> curves;
  for (auto& [pair, points] : raw) curves.push_back(relative_curve(pair, std::move(points)));
  return curves;
}

ReportSummary build_report(const RunLedger& ledger, const EmbeddedMatrices& matrices, const fs::path& output_dir) {
  const auto curves = curves_from_ledger(ledger);
  AucMap auc;
  for (const auto& c : curves) auc[c.pair] = auc_trapezoid(c).auc;
  text::write_file_atomic(output_dir / "curves.csv", curves_csv(curves).to_string());
  write_curve_plots(output_dir / "plots", curves);
  return write_auc_bundle(auc, matrices, output_dir);
}

ReportSummary build_report_from_auc(const AucMap& auc, const EmbeddedMatrices& matrices, const fs::path& output_dir) {
  return write_auc_bundle(auc, matrices, output_dir);
}

}  // namespace mtlearn
