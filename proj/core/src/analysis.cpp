#include "mtlearn/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "mtlearn/error.hpp"
#include "mtlearn/text.hpp"

namespace mtlearn {

LearningCurve relative_curve(const PairId& pair, std::vector<RawPoint> raw) {
  std::sort(raw.begin(), raw.end(), [](const RawPoint& a, const RawPoint& b) { return a.fraction < b.fraction; });
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].fraction == raw[i - 1].fraction) {
      throw Error(Errc::invalid_argument, "duplicate fraction " + raw[i].fraction.str() + " in " + pair.str());
    }
  }
  if (raw.empty() || !raw.back().fraction.is_one()) {
    throw Error(Errc::missing_full_data_point, "curve for " + pair.str() + " has no fraction 1.0 point");
  }
  for (const auto& p : raw) {
    if (p.fraction.is_zero() || p.fraction > Fraction(1, 1)) {
      throw Error(Errc::invalid_argument, "fraction " + p.fraction.str() + " outside (0,1]");
    }
    if (!(p.bleu >= 0.0 && p.bleu <= 100.0)) {
      throw Error(Errc::invalid_argument, "BLEU outside [0,100] in " + pair.str());
    }
  }
  const double full = raw.back().bleu;
  if (!(full > 0.0)) {
    throw Error(Errc::missing_full_data_point, "full-data BLEU for " + pair.str() + " is zero");
  }
  LearningCurve curve{pair, {}};
  curve.points.reserve(raw.size());
  for (const auto& p : raw) curve.points.push_back({p.fraction, p.bleu, p.bleu / full});
  return curve;
}

AucScore auc_trapezoid(const LearningCurve& curve) {
  const auto& pts = curve.points;
  if (pts.size() < 2) {
    throw Error(Errc::invalid_argument, "AUC needs at least 2 points, " + curve.pair.str() + " has " +
                                            std::to_string(pts.size()));
  }
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double width = pts[i + 1].fraction.percent() - pts[i].fraction.percent();
    area += width * (pts[i].relative + pts[i + 1].relative) / 2.0;
  }
  return {curve.pair, area};
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error(Errc::length_mismatch, "pearson: " + std::to_string(xs.size()) + " vs " + std::to_string(ys.size()));
  }
  if (xs.size() < 3) throw Error(Errc::invalid_argument, "pearson needs at least 3 points");
  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mean_x;
    double dy = ys[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw Error(Errc::zero_variance, "pearson: an input has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

const char* to_string(Medium medium) noexcept {
  return medium == Medium::written ? "written" : "spoken";
}

std::optional<double> IntelligibilityMatrix::at(const PairId& pair) const {
  auto it = scores.find(pair);
  if (it == scores.end()) return std::nullopt;
  return it->second;
}

std::vector<ScatterPoint> scatter_points(const AucMap& auc, const IntelligibilityMatrix& matrix) {
  std::vector<ScatterPoint> out;
  for (const auto& [pair, area] : auc) {
    if (auto score = matrix.at(pair)) out.push_back({pair, area, *score, matrix.medium});
  }
  return out;
}

std::vector<ScatterPoint> filter_by_source(std::span<const ScatterPoint> points, const LangCode& excluded) {
  std::vector<ScatterPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [&](const ScatterPoint& p) { return p.pair.src != excluded; });
  return out;
}

double pearson(std::span<const ScatterPoint> points) {
  std::vector<double> xs, ys;
  for (const auto& p : points) {
    xs.push_back(p.auc);
    ys.push_back(p.intelligibility);
  }
  return pearson(xs, ys);
}

std::optional<double> try_pearson(std::span<const ScatterPoint> points) {
  try {
    return pearson(points);
  } catch (const Error&) {
    return std::nullopt;
  }
}

CsvTable curves_csv(std::span<const LearningCurve> curves) {
  CsvTable t{{"pair", "fraction", "bleu", "relative"}, {}};
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      t.rows.push_back({c.pair.str(), p.fraction.str(), text::format_real(p.bleu), text::format_real(p.relative)});
    }
  }
  return t;
}

std::vector<LearningCurve> curves_from_csv(const CsvTable& table) {
  const auto pair_col = table.column("pair");
  const auto frac_col = table.column("fraction");
  const bool has_bleu = table.has_column("bleu");
  const bool has_relative = table.has_column("relative");
  if (!has_bleu && !has_relative) throw Error(Errc::format, "curve CSV needs a bleu or relative column");

  std::map<PairId, std::vector<CurvePoint>> grouped;
  for (const auto& row : table.rows) {
    CurvePoint p;
    p.fraction = Fraction::parse(row[frac_col]);
    try {
      if (has_bleu) p.bleu = std::stod(row[table.column("bleu")]);
      if (has_relative) p.relative = std::stod(row[table.column("relative")]);
    } catch (const std::exception&) {
      throw Error(Errc::format, "non-numeric value in curve CSV");
    }
    grouped[PairId::parse(row[pair_col])].push_back(p);
  }

  std::vector<LearningCurve> curves;
  for (auto& [pair, points] : grouped) {
    if (!has_relative) {
      std::vector<RawPoint> raw;
      for (const auto& p : points) raw.push_back({p.fraction, p.bleu});
      curves.push_back(relative_curve(pair, std::move(raw)));
      continue;
    }
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.fraction < b.fraction; });
    curves.push_back({pair, std::move(points)});
  }
  return curves;
}

CsvTable auc_csv(const AucMap& auc) {
  CsvTable t{{"pair", "auc"}, {}};
  for (const auto& [pair, area] : auc) t.rows.push_back({pair.str(), text::format_real(area)});
  return t;
}

AucMap auc_from_csv(const CsvTable& table) {
  const auto pair_col = table.column("pair");
  const auto auc_col = table.column("auc");
  AucMap out;
  for (const auto& row : table.rows) {
    try {
      out[PairId::parse(row[pair_col])] = std::stod(row[auc_col]);
    } catch (const std::invalid_argument&) {
      throw Error(Errc::format, "non-numeric AUC '" + row[auc_col] + "'");
    }
  }
  return out;
}

CsvTable scatter_csv(std::span<const ScatterPoint> points, std::optional<LangCode> excluded_source) {
  CsvTable t{{"pair", "auc", "intelligibility", "medium", "excluded"}, {}};
  for (const auto& p : points) {
    bool excluded = excluded_source && p.pair.src == *excluded_source;
    t.rows.push_back({p.pair.str(), text::format_real(p.auc), text::format_real(p.intelligibility),
                      to_string(p.medium), excluded ? "1" : "0"});
  }
  return t;
}

std::string format_matrix(const std::map<PairId, double>& values, std::span<const LangCode> languages,
                          int decimals) {
  std::ostringstream out;
  out << std::setw(8) << std::left << "src\\tgt";
  for (const auto& l : languages) out << std::setw(8) << std::right << l.str();
  out << "\n";
  for (const auto& src : languages) {
    out << std::setw(8) << std::left << src.str();
    for (const auto& tgt : languages) {
      out << std::setw(8) << std::right;
      auto it = values.find(PairId{src, tgt});
      if (src == tgt || it == values.end()) {
        out << "---";
      } else {
        std::ostringstream cell;
        cell << std::fixed << std::setprecision(decimals) << it->second;
        out << cell.str();
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace mtlearn
