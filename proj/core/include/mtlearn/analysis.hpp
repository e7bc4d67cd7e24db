#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtlearn/csv.hpp"
#include "mtlearn/fraction.hpp"
#include "mtlearn/lang.hpp"

namespace mtlearn {

struct RawPoint {
  Fraction fraction;
  double bleu = 0.0;
};

struct CurvePoint {
  Fraction fraction;
  double bleu = 0.0;
  double relative = 0.0;
};

/// BLEU normalized by the full-data model's BLEU.
struct LearningCurve {
  PairId pair;
  std::vector<CurvePoint> points;  // strictly increasing fractions, last == 1
};

struct AucScore {
  PairId pair;
  double auc = 0.0;
};

using AucMap = std::map<PairId, double>;

/// Sorts by fraction and divides every BLEU by the BLEU at fraction 1.
/// Throws Error{missing_full_data_point} without a 1.0 point or when its
/// BLEU is zero, and Error{invalid_argument} on duplicate fractions.
LearningCurve relative_curve(const PairId& pair, std::vector<RawPoint> raw);

/// Trapezoidal area with x in percent of data (20..100 on the standard
/// grid) and y the relative BLEU. Nothing is extrapolated below the first
/// point, so a constant curve of 1 on the standard grid has area 80.
AucScore auc_trapezoid(const LearningCurve& curve);

/// Pearson product-moment correlation. Throws Error{length_mismatch},
/// Error{invalid_argument} (fewer than 3 points) or Error{zero_variance}.
double pearson(std::span<const double> xs, std::span<const double> ys);

enum class Medium { written, spoken };

const char* to_string(Medium medium) noexcept;

/// Source-to-target intelligibility scores; no diagonal, not symmetric.
struct IntelligibilityMatrix {
  Medium medium = Medium::written;
  std::map<PairId, double> scores;

  std::optional<double> at(const PairId& pair) const;
};

struct EmbeddedMatrices {
  IntelligibilityMatrix written;
  IntelligibilityMatrix spoken;
};

/// es, pt, it, fr, ro: the row/column order of the reference tables.
const std::vector<LangCode>& romance_languages();

/// Lexical-analysis (written) and cloze-test (spoken) intelligibility for
/// the five Romance languages, compiled in.
const EmbeddedMatrices& embedded_matrices();

/// Published learning-curve areas for the same 20 ordered pairs.
const AucMap& embedded_reference_auc();

struct ScatterPoint {
  PairId pair;
  double auc = 0.0;
  double intelligibility = 0.0;
  Medium medium = Medium::written;
};

/// Pairs present in both `auc` and `matrix`, in PairId order.
std::vector<ScatterPoint> scatter_points(const AucMap& auc, const IntelligibilityMatrix& matrix);

std::vector<ScatterPoint> filter_by_source(std::span<const ScatterPoint> points,
                                           const LangCode& excluded);

/// pearson(auc, intelligibility) over the points.
double pearson(std::span<const ScatterPoint> points);

/// nullopt where pearson() would throw.
std::optional<double> try_pearson(std::span<const ScatterPoint> points);

// CSV layouts:
//   curves:  pair,fraction,bleu,relative
//   auc:     pair,auc
//   scatter: pair,auc,intelligibility,medium,excluded
CsvTable curves_csv(std::span<const LearningCurve> curves);
std::vector<LearningCurve> curves_from_csv(const CsvTable& table);
CsvTable auc_csv(const AucMap& auc);
AucMap auc_from_csv(const CsvTable& table);
CsvTable scatter_csv(std::span<const ScatterPoint> points,
                     std::optional<LangCode> excluded_source = std::nullopt);

/// Text rendering of a matrix keyed by PairId in the layout of the
/// published tables (src rows, tgt columns, "---" on the diagonal).
std::string format_matrix(const std::map<PairId, double>& values,
                          std::span<const LangCode> languages, int decimals);

}  // namespace mtlearn
