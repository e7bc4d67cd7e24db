#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mtlearn/analysis.hpp"
#include "mtlearn/ledger.hpp"

namespace mtlearn {

struct ReportSummary {
  AucMap auc;
  std::optional<double> pearson_written;
  std::optional<double> pearson_spoken;
  std::optional<double> pearson_spoken_excl_ro;

  std::string to_json() const;
};

/// Learning curves for every pair in a complete ledger. Throws
/// Error{incomplete_ledger} if any cell is not done.
std::vector<LearningCurve> curves_from_ledger(const RunLedger& ledger);

/// Writes curves.csv, auc.csv, scatter_{written,spoken,spoken_excl_ro}.csv,
/// summary.json and plots/*.svg under `output_dir`.
ReportSummary build_report(const RunLedger& ledger, const EmbeddedMatrices& matrices,
                           const std::filesystem::path& output_dir);

/// Same bundle from AUC values alone (e.g. the published table); curve
/// files and curve plots are omitted.
ReportSummary build_report_from_auc(const AucMap& auc, const EmbeddedMatrices& matrices,
                                    const std::filesystem::path& output_dir);

}  // namespace mtlearn
