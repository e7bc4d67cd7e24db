#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mtlearn/ledger.hpp"
#include "mtlearn/manifest.hpp"

namespace mtlearn {

struct RunOptions {
  /// Stop dispatching after this many cells have been executed (cells reused
  /// from a previous run do not count). The ledger then has pending cells
  /// that a later run picks up.
  std::optional<std::size_t> max_new_cells;

  /// Called from worker threads, before a cell starts training.
  std::function<void(const PairId&, const Fraction&)> on_cell_start;
};

/// Layout of the experiment output directory.
struct OutputLayout {
  std::filesystem::path root;

  std::filesystem::path corpus_dir(const PairId& pair) const;
  std::filesystem::path subset_path(const PairId& pair, const Fraction& fraction) const;
  std::filesystem::path hypothesis_path(const PairId& pair, const Fraction& fraction) const;
  std::filesystem::path work_dir(const PairId& pair, const Fraction& fraction) const;
  std::filesystem::path ledger_path() const { return root / "ledger.json"; }
  std::filesystem::path scores_path() const { return root / "scores.csv"; }
  std::filesystem::path plots_dir() const { return root / "plots"; }
};

struct CorpusSummary {
  PairId pair;
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
  std::string error;  // empty on success
};

/// Builds (or reuses, when the cache key matches) corpus/<src>-<tgt>/ for
/// every ordered pair in the manifest.
std::vector<CorpusSummary> build_corpora(const ExperimentManifest& manifest);

/// Builds (or reuses) every pair corpus, then trains, decodes and scores
/// every (pair, fraction) cell with at most max_parallel_jobs workers. Cells
/// already done with a matching key are skipped, so re-running resumes.
/// Failed cells are recorded and do not stop the others. The ledger is
/// persisted after every cell, and scores.csv is rewritten at the end.
RunLedger run_experiment(const ExperimentManifest& manifest, const RunOptions& options = {});

}  // namespace mtlearn
