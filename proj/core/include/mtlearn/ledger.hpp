#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtlearn/fraction.hpp"
#include "mtlearn/lang.hpp"

namespace mtlearn {

enum class CellStatus { pending, done, failed };

const char* to_string(CellStatus status) noexcept;
CellStatus cell_status_from_string(std::string_view text);

/// One (pair, fraction) training run.
struct CellRecord {
  CellRecord(PairId pair_id, Fraction cell_fraction) : pair(std::move(pair_id)), fraction(cell_fraction) {}

  PairId pair;
  Fraction fraction;
  CellStatus status = CellStatus::pending;
  std::optional<double> bleu;
  std::filesystem::path hypothesis_path;  // relative to the output dir
  double wall_time = 0.0;                 // seconds
  std::string key;                        // content hash of the cell's inputs
  std::string error;
};

class RunLedger {
 public:
  RunLedger() = default;
  explicit RunLedger(std::vector<CellRecord> cells);

  const std::vector<CellRecord>& cells() const noexcept { return cells_; }
  std::vector<CellRecord>& cells() noexcept { return cells_; }

  CellRecord* find(const PairId& pair, const Fraction& fraction);
  const CellRecord* find(const PairId& pair, const Fraction& fraction) const;

  std::size_t count(CellStatus status) const;
  bool complete() const { return !cells_.empty() && count(CellStatus::done) == cells_.size(); }

  std::string to_json() const;
  static RunLedger from_json(std::string_view json);

  static std::optional<RunLedger> load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  /// Keeps cells ordered by (src, tgt, fraction).
  void sort();

 private:
  std::vector<CellRecord> cells_;
};

}  // namespace mtlearn
