#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtlearn/lang.hpp"

namespace mtlearn {

/// One language's sentences, line-aligned to English pivot sentences.
struct PivotBitext {
  LangCode lang;
  std::vector<std::string> pivot_lines;
  std::vector<std::string> target_lines;

  std::size_t size() const noexcept { return pivot_lines.size(); }
};

struct SentencePair {
  std::string src;
  std::string tgt;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

/// Line numbers of the matched pivot occurrence in each input bitext.
struct PivotOccurrence {
  std::size_t src_line = 0;
  std::size_t tgt_line = 0;

  friend bool operator==(const PivotOccurrence&, const PivotOccurrence&) = default;
};

struct ParallelPair {
  LangCode src;
  LangCode tgt;
  std::vector<SentencePair> pairs;
  std::vector<PivotOccurrence> provenance;

  std::size_t size() const noexcept { return pairs.size(); }
  PairId id() const { return PairId{src, tgt}; }

  /// Rows at `indices`, in the given order.
  ParallelPair select(std::span<const std::size_t> indices) const;
};

struct SplitSpec {
  double train_ratio = 0.8;
  double dev_ratio = 0.1;
  double test_ratio = 0.1;
  std::uint64_t seed = 0;

  /// Each ratio in (0,1), sum 1 within 1e-12. Throws Error{config}.
  void validate() const;
};

/// Row indices into the unsplit ParallelPair, each list ascending.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> dev;
  std::vector<std::size_t> test;
};

struct CorpusSplit {
  ParallelPair train;
  ParallelPair dev;
  ParallelPair test;
  SplitIndices indices;
};

PivotBitext load_pivot_bitext(const std::filesystem::path& pivot_path,
                              const std::filesystem::path& target_path, const LangCode& lang);

/// NFC, then whitespace trimmed and collapsed. Case is preserved: two pivots
/// match only if their normalized forms are byte-identical.
std::string normalize_pivot(std::string_view sentence);

/// Joins two English-aligned bitexts on identical normalized pivots. A pivot
/// occurring k_a times in `a` and k_b times in `b` yields min(k_a, k_b)
/// pairs, pairing occurrences in file order. Output follows `a`'s line
/// order. Empty pivots never match.
ParallelPair build_parallel(const PivotBitext& a, const PivotBitext& b);

/// Seeded random partition. dev and test get floor(ratio * n) rows, train
/// takes the remainder. Requires n >= 10.
SplitIndices split_indices(std::size_t n, const SplitSpec& spec);
CorpusSplit split_pair(const ParallelPair& pair, const SplitSpec& spec);

/// src TAB tgt per line. Throws Error{format} if a sentence contains a tab
/// or newline.
std::string to_tsv(const ParallelPair& pair);
void write_tsv(const std::filesystem::path& path, const ParallelPair& pair);
ParallelPair read_tsv(const std::filesystem::path& path, const LangCode& src, const LangCode& tgt);

/// JSON sidecar: languages, counts, seed, split ratios, plus an opaque
/// cache key.
std::string corpus_sidecar_json(const CorpusSplit& split, const SplitSpec& spec,
                                std::string_view cache_key);

/// Writes train.tsv, dev.tsv, test.tsv and meta.json under `dir`.
void write_corpus_split(const std::filesystem::path& dir, const CorpusSplit& split,
                        const SplitSpec& spec, std::string_view cache_key);

}  // namespace mtlearn
