#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtlearn/corpus.hpp"
#include "mtlearn/fraction.hpp"
#include "mtlearn/lang.hpp"

namespace mtlearn {

/// Lexical translation probabilities t(target | source), IBM Model 1 style.
/// Immutable once built; safe to share across threads.
class LexicalTable {
 public:
  using Distribution = std::map<std::string, double, std::less<>>;
  using Entries = std::map<std::string, Distribution, std::less<>>;

  /// Source key of the empty word. Whitespace tokenization never yields an
  /// empty token, so it cannot collide with a real word.
  static constexpr std::string_view kNull{};

  LexicalTable() = default;

  /// Throws Error{invalid_argument} if a distribution is empty, has a
  /// probability outside [0,1], or does not sum to 1 within 1e-9.
  explicit LexicalTable(Entries entries);

  const Entries& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const Distribution* find(std::string_view source) const;
  double probability(std::string_view source, std::string_view target) const;

  /// argmax_target t(target | source); ties go to the lexicographically
  /// smallest target. Null for unknown sources.
  const std::string* best(std::string_view source) const;

  std::string to_json() const;

 private:
  Entries entries_;
  std::map<std::string, std::string, std::less<>> best_;
};

struct Model1Result {
  LexicalTable table;
  /// Corpus log-likelihood under the initial table, then after each EM
  /// iteration (iterations + 1 entries).
  std::vector<double> log_likelihood;
  /// Pairs dropped because one side had no tokens.
  std::size_t skipped_pairs = 0;
};

/// IBM Model 1 trained by EM. A NULL source word is prepended to every
/// source sentence; t is initialized uniform over co-occurring targets.
/// Throws Error{empty_corpus} when no usable pair remains and
/// Error{invalid_argument} when iterations < 1.
Model1Result train_model1(std::span<const SentencePair> pairs, int iterations);

/// Word-by-word argmax translation in source order. Unknown tokens are
/// copied through verbatim.
std::string decode(const LexicalTable& table, std::string_view source_sentence);
std::vector<std::string> decode_all(const LexicalTable& table, std::span<const std::string> sources);

enum class TrainerKind { builtin_em, external };

struct TrainerSpec {
  TrainerKind kind = TrainerKind::builtin_em;
  int em_iterations = 10;
  /// Must contain {test_src} and {hyp_out}; {train} and {workdir} are
  /// optional (an identity adapter never reads the training data).
  std::string command_template;
  std::filesystem::path workdir;
  std::chrono::seconds timeout = std::chrono::hours(24);

  /// Throws Error{config}.
  void validate() const;
};

struct HypothesisSet {
  std::optional<PairId> pair;
  std::optional<Fraction> fraction;
  std::vector<std::string> hypotheses;
};

/// Replaces each placeholder with the shell-quoted path.
std::string expand_command(const std::string& command_template,
                           const std::filesystem::path& train_path,
                           const std::filesystem::path& test_src_path,
                           const std::filesystem::path& hyp_out_path,
                           const std::filesystem::path& workdir = {});

/// Runs an external trainer/decoder and loads its hypotheses. Throws
/// Error{external_failure} (nonzero exit, output captured in the message),
/// Error{external_timeout}, or Error{mis_sized_output}.
HypothesisSet run_external(const TrainerSpec& spec, const std::filesystem::path& train_path,
                           const std::filesystem::path& test_src_path,
                           const std::filesystem::path& hyp_out_path);

}  // namespace mtlearn
