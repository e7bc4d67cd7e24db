#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtlearn {

inline constexpr int kMaxNgramOrder = 4;

/// Sufficient statistics for corpus BLEU. Summing these over segments and
/// only then dividing is what makes the score corpus-level.
struct BleuStats {
  std::array<std::uint64_t, kMaxNgramOrder> matches{};
  std::array<std::uint64_t, kMaxNgramOrder> totals{};
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;

  BleuStats& operator+=(const BleuStats& other);
  friend bool operator==(const BleuStats&, const BleuStats&) = default;
};

struct BleuScore {
  double score = 0.0;  // [0, 100], full precision
  std::array<double, kMaxNgramOrder> precisions{};
  double brevity_penalty = 0.0;
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;
};

/// 13a-style tokenization: whitespace is normalized, then every character
/// that is not a letter (L*) or decimal digit (Nd) becomes its own token,
/// except '.' and ',' with a digit on both sides. Case is preserved.
std::vector<std::string> tokenize_13a(std::string_view text);

/// Clipped n-gram matches for one tokenized segment against one reference.
BleuStats segment_stats(std::span<const std::string> hyp_tokens,
                        std::span<const std::string> ref_tokens);

/// Uniform-weight 4-gram BLEU without smoothing: any zero precision (or an
/// order with no hypothesis n-grams at all) gives 0.
BleuScore score_from_stats(const BleuStats& stats);

/// Throws Error{length_mismatch} or Error{invalid_argument} for empty input.
BleuScore corpus_bleu(std::span<const std::string> hypotheses,
                      std::span<const std::string> references);

/// All fields; the score is rounded to two decimals.
std::string to_json(const BleuScore& score);

}  // namespace mtlearn
