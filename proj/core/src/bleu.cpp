#include "mtlearn/bleu.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "mtlearn/error.hpp"

namespace mtlearn {

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_len += other.hyp_len;
  ref_len += other.ref_len;
  return *this;
}

namespace {

struct CodePoint {
  UChar32 value;  // negative for an ill-formed byte
  std::string_view bytes;
};

std::vector<CodePoint> code_points(std::string_view text) {
  std::vector<CodePoint> out;
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  int32_t length = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < length) {
    int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    out.push_back({c, text.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(i - start))});
  }
  return out;
}

bool is_word_char(UChar32 c) {
  if (c < 0) return false;
  return (U_GET_GC_MASK(c) & U_GC_L_MASK) != 0 || u_charType(c) == U_DECIMAL_DIGIT_NUMBER;
}

bool is_digit(UChar32 c) { return c >= 0 && u_charType(c) == U_DECIMAL_DIGIT_NUMBER; }

bool is_space(UChar32 c) { return c >= 0 && u_isUWhiteSpace(c); }

using NgramCounts = std::unordered_map<std::string, std::uint32_t>;

// Length-prefixed concatenation; unambiguous for any token contents.
NgramCounts count_ngrams(std::span<const std::string> tokens, std::size_t order) {
  NgramCounts counts;
  if (tokens.size() < order) return counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < order; ++k) {
      key += std::to_string(tokens[i + k].size());
      key.push_back(':');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

std::vector<std::string> tokenize_13a(std::string_view text) {
  auto cps = code_points(text);
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const auto& cp = cps[i];
    if (is_space(cp.value)) {
      flush();
      continue;
    }
    if (is_word_char(cp.value)) {
      current += cp.bytes;
      continue;
    }
    bool numeric_separator = (cp.value == '.' || cp.value == ',') && i > 0 && i + 1 < cps.size() &&
                             is_digit(cps[i - 1].value) && is_digit(cps[i + 1].value);
    if (numeric_separator) {
      current += cp.bytes;
      continue;
    }
    flush();
    tokens.emplace_back(cp.bytes);
  }
  flush();
  return tokens;
}

BleuStats segment_stats(std::span<const std::string> hyp_tokens, std::span<const std::string> ref_tokens) {
  BleuStats stats;
  stats.hyp_len = hyp_tokens.size();
  stats.ref_len = ref_tokens.size();
  for (int n = 1; n <= kMaxNgramOrder; ++n) {
    auto hyp = count_ngrams(hyp_tokens, static_cast<std::size_t>(n));
    auto ref = count_ngrams(ref_tokens, static_cast<std::size_t>(n));
    std::uint64_t matched = 0;
    std::uint64_t total = 0;
    for (const auto& [gram, count] : hyp) {
      total += count;
      auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    stats.matches[n - 1] = matched;
    stats.totals[n - 1] = total;
  }
  return stats;
}

BleuScore score_from_stats(const BleuStats& stats) {
  BleuScore out;
  out.hyp_len = stats.hyp_len;
  out.ref_len = stats.ref_len;
  if (stats.hyp_len == 0) return out;

  out.brevity_penalty = stats.hyp_len > stats.ref_len
                            ? 1.0
                            : std::exp(1.0 - static_cast<double>(stats.ref_len) / static_cast<double>(stats.hyp_len));
  double log_sum = 0.0;
  bool any_zero = false;
  for (int n = 0; n < kMaxNgramOrder; ++n) {
    double p = stats.totals[n] == 0 ? 0.0 : static_cast<double>(stats.matches[n]) / static_cast<double>(stats.totals[n]);
    out.precisions[n] = p;
    if (p == 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  out.score = any_zero ? 0.0 : 100.0 * out.brevity_penalty * std::exp(log_sum / kMaxNgramOrder);
  return out;
}

BleuScore corpus_bleu(std::span<const std::string> hypotheses, std::span<const std::string> references) {
  if (hypotheses.size() != references.size()) {
    throw Error(Errc::length_mismatch, std::to_string(hypotheses.size()) + " hypotheses vs " +
                                           std::to_string(references.size()) + " references");
  }
  if (hypotheses.empty()) throw Error(Errc::invalid_argument, "BLEU of an empty corpus");
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    total += segment_stats(tokenize_13a(hypotheses[i]), tokenize_13a(references[i]));
  }
  return score_from_stats(total);
}

std::string to_json(const BleuScore& score) {
  nlohmann::ordered_json j;
  j["score"] = std::round(score.score * 100.0) / 100.0;
  j["precisions"] = score.precisions;
  j["brevity_penalty"] = score.brevity_penalty;
  j["hyp_len"] = score.hyp_len;
  j["ref_len"] = score.ref_len;
  return j.dump();
}

}  // namespace mtlearn
