#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mtlearn/bleu.hpp"
#include "mtlearn/error.hpp"
#include "mtlearn/text.hpp"
#include "oracles.hpp"

namespace mtlearn {
namespace {

using Tokens = std::vector<std::string>;

TEST(Tokenize13a, Examples) {
  EXPECT_EQ(tokenize_13a("Hello, world!"), (Tokens{"Hello", ",", "world", "!"}));
  EXPECT_EQ(tokenize_13a("3.14"), (Tokens{"3.14"}));
  EXPECT_EQ(tokenize_13a("end."), (Tokens{"end", "."}));
  EXPECT_EQ(tokenize_13a("1,000 and 2."), (Tokens{"1,000", "and", "2", "."}));
  EXPECT_EQ(tokenize_13a("  été   à\tPâques "), (Tokens{"été", "à", "Pâques"}));
  EXPECT_EQ(tokenize_13a(""), Tokens{});
}

TEST(CorpusBleu, IdentityScoresHundred) {
  std::vector<std::string> refs{"the cat sat on the mat", "a b c d e", "x y"};
  auto s = corpus_bleu(refs, refs);
  EXPECT_EQ(s.score, 100.0);
  for (double p : s.precisions) EXPECT_EQ(p, 1.0);
  EXPECT_EQ(s.brevity_penalty, 1.0);
}

TEST(CorpusBleu, ClippedRepetitionScoresZero) {
  std::vector<std::string> hyp{"the the the"}, ref{"the cat"};
  auto s = corpus_bleu(hyp, ref);
  EXPECT_DOUBLE_EQ(s.precisions[0], 1.0 / 3.0);
  EXPECT_EQ(s.precisions[1], 0.0);
  EXPECT_EQ(s.score, 0.0);
}

// hyp "the cat sat on mat" vs ref "the cat sat on the mat":
//   1-grams: the cat sat on mat, all in ref              -> 5/5
//   2-grams: the-cat cat-sat sat-on on-mat; on-mat absent -> 3/4
//   3-grams: the-cat-sat cat-sat-on sat-on-mat             -> 2/3
//   4-grams: the-cat-sat-on cat-sat-on-mat                 -> 1/2
//   BP = exp(1 - 6/5)
TEST(CorpusBleu, HandDerivedExample) {
  Tokens hyp{"the", "cat", "sat", "on", "mat"};
  Tokens ref{"the", "cat", "sat", "on", "the", "mat"};
  const std::size_t want_matches[] = {5, 3, 2, 1};
  const std::size_t want_totals[] = {5, 4, 3, 2};
  for (std::size_t n = 1; n <= 4; ++n) {
    auto c = testing::brute_force_ngrams(hyp, ref, n);
    EXPECT_EQ(c.matches, want_matches[n - 1]);
    EXPECT_EQ(c.total, want_totals[n - 1]);
  }
  double expected = 100.0 * std::exp(-0.2) * std::pow(1.0 * 0.75 * (2.0 / 3.0) * 0.5, 0.25);

  std::vector<std::string> h{"the cat sat on mat"}, r{"the cat sat on the mat"};
  auto s = corpus_bleu(h, r);
  EXPECT_DOUBLE_EQ(s.precisions[0], 1.0);
  EXPECT_DOUBLE_EQ(s.precisions[1], 0.75);
  EXPECT_DOUBLE_EQ(s.precisions[2], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.precisions[3], 0.5);
  EXPECT_NEAR(s.brevity_penalty, std::exp(-0.2), 1e-15);
  EXPECT_NEAR(s.score, expected, 1e-9);
  EXPECT_NEAR(s.score, 57.89, 0.01);
}

TEST(CorpusBleu, ClippingBoundsRepeatedUnigram) {
  for (int k = 1; k <= 6; ++k) {
    Tokens hyp(k, "cat");
    Tokens ref{"the", "cat", "and", "the", "cat"};
    auto stats = segment_stats(hyp, ref);
    EXPECT_LE(stats.matches[0], 2u);
    EXPECT_EQ(stats.matches[0], std::min<std::uint64_t>(k, 2));
  }
}

TEST(CorpusBleu, OneSegmentCorpusEqualsSegmentComputation) {
  std::string h = "a quick brown fox jumps over", r = "the quick brown fox jumps over it";
  auto corpus = corpus_bleu(std::vector<std::string>{h}, std::vector<std::string>{r});
  auto ht = tokenize_13a(h), rt = tokenize_13a(r);
  auto direct = score_from_stats(segment_stats(ht, rt));
  EXPECT_EQ(corpus.score, direct.score);
}

std::vector<std::string> random_sentences(std::mt19937_64& rng, std::size_t n) {
  static const char* words[] = {"the", "cat", "dog", "sat", "on", "a", "mat", "ran", "to", "it"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> toks;
    auto len = 3 + rng() % 10;
    for (std::size_t k = 0; k < len; ++k) toks.push_back(words[rng() % 10]);
    out.push_back(text::join(toks, " "));
  }
  return out;
}

TEST(CorpusBleu, PermutationStable) {
  std::mt19937_64 rng(5);
  auto hyp = random_sentences(rng, 30);
  auto ref = random_sentences(rng, 30);
  auto base = corpus_bleu(hyp, ref).score;
  std::vector<std::size_t> order(30);
  for (std::size_t i = 0; i < 30; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::string> h2, r2;
  for (auto i : order) {
    h2.push_back(hyp[i]);
    r2.push_back(ref[i]);
  }
  EXPECT_EQ(corpus_bleu(h2, r2).score, base);
}

TEST(CorpusBleu, MatchesBruteForceOracleOnRandomCorpus) {
  std::mt19937_64 rng(17);
  auto hyp = random_sentences(rng, 50);
  auto ref = random_sentences(rng, 50);
  std::size_t matches[4] = {}, totals[4] = {};
  for (std::size_t i = 0; i < 50; ++i) {
    auto h = text::split_ascii_whitespace(hyp[i]);
    auto r = text::split_ascii_whitespace(ref[i]);
    for (std::size_t n = 1; n <= 4; ++n) {
      auto c = testing::brute_force_ngrams(h, r, n);
      matches[n - 1] += c.matches;
      totals[n - 1] += c.total;
    }
  }
  auto s = corpus_bleu(hyp, ref);
  for (std::size_t n = 0; n < 4; ++n)
    EXPECT_EQ(s.precisions[n], static_cast<double>(matches[n]) / static_cast<double>(totals[n])) << "order " << n + 1;
}

TEST(CorpusBleu, ScoreInRangeAndHundredOnlyForIdentity) {
  std::mt19937_64 rng(23);
  auto hyp = random_sentences(rng, 20);
  auto ref = hyp;
  ref[3] += " extra";
  auto s = corpus_bleu(hyp, ref);
  EXPECT_LT(s.score, 100.0);
  EXPECT_GT(s.score, 0.0);
}

TEST(CorpusBleu, Errors) {
  std::vector<std::string> one{"a"}, two{"a", "b"}, none;
  EXPECT_THROW(corpus_bleu(one, two), Error);
  EXPECT_THROW(corpus_bleu(none, none), Error);
  auto empty_hyp = corpus_bleu(std::vector<std::string>{""}, std::vector<std::string>{"a b c d"});
  EXPECT_EQ(empty_hyp.score, 0.0);
}

}  // namespace
}  // namespace mtlearn
