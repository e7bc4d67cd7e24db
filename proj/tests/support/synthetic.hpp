#pragma once

// Synthetic "language families" built from word-substitution ciphers over a
// shared latent vocabulary. Each language renders latent word w either in a
// family-wide shared surface form or in a language-private one; language k
// shares word w iff u_w < share[k] for one uniform draw u_w per word. Two
// languages therefore agree on exactly the words with u_w < min(share_a,
// share_b), and that vocabulary overlap plays the role of intelligibility.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "mtlearn/corpus.hpp"
#include "mtlearn/lang.hpp"

namespace mtlearn::testing {

struct CipherFamilyOptions {
  std::vector<std::string> languages{"aa", "ab", "ac", "ad", "ae"};
  std::vector<double> share{0.1, 0.3, 0.5, 0.7, 0.9};
  std::size_t vocabulary = 1500;
  std::size_t sentences = 2400;
  std::size_t min_length = 5;
  std::size_t max_length = 12;
  double zipf_exponent = 1.0;
  double keep_probability = 0.9;  // each language keeps a sentence with this probability
  std::uint64_t seed = 1;
};

struct CipherFamily {
  std::vector<LangCode> languages;
  /// |shared words of a and b| / vocabulary size.
  std::map<PairId, double> overlap;
  std::map<LangCode, PivotBitext> bitexts;
};

CipherFamily make_cipher_family(const CipherFamilyOptions& options);

/// Writes <lang>.en (pivot) and <lang>.txt (target) per language and a
/// manifest.json using the builtin trainer; returns the manifest path.
std::filesystem::path write_cipher_experiment(const CipherFamily& family, const std::filesystem::path& dir,
                                              const std::string& output_dir = "out", std::size_t jobs = 4,
                                              std::uint64_t seed = 11);

/// Parallel sentences for one ordered pair, without pivoting.
std::vector<SentencePair> cipher_pairs(const CipherFamily& family, const LangCode& src, const LangCode& tgt);

}  // namespace mtlearn::testing
