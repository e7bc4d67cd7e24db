#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mtlearn/fraction.hpp"
#include "mtlearn/lang.hpp"

namespace mtlearn {

/// Strictly increasing data fractions in (0, 1], ending at 1.
class FractionGrid {
 public:
  /// 0.2, 0.3, ..., 1.0.
  static FractionGrid standard();

  /// Throws Error{config} unless strictly increasing, all in (0,1], last == 1.
  static FractionGrid custom(std::vector<Fraction> fractions);

  const std::vector<Fraction>& fractions() const noexcept { return fractions_; }
  std::size_t size() const noexcept { return fractions_.size(); }
  bool is_standard() const;

 private:
  explicit FractionGrid(std::vector<Fraction> fractions) : fractions_(std::move(fractions)) {}
  std::vector<Fraction> fractions_;
};

FractionGrid fraction_grid();

struct SubsetManifest {
  std::optional<PairId> pair;
  Fraction fraction;
  std::uint64_t seed = 0;
  std::size_t n_train = 0;
  std::vector<std::size_t> indices;  // ascending
};

/// Uniform integer in [0, bound) from a 64-bit Mersenne Twister by rejection
/// sampling. std::uniform_int_distribution is implementation-defined, so the
/// library never uses it: every platform draws the same sequence.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Fisher-Yates shuffle of 0..n-1 driven by std::mt19937_64(seed) and
/// uniform_below(). The sequence is fixed by the C++ standard.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

/// The first ceil(fraction * n_train) entries of seeded_permutation, sorted.
/// Subsets with the same seed are nested across fractions.
SubsetManifest subsample(std::size_t n_train, Fraction fraction, std::uint64_t seed);

/// {"src","tgt","fraction","seed","n_train","indices"}; src/tgt are null
/// when no pair is attached.
std::string to_json(const SubsetManifest& manifest);
SubsetManifest subset_from_json(std::string_view json);

}  // namespace mtlearn
