#include "mtlearn/sampling.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "mtlearn/error.hpp"

namespace mtlearn {

FractionGrid FractionGrid::standard() {
  std::vector<Fraction> fractions;
  for (std::uint64_t tenths = 2; tenths <= 10; ++tenths) fractions.emplace_back(tenths, 10);
  return FractionGrid(std::move(fractions));
}

FractionGrid FractionGrid::custom(std::vector<Fraction> fractions) {
  if (fractions.empty()) throw Error(Errc::config, "fraction grid is empty");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const auto& f = fractions[i];
    if (f.is_zero() || f > Fraction(1, 1)) throw Error(Errc::config, "fraction " + f.str() + " outside (0,1]");
    if (i > 0 && !(fractions[i - 1] < f)) throw Error(Errc::config, "fractions must be strictly increasing");
  }
  if (!fractions.back().is_one()) throw Error(Errc::config, "fraction grid must end at 1.0");
  return FractionGrid(std::move(fractions));
}

bool FractionGrid::is_standard() const {
  return fractions_ == standard().fractions_;
}

FractionGrid fraction_grid() { return FractionGrid::standard(); }

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::invalid_argument, "uniform_below: bound must be positive");
  // Reject the low (2^64 mod bound) outputs so the remaining range is a
  // whole multiple of bound.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

SubsetManifest subsample(std::size_t n_train, Fraction fraction, std::uint64_t seed) {
  if (n_train == 0) throw Error(Errc::invalid_argument, "cannot subsample an empty training set");
  if (fraction.is_zero() || fraction > Fraction(1, 1)) {
    throw Error(Errc::invalid_argument, "fraction " + fraction.str() + " outside (0,1]");
  }
  auto perm = seeded_permutation(n_train, seed);
  auto take = static_cast<std::size_t>(fraction.ceil_mul(n_train));
  SubsetManifest out;
  out.fraction = fraction;
  out.seed = seed;
  out.n_train = n_train;
  out.indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(take));
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

std::string to_json(const SubsetManifest& manifest) {
  nlohmann::ordered_json j;
  if (manifest.pair) {
    j["src"] = manifest.pair->src.str();
    j["tgt"] = manifest.pair->tgt.str();
  } else {
    j["src"] = nullptr;
    j["tgt"] = nullptr;
  }
  j["fraction"] = manifest.fraction.str();
  j["seed"] = manifest.seed;
  j["n_train"] = manifest.n_train;
  j["indices"] = manifest.indices;
  return j.dump() + "\n";
}

SubsetManifest subset_from_json(std::string_view json) {
  try {
    auto j = nlohmann::json::parse(json);
    SubsetManifest out;
    if (!j.at("src").is_null()) {
      out.pair = PairId{LangCode(j.at("src").get<std::string>()), LangCode(j.at("tgt").get<std::string>())};
    }
    const auto& f = j.at("fraction");
    out.fraction = f.is_string() ? Fraction::parse(f.get<std::string>()) : Fraction::from_double(f.get<double>());
    out.seed = j.at("seed").get<std::uint64_t>();
    out.n_train = j.at("n_train").get<std::size_t>();
    out.indices = j.at("indices").get<std::vector<std::size_t>>();
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::format, std::string("malformed subset manifest: ") + e.what());
  }
}

}  // namespace mtlearn
