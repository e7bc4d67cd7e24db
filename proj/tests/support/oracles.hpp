#pragma once

// Independent reference computations used only by tests. None of these
// call into the code paths they are used to check.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace mtlearn::testing {

/// Clipped n-gram matches and hypothesis n-gram totals for one order, by
/// direct enumeration: every hypothesis n-gram position is compared with
/// every other hypothesis and reference position.
struct NgramCounts {
  std::size_t matches = 0;
  std::size_t total = 0;
};
NgramCounts brute_force_ngrams(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                               std::size_t order);

/// Occurrence-order pivot matching by a quadratic scan: for each line of a,
/// take the first unused line of b with an equal key. Returns (a_line, b_line).
std::vector<std::pair<std::size_t, std::size_t>> greedy_pivot_match(const std::vector<std::string>& a_keys,
                                                                    const std::vector<std::string>& b_keys);

/// Exhaustive: the maximum number of disjoint equal-key (i, j) matchings.
/// Exponential; only for tiny inputs.
std::size_t max_matching_brute_force(const std::vector<std::string>& a_keys,
                                     const std::vector<std::string>& b_keys);

/// Area under the piecewise-linear interpolant through (xs, ys), by a
/// midpoint sum with `steps` subintervals per segment.
double fine_integral(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t steps = 20000);

/// Pearson r via the raw-sums formula (n*Sxy - Sx*Sy) / sqrt(...).
double pearson_raw_sums(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace mtlearn::testing
