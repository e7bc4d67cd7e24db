#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mtlearn {

/// Exact non-negative rational, always kept in lowest terms.
///
/// Data fractions are rationals rather than doubles so that subset sizes
/// (ceil(f * n)) and curve x-coordinates (percent) come out exact: 0.7 * 10
/// is 7.000000000000001 in binary floating point, which would round a
/// ceiling up by one.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::uint64_t numerator, std::uint64_t denominator);

  /// Accepts "1", "0.25", ".5", "3/4". Throws Error{invalid_argument}.
  static Fraction parse(std::string_view text);

  /// Best rational approximation with denominator <= max_denominator;
  /// throws if none lies within 1e-9 of `value`.
  static Fraction from_double(double value, std::uint64_t max_denominator = 1'000'000);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }

  double to_double() const noexcept;
  double percent() const noexcept;

  /// ceil(this * n), computed in integers.
  std::uint64_t ceil_mul(std::uint64_t n) const;

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_one() const noexcept { return num_ == den_; }

  /// Shortest decimal form ("0.2", "1.0", "0.125"); "n/d" for
  /// non-terminating expansions.
  std::string str() const;

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace mtlearn
