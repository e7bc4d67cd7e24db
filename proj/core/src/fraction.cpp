#include "mtlearn/fraction.hpp"

#include <cmath>
#include <numeric>

#include "mtlearn/error.hpp"

namespace mtlearn {

namespace {

__extension__ using u128 = unsigned __int128;

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
  std::uint64_t value = 0;
  for (char c : s) {
    std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (UINT64_MAX - digit) / 10) {
      throw Error(Errc::invalid_argument, "fraction out of range: " + std::string(whole));
    }
    value = value * 10 + digit;
  }
  return value;
}

}  // namespace

Fraction::Fraction(std::uint64_t numerator, std::uint64_t denominator) {
  if (denominator == 0) throw Error(Errc::invalid_argument, "fraction with zero denominator");
  std::uint64_t g = std::gcd(numerator, denominator);
  if (g == 0) g = 1;
  num_ = numerator / g;
  den_ = denominator / g;
}

Fraction Fraction::parse(std::string_view text) {
  auto bad = [&] { return Error(Errc::invalid_argument, "invalid fraction '" + std::string(text) + "'"); };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto n = text.substr(0, slash);
    auto d = text.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) throw bad();
    return Fraction(parse_u64(n, text), parse_u64(d, text));
  }
  auto dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) throw bad();
  if (!int_part.empty() && !all_digits(int_part)) throw bad();
  if (!frac_part.empty() && !all_digits(frac_part)) throw bad();
  if (frac_part.size() > 18) throw bad();
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  std::uint64_t whole = int_part.empty() ? 0 : parse_u64(int_part, text);
  std::uint64_t frac = frac_part.empty() ? 0 : parse_u64(frac_part, text);
  if (whole > (UINT64_MAX - frac) / den) throw bad();
  return Fraction(whole * den + frac, den);
}

Fraction Fraction::from_double(double value, std::uint64_t max_denominator) {
  if (!std::isfinite(value) || value < 0) {
    throw Error(Errc::invalid_argument, "fraction must be a finite non-negative number");
  }
  for (std::uint64_t den = 1; den <= max_denominator; ++den) {
    double scaled = value * static_cast<double>(den);
    double rounded = std::round(scaled);
    if (std::abs(scaled - rounded) <= 1e-9 * static_cast<double>(den)) {
      return Fraction(static_cast<std::uint64_t>(rounded), den);
    }
  }
  throw Error(Errc::invalid_argument, "no exact rational for fraction value");
}

double Fraction::to_double() const noexcept {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

double Fraction::percent() const noexcept {
  return 100.0 * static_cast<double>(num_) / static_cast<double>(den_);
}

std::uint64_t Fraction::ceil_mul(std::uint64_t n) const {
  u128 product = static_cast<u128>(n) * num_;
  u128 result = (product + den_ - 1) / den_;
  if (result > UINT64_MAX) throw Error(Errc::invalid_argument, "fraction product overflows");
  return static_cast<std::uint64_t>(result);
}

std::string Fraction::str() const {
  std::uint64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);

  int digits = std::max(twos, fives);
  std::uint64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  std::uint64_t scaled = num_ * (scale / den_);
  std::string out = std::to_string(scaled / scale) + ".";
  if (digits == 0) return out + "0";
  std::string frac = std::to_string(scaled % scale);
  out.append(static_cast<std::size_t>(digits) - frac.size(), '0');
  return out + frac;
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept {
  auto lhs = static_cast<u128>(a.num_) * b.den_;
  auto rhs = static_cast<u128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace mtlearn
