#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace mtlearn {

/// Two ASCII lowercase letters, e.g. "es". "en" is reserved as the pivot.
class LangCode {
 public:
  explicit LangCode(std::string_view code);

  static bool is_valid(std::string_view code) noexcept;

  const std::string& str() const noexcept { return code_; }
  bool is_pivot() const noexcept { return code_ == "en"; }

  friend auto operator<=>(const LangCode&, const LangCode&) = default;

 private:
  std::string code_;
};

/// An ordered (source, target) language pair, rendered as "src-tgt".
struct PairId {
  LangCode src;
  LangCode tgt;

  std::string str() const { return src.str() + "-" + tgt.str(); }
  static PairId parse(std::string_view text);

  friend auto operator<=>(const PairId&, const PairId&) = default;
};

}  // namespace mtlearn
