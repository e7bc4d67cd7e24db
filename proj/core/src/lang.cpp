#include "mtlearn/lang.hpp"

#include "mtlearn/error.hpp"

namespace mtlearn {

LangCode::LangCode(std::string_view code) : code_(code) {
  if (!is_valid(code)) {
    throw Error(Errc::invalid_argument,
                "invalid language code '" + std::string(code) + "' (need 2 lowercase ASCII letters)");
  }
}

bool LangCode::is_valid(std::string_view code) noexcept {
  return code.size() == 2 && code[0] >= 'a' && code[0] <= 'z' && code[1] >= 'a' && code[1] <= 'z';
}

PairId PairId::parse(std::string_view text) {
  auto dash = text.find('-');
  if (dash == std::string_view::npos) {
    throw Error(Errc::invalid_argument, "invalid pair id '" + std::string(text) + "' (want src-tgt)");
  }
  return PairId{LangCode(text.substr(0, dash)), LangCode(text.substr(dash + 1))};
}

}  // namespace mtlearn
