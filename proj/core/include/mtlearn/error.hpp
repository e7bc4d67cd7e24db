#pragma once

#include <stdexcept>
#include <string>

namespace mtlearn {

enum class Errc {
  io,
  invalid_utf8,
  line_count_mismatch,
  invalid_argument,
  duplicate_language,
  empty_corpus,
  no_matched_pairs,
  too_few_pairs,
  format,
  external_failure,
  external_timeout,
  mis_sized_output,
  length_mismatch,
  zero_variance,
  missing_full_data_point,
  incomplete_ledger,
  config,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (and the CLI exit-status mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mtlearn
