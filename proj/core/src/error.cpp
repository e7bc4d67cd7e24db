#include "mtlearn/error.hpp"

namespace mtlearn {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::io: return "io";
    case Errc::invalid_utf8: return "invalid-utf8";
    case Errc::line_count_mismatch: return "line-count-mismatch";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::duplicate_language: return "duplicate-language";
    case Errc::empty_corpus: return "empty-corpus";
    case Errc::no_matched_pairs: return "no-matched-pairs";
    case Errc::too_few_pairs: return "too-few-pairs";
    case Errc::format: return "format";
    case Errc::external_failure: return "external-trainer-failure";
    case Errc::external_timeout: return "external-trainer-timeout";
    case Errc::mis_sized_output: return "mis-sized-output";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::zero_variance: return "zero-variance";
    case Errc::missing_full_data_point: return "missing-full-data-point";
    case Errc::incomplete_ledger: return "incomplete-ledger";
    case Errc::config: return "config";
  }
  return "unknown";
}

}  // namespace mtlearn
