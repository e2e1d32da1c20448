#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tokcheck {

// Every failure raised by the library carries one of these codes. The name
// returned by to_string() is the prefix of Error::what().
enum class Errc {
  alphabet_mismatch,
  out_of_truncation,
  space_mismatch,
  empty_sample,
  out_of_domain,
  proc_undefined,
  decoder_not_eligible,
  encoder_not_deterministic,
  not_deterministic,
  truncation_overflow,
  no_matching_prefix,
  missing_base_character,
  no_segmentation,
  vocab_not_open,
  undefined_transition,
  invalid_argument,
  parse_error,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace tokcheck
