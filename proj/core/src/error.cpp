#include "tokcheck/error.hpp"

namespace tokcheck {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::alphabet_mismatch: return "AlphabetMismatch";
    case Errc::out_of_truncation: return "OutOfTruncation";
    case Errc::space_mismatch: return "SpaceMismatch";
    case Errc::empty_sample: return "EmptySample";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::proc_undefined: return "ProcUndefinedAt";
    case Errc::decoder_not_eligible: return "DecoderNotEligible";
    case Errc::encoder_not_deterministic: return "EncoderNotDeterministic";
    case Errc::not_deterministic: return "NotDeterministic";
    case Errc::truncation_overflow: return "TruncationOverflow";
    case Errc::no_matching_prefix: return "NoMatchingPrefix";
    case Errc::missing_base_character: return "MissingBaseCharacter";
    case Errc::no_segmentation: return "NoSegmentation";
    case Errc::vocab_not_open: return "VocabNotOpen";
    case Errc::undefined_transition: return "UndefinedTransition";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace tokcheck
