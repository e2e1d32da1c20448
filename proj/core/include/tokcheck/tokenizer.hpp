#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tokcheck/dist.hpp"
#include "tokcheck/stochmap.hpp"

namespace tokcheck {

/// An encoder/decoder pair: τ from character strings to token sequences and κ
/// back. The encoder's codomain must be the decoder's domain, and the
/// decoder's codomain must contain the encoder's domain.
class Tokenizer {
 public:
  Tokenizer(StochMap encoder, StochMap decoder);

  const StochMap& encoder() const noexcept { return encoder_; }
  const StochMap& decoder() const noexcept { return decoder_; }
  const Space& text_space() const noexcept { return encoder_.domain(); }
  const Space& token_space() const noexcept { return encoder_.codomain(); }

 private:
  StochMap encoder_;
  StochMap decoder_;
};

struct ConsistencyWitness {
  Str text;
  Rational round_trip_mass;  // (κτp)(text)
  Rational reference_mass;   // p(text)
};

/// κτp = p, exactly. Witness is the first string (canonical order) where the
/// two distributions disagree.
Verdict<ConsistencyWitness> is_consistent_wrt(const Tokenizer& t, const Dist& p);

/// κτ = id on the encoder's domain. Witness is the first string whose round
/// trip is not a point mass on itself.
Verdict<Str> is_exact(const Tokenizer& t);

struct ConsistencyProbe {
  bool exact = false;
  bool all_consistent = true;       // every probed distribution was consistent
  std::size_t distributions_checked = 0;
  std::optional<Dist> counterexample;  // a point mass when not exact

  /// Exact iff consistent for everything probed.
  bool agrees() const noexcept { return exact == all_consistent; }
};

/// Exact tokenizers are checked against every point mass on the text space
/// plus `trials` random distributions; inexact ones yield the point mass at
/// the first non-identity row as an inconsistent distribution.
ConsistencyProbe exact_iff_all_consistent_probe(const Tokenizer& t, std::size_t trials, std::uint64_t seed);

enum class Status { holds, fails, not_applicable };
std::string_view to_string(Status s) noexcept;

template <class Witness>
struct Property {
  Status status = Status::not_applicable;
  std::optional<Witness> witness;
  std::string note;
};

struct SplitWitness {
  Str left;
  Str right;
};

struct PrefixWitness {
  Str prefix;
  Str whole;
};

struct DecoderProperties {
  Property<SplitWitness> multiplicative;
  Property<Str> trivial_kernel;
  Property<PrefixWitness> prefix_monotone;

  bool preimage_eligible() const noexcept {
    return multiplicative.status == Status::holds && trivial_kernel.status == Status::holds;
  }
};

/// Multiplicativity over all splits δ'|δ'' with |δ'| + |δ''| within the domain
/// truncation, trivial kernel, and prefix monotonicity. All three need a
/// deterministic decoder over a truncated (non-opaque) space and are
/// not_applicable otherwise.
DecoderProperties decoder_properties(const StochMap& decoder);

struct ClassificationReport {
  Verdict<Str> deterministic_encoder;
  Verdict<Str> deterministic_decoder;
  Verdict<Str> decoder_deterministic_on_image;
  Verdict<Str> bijective;  // τ-deterministic and exact
  Property<SplitWitness> multiplicative_decoder;
  Property<Str> trivial_kernel;
  Property<PrefixWitness> prefix_monotone;
};

ClassificationReport classify(const Tokenizer& t);

/// All token sequences over `tokens` whose spellings concatenate to `text`,
/// found by depth-first search that only follows spellings matching the
/// remaining suffix. Result in canonical order. Spellings must be nonempty.
std::vector<Str> spelling_segmentations(const Alphabet& tokens, const std::vector<Word>& spellings,
                                        const Str& text);

/// Reusable κ⁻¹ enumerator; construction validates the decoder once.
class PreimageEnumerator {
 public:
  /// Throws DecoderNotEligible unless κ is deterministic, multiplicative and
  /// has a trivial kernel.
  explicit PreimageEnumerator(const Tokenizer& t);

  std::vector<Str> operator()(const Str& text) const;
  const std::vector<Word>& spellings() const noexcept { return spellings_; }
  const Alphabet& tokens() const noexcept { return tokens_; }

 private:
  Alphabet tokens_;
  Alphabet characters_;
  std::vector<Word> spellings_;
};

std::vector<Str> preimages(const Tokenizer& t, const Str& text);

/// Σ_{i=1}^{n} vocab_size^i; throws InvalidArgument on 64-bit overflow.
std::uint64_t preimage_bound(std::size_t n, std::uint64_t vocab_size);

/// Σ over κ⁻¹(text) of q(δ).
Rational marginalize(const Tokenizer& t, const Dist& q, const Str& text);
Rational marginalize(const PreimageEnumerator& pre, const Dist& q, const Str& text);

/// Mass q places outside the image of a deterministic encoder.
Rational spurious_ambiguity_mass(const Tokenizer& t, const Dist& q);

struct VariationProbe {
  std::size_t k = 0;
  std::size_t bound = 0;  // C_k
  std::optional<std::pair<Str, Str>> witness;
};

/// max ‖f(γ), f(γ')‖ over all domain pairs with ‖γ, γ'‖ <= k, by exhaustive
/// scan. Throws NotDeterministic.
VariationProbe bounded_variation_probe(const StochMap& f, std::size_t k);
/// Probes for every k in [0, max_k] in one scan.
std::vector<VariationProbe> variation_profile(const StochMap& f, std::size_t max_k);

}  // namespace tokcheck
