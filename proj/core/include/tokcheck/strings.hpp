#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tokcheck {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;

enum class AlphabetRole { characters, tokens };

/// A finite, nonempty, ordered set of opaque symbol labels.
///
/// Alphabets are cheap to copy (shared immutable storage). Two alphabets are
/// equal when their labels and role agree; a token labelled "th" is never
/// confused with the character string "th" because symbols are indices, not
/// text.
class Alphabet {
 public:
  Alphabet(std::vector<std::string> labels, AlphabetRole role);

  std::size_t size() const noexcept;
  AlphabetRole role() const noexcept;
  const std::string& label(Symbol s) const;
  const std::vector<std::string>& labels() const noexcept;
  std::optional<Symbol> find(std::string_view label) const;

  /// True when every label is exactly one UTF-8 code point.
  bool single_codepoint_labels() const noexcept;

  friend bool operator==(const Alphabet& a, const Alphabet& b) noexcept;

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// A string of symbols drawn from one alphabet. Length 0 is that alphabet's ε.
class Str {
 public:
  explicit Str(Alphabet alphabet);
  Str(Alphabet alphabet, Word symbols);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const Word& symbols() const noexcept { return syms_; }
  std::size_t size() const noexcept { return syms_.size(); }
  bool empty() const noexcept { return syms_.empty(); }
  Symbol operator[](std::size_t i) const { return syms_[i]; }

  Str prefix(std::size_t n) const;
  Str drop(std::size_t n) const;

  friend bool operator==(const Str& a, const Str& b) noexcept;
  /// Canonical order: shorter first, then lexicographic by symbol index.
  /// Only meaningful between strings of the same alphabet.
  friend std::strong_ordering operator<=>(const Str& a, const Str& b) noexcept;

 private:
  Alphabet alphabet_;
  Word syms_;
};

/// Canonical (length, then index-lex) comparison on raw words.
bool canonical_less(const Word& a, const Word& b) noexcept;

Str concat(const Str& a, const Str& b);
Str longest_common_prefix(const Str& a, const Str& b);
std::size_t left_distance(const Str& a, const Str& b);
bool is_prefix(const Str& a, const Str& b);

/// Every string of length <= max_len in canonical order.
std::vector<Str> enumerate_strings(const Alphabet& alpha, std::size_t max_len);

/// sum_{i=0}^{max_len} alphabet_size^i. Throws InvalidArgument on overflow.
std::uint64_t count_strings(std::uint64_t alphabet_size, std::size_t max_len);

enum class SpaceKind {
  truncated,  // Γ^≤N
  points,     // the single symbols of Γ, treated as opaque points
};

/// The finite set a distribution or stochastic map lives on.
class Space {
 public:
  Space(Alphabet alphabet, std::size_t max_len);
  static Space points(Alphabet alphabet);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::size_t max_len() const noexcept { return max_len_; }
  SpaceKind kind() const noexcept { return kind_; }

  bool contains(const Str& s) const noexcept;
  std::vector<Str> members() const;
  std::uint64_t size() const;

  /// Same alphabet and kind; truncations may differ.
  bool compatible_with(const Space& other) const noexcept;

  friend bool operator==(const Space& a, const Space& b) noexcept;

 private:
  Space(Alphabet alphabet, std::size_t max_len, SpaceKind kind);

  Alphabet alphabet_;
  std::size_t max_len_;
  SpaceKind kind_;
};

std::string to_string(const Space& space);

// Text forms. Token sequences are written with '|' between labels. Character
// strings over single-code-point alphabets are written run together
// ("the"), otherwise labels are separated by single spaces. ε is written "ε".
std::string to_string(const Str& s);
Str parse_str(const Alphabet& alphabet, std::string_view text);

}  // namespace tokcheck
