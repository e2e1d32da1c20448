#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "tokcheck/encoders.hpp"
#include "tokcheck/stochmap.hpp"
#include "tokcheck/tokenizer.hpp"

namespace tokcheck::testing {

inline Alphabet chars(std::vector<std::string> labels) { return Alphabet(std::move(labels), AlphabetRole::characters); }
inline Alphabet toks(std::vector<std::string> labels) { return Alphabet(std::move(labels), AlphabetRole::tokens); }

inline Str S(const Alphabet& a, std::string_view text) { return parse_str(a, text); }

inline Dist dist(const Space& space, std::vector<std::pair<std::string, Rational>> masses) {
  std::vector<std::pair<Str, Rational>> m;
  for (auto& [s, r] : masses) m.emplace_back(parse_str(space.alphabet(), s), r);
  return Dist(space, m);
}

inline StochMap det_table(const Space& dom, const Space& cod, const std::vector<std::pair<std::string, std::string>>& rows) {
  StochMap::Rows r;
  for (const auto& [x, y] : rows) r.emplace(parse_str(dom.alphabet(), x), point_mass(parse_str(cod.alphabet(), y), cod));
  return StochMap(dom, cod, std::move(r));
}

// Three opaque texts, three opaque tokens.
struct ThreePoint {
  Space sigma = Space::points(chars({"σ₁", "σ₂", "σ₃"}));
  Space delta = Space::points(toks({"δ₁", "δ₂", "δ₃"}));
  Tokenizer t{det_table(sigma, delta, {{"σ₁", "δ₁"}, {"σ₂", "δ₃"}, {"σ₃", "δ₃"}}),
              det_table(delta, sigma, {{"δ₁", "σ₂"}, {"δ₂", "σ₂"}, {"δ₃", "σ₃"}})};
  Dist p_star = dist(sigma, {{"σ₁", Rational(1, 5)}, {"σ₂", Rational(2, 5)}, {"σ₃", Rational(2, 5)}});

  Str s(std::string_view x) const { return parse_str(sigma.alphabet(), x); }
  Str d(std::string_view x) const { return parse_str(delta.alphabet(), x); }
};

// κτ transposes x1 and x2.
struct Swap {
  Space x = Space::points(chars({"x1", "x2", "x3"}));
  Space d = Space::points(toks({"d1", "d2", "d3"}));
  Tokenizer t{det_table(x, d, {{"x1", "d1"}, {"x2", "d2"}, {"x3", "d3"}}),
              det_table(d, x, {{"d1", "x2"}, {"d2", "x1"}, {"d3", "x3"}})};
  Dist p = dist(x, {{"x1", Rational(1, 4)}, {"x2", Rational(1, 4)}, {"x3", Rational(1, 2)}});
};

// Σ = {t,h,e}, Δ = {t,h,e,th,he}.
inline Vocab the_vocab() {
  Alphabet sigma = chars({"t", "h", "e"});
  std::vector<Vocab::Entry> entries;
  for (std::string sp : {"t", "h", "e", "th", "he"}) entries.push_back({sp, parse_str(sigma, sp)});
  return Vocab(sigma, std::move(entries));
}

/// Open vocabulary over `chars` plus the given extra spellings; token labels
/// equal their spellings.
inline Vocab vocab_with(const Alphabet& sigma, const std::vector<Word>& extras) {
  std::vector<Vocab::Entry> entries;
  for (Symbol c = 0; c < sigma.size(); ++c) entries.push_back({sigma.label(c), Str(sigma, Word{c})});
  for (const Word& w : extras) {
    Str s(sigma, w);
    entries.push_back({to_string(s), s});
  }
  return Vocab(sigma, std::move(entries));
}

/// Random open vocabulary: |Σ| in [1, max_chars], up to `max_extra` extra
/// distinct spellings of length 2..max_spelling.
inline Vocab random_open_vocab(Rng& rng, std::size_t max_chars = 3, std::size_t max_extra = 3,
                               std::size_t max_spelling = 3) {
  static const std::vector<std::string> names{"a", "b", "c", "d", "e"};
  std::size_t k = 1 + uniform_below(rng, max_chars);
  Alphabet sigma = chars(std::vector<std::string>(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(k)));
  std::size_t extra = uniform_below(rng, max_extra + 1);
  std::vector<Word> extras;
  for (std::size_t tries = 0; extras.size() < extra && tries < 50; ++tries) {
    std::size_t len = 2 + uniform_below(rng, max_spelling - 1);
    Word w;
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<Symbol>(uniform_below(rng, k)));
    if (std::find(extras.begin(), extras.end(), w) == extras.end()) extras.push_back(w);
  }
  return vocab_with(sigma, extras);
}

/// Random row-stochastic map with rows of support 1..max_support.
inline StochMap random_map(const Space& dom, const Space& cod, Rng& rng, std::size_t max_support = 3) {
  StochMap::Rows rows;
  for (const Str& x : dom.members()) rows.emplace(x, random_dist(cod, rng, max_support));
  return StochMap(dom, cod, std::move(rows));
}

}  // namespace tokcheck::testing
