#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tokcheck/dist.hpp"
#include "tokcheck/stochmap.hpp"
#include "tokcheck/tokenizer.hpp"

namespace tokcheck {

/// Token inventory: one entry per token, each with a nonempty spelling over
/// the character alphabet. Token labels and spellings are both distinct.
class Vocab {
 public:
  struct Entry {
    std::string token;
    Str spelling;
  };

  /// With `open` set, every character must be the spelling of some token.
  Vocab(Alphabet characters, std::vector<Entry> entries, bool open = true);

  const Alphabet& characters() const noexcept { return characters_; }
  const Alphabet& tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return spellings_.size(); }
  bool is_open() const noexcept { return open_; }
  /// True when each single character is spelled by some token.
  bool covers_alphabet() const;

  const Str& spelling(Symbol token) const;
  const std::vector<Word>& spellings() const noexcept { return words_; }
  std::optional<Symbol> find_spelling(const Word& spelling) const;
  std::size_t max_spelling_length() const noexcept { return max_len_; }

 private:
  Alphabet characters_;
  Alphabet tokens_;
  std::vector<Str> spellings_;
  std::vector<Word> words_;
  std::map<Word, Symbol> by_spelling_;
  std::size_t max_len_ = 0;
  bool open_;
};

/// Ordered BPE merge rules, each a pair of spellings whose concatenation is
/// itself a vocabulary spelling.
class MergeList {
 public:
  MergeList(const Vocab& vocab, std::vector<std::pair<Str, Str>> merges);

  const std::vector<std::pair<Str, Str>>& merges() const noexcept { return merges_; }
  std::size_t size() const noexcept { return merges_.size(); }

 private:
  friend Str bpe_encode(const Vocab&, const MergeList&, const Str&);
  struct Rule {
    Symbol left;
    Symbol right;
    Symbol merged;
  };
  std::vector<std::pair<Str, Str>> merges_;
  std::vector<Rule> rules_;
};

/// κ(δ₁|…|δ_k) = spelling(δ₁)·…·spelling(δ_k).
Str concat_decode(const Vocab& vocab, const Str& tokens);

/// Deterministic decoder on Δ^≤max_tokens. The codomain truncation defaults
/// to max_tokens times the longest spelling; an explicit one that is too
/// short raises TruncationOverflow.
StochMap concat_decoder(const Vocab& vocab, std::size_t max_tokens,
                        std::optional<std::size_t> max_chars = std::nullopt);

/// Greedy longest-match encoding. Without `unk`, a position that no spelling
/// matches raises NoMatchingPrefix; with it, that character is replaced by the
/// unk token (lossy: exactness is lost).
Str maximal_munch_encode(const Vocab& vocab, const Str& text, std::optional<Symbol> unk = std::nullopt);

/// Deterministic encoder Σ^≤max_len ⇝ Δ^≤max_len.
StochMap maximal_munch_encoder(const Vocab& vocab, std::size_t max_len, std::optional<Symbol> unk = std::nullopt);

/// Start from single characters and apply each merge in list order. A merge
/// rewrites all non-overlapping adjacent occurrences, scanning leftmost first,
/// and repeats until none remain before the next merge is considered.
Str bpe_encode(const Vocab& vocab, const MergeList& merges, const Str& text);
StochMap bpe_encoder(const Vocab& vocab, const MergeList& merges, std::size_t max_len);

/// Uniform distribution over all segmentations of `text`, on `token_space`
/// (Δ^≤|text| when omitted). Throws NoSegmentation.
Dist uniform_segmenter(const Vocab& vocab, const Str& text, std::optional<Space> token_space = std::nullopt);
StochMap uniform_segmenter_encoder(const Vocab& vocab, std::size_t max_len);

/// Convenience: encoder over Σ^≤N paired with the concatenating decoder on Δ^≤N.
Tokenizer maximal_munch_tokenizer(const Vocab& vocab, std::size_t max_len);
Tokenizer bpe_tokenizer(const Vocab& vocab, const MergeList& merges, std::size_t max_len);
Tokenizer uniform_tokenizer(const Vocab& vocab, std::size_t max_len);

}  // namespace tokcheck
