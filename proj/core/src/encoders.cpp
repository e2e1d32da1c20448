#include "tokcheck/encoders.hpp"

#include <algorithm>

#include "tokcheck/error.hpp"

namespace tokcheck {

namespace {

std::vector<std::string> token_labels(const std::vector<Vocab::Entry>& entries) {
  std::vector<std::string> labels;
  labels.reserve(entries.size());
  for (const auto& e : entries) labels.push_back(e.token);
  return labels;
}

void require_characters(const Vocab& vocab, const Str& text, const char* op) {
  if (!(text.alphabet() == vocab.characters())) {
    throw Error(Errc::alphabet_mismatch, std::string(op) + ": text is not over the vocabulary's character alphabet");
  }
}

}  // namespace

Vocab::Vocab(Alphabet characters, std::vector<Entry> entries, bool open)
    : characters_(std::move(characters)),
      tokens_(token_labels(entries), AlphabetRole::tokens),
      open_(open) {
  spellings_.reserve(entries.size());
  for (Symbol tok = 0; tok < entries.size(); ++tok) {
    Str& sp = entries[tok].spelling;
    if (!(sp.alphabet() == characters_)) {
      throw Error(Errc::alphabet_mismatch, "spelling of token '" + entries[tok].token + "' uses another alphabet");
    }
    if (sp.empty()) throw Error(Errc::invalid_argument, "token '" + entries[tok].token + "' has an empty spelling");
    if (!by_spelling_.emplace(sp.symbols(), tok).second) {
      throw Error(Errc::invalid_argument, "spelling \"" + to_string(sp) + "\" is used by two tokens");
    }
    max_len_ = std::max(max_len_, sp.size());
    words_.push_back(sp.symbols());
    spellings_.push_back(std::move(sp));
  }
  if (open_ && !covers_alphabet()) {
    for (Symbol c = 0; c < characters_.size(); ++c) {
      if (!by_spelling_.contains(Word{c})) {
        throw Error(Errc::vocab_not_open, "character '" + characters_.label(c) + "' has no single-character token");
      }
    }
  }
}

bool Vocab::covers_alphabet() const {
  for (Symbol c = 0; c < characters_.size(); ++c) {
    if (!by_spelling_.contains(Word{c})) return false;
  }
  return true;
}

const Str& Vocab::spelling(Symbol token) const {
  if (token >= spellings_.size()) throw Error(Errc::invalid_argument, "token index out of range");
  return spellings_[token];
}

std::optional<Symbol> Vocab::find_spelling(const Word& spelling) const {
  auto it = by_spelling_.find(spelling);
  if (it == by_spelling_.end()) return std::nullopt;
  return it->second;
}

MergeList::MergeList(const Vocab& vocab, std::vector<std::pair<Str, Str>> merges) : merges_(std::move(merges)) {
  for (const auto& [l, r] : merges_) {
    auto left = vocab.find_spelling(l.symbols());
    auto right = vocab.find_spelling(r.symbols());
    auto merged = vocab.find_spelling(concat(l, r).symbols());
    if (!left || !right || !merged) {
      throw Error(Errc::invalid_argument,
                  "merge (" + to_string(l) + ", " + to_string(r) + ") does not join two vocabulary spellings into a third");
    }
    rules_.push_back({*left, *right, *merged});
  }
}

Str concat_decode(const Vocab& vocab, const Str& tokens) {
  if (!(tokens.alphabet() == vocab.tokens())) {
    throw Error(Errc::alphabet_mismatch, "concat_decode: sequence is not over the vocabulary's token alphabet");
  }
  Word out;
  for (Symbol tok : tokens.symbols()) {
    const Word& sp = vocab.spellings()[tok];
    out.insert(out.end(), sp.begin(), sp.end());
  }
  return Str(vocab.characters(), std::move(out));
}

StochMap concat_decoder(const Vocab& vocab, std::size_t max_tokens, std::optional<std::size_t> max_chars) {
  const std::size_t limit = max_chars.value_or(max_tokens * vocab.max_spelling_length());
  Space domain(vocab.tokens(), max_tokens);
  Space codomain(vocab.characters(), limit);
  StochMap::Rows rows;
  for (const Str& delta : domain.members()) {
    Str sigma = concat_decode(vocab, delta);
    if (sigma.size() > limit) {
      throw Error(Errc::truncation_overflow, "\"" + to_string(delta) + "\" decodes to " + std::to_string(sigma.size()) +
                                                 " characters, above the truncation " + std::to_string(limit));
    }
    rows.emplace(delta, Dist::point_mass(sigma, codomain));
  }
  return StochMap(std::move(domain), std::move(codomain), std::move(rows));
}

Str maximal_munch_encode(const Vocab& vocab, const Str& text, std::optional<Symbol> unk) {
  require_characters(vocab, text, "maximal_munch_encode");
  if (unk && *unk >= vocab.size()) throw Error(Errc::invalid_argument, "unk token index out of range");
  const Word& w = text.symbols();
  Word out;
  std::size_t pos = 0;
  while (pos < w.size()) {
    std::size_t longest = std::min(vocab.max_spelling_length(), w.size() - pos);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      Word piece(w.begin() + static_cast<std::ptrdiff_t>(pos), w.begin() + static_cast<std::ptrdiff_t>(pos + len));
      if (auto tok = vocab.find_spelling(piece)) {
        out.push_back(*tok);
        pos += len;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (!unk) {
      throw Error(Errc::no_matching_prefix, "no spelling matches \"" + to_string(text) + "\" at position " + std::to_string(pos));
    }
    out.push_back(*unk);
    ++pos;
  }
  return Str(vocab.tokens(), std::move(out));
}

StochMap maximal_munch_encoder(const Vocab& vocab, std::size_t max_len, std::optional<Symbol> unk) {
  return materialize(Function([&](const Str& s) { return maximal_munch_encode(vocab, s, unk); }),
                     Space(vocab.characters(), max_len), Space(vocab.tokens(), max_len));
}

Str bpe_encode(const Vocab& vocab, const MergeList& merges, const Str& text) {
  require_characters(vocab, text, "bpe_encode");
  Word seq;
  seq.reserve(text.size());
  for (Symbol c : text.symbols()) {
    auto tok = vocab.find_spelling(Word{c});
    if (!tok) throw Error(Errc::missing_base_character, "character '" + vocab.characters().label(c) + "' has no token");
    seq.push_back(*tok);
  }
  for (const auto& rule : merges.rules_) {
    bool changed = true;
    while (changed && seq.size() > 1) {
      changed = false;
      Word next;
      next.reserve(seq.size());
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i + 1 < seq.size() && seq[i] == rule.left && seq[i + 1] == rule.right) {
          next.push_back(rule.merged);
          ++i;
          changed = true;
        } else {
          next.push_back(seq[i]);
        }
      }
      seq = std::move(next);
    }
  }
  return Str(vocab.tokens(), std::move(seq));
}

StochMap bpe_encoder(const Vocab& vocab, const MergeList& merges, std::size_t max_len) {
  return materialize(Function([&](const Str& s) { return bpe_encode(vocab, merges, s); }),
                     Space(vocab.characters(), max_len), Space(vocab.tokens(), max_len));
}

Dist uniform_segmenter(const Vocab& vocab, const Str& text, std::optional<Space> token_space) {
  require_characters(vocab, text, "uniform_segmenter");
  std::vector<Str> segs = spelling_segmentations(vocab.tokens(), vocab.spellings(), text);
  if (segs.empty()) throw Error(Errc::no_segmentation, "\"" + to_string(text) + "\" has no segmentation");
  Space space = token_space.value_or(Space(vocab.tokens(), text.size()));
  Dist::Masses masses;
  const Rational each(1, static_cast<long long>(segs.size()));
  for (auto& s : segs) masses.emplace(std::move(s), each);
  return Dist(std::move(space), std::move(masses));
}

StochMap uniform_segmenter_encoder(const Vocab& vocab, std::size_t max_len) {
  Space codomain(vocab.tokens(), max_len);
  return materialize(Procedure([&](const Str& s) { return uniform_segmenter(vocab, s, codomain); }),
                     Space(vocab.characters(), max_len), codomain);
}

Tokenizer maximal_munch_tokenizer(const Vocab& vocab, std::size_t max_len) {
  return Tokenizer(maximal_munch_encoder(vocab, max_len), concat_decoder(vocab, max_len));
}

Tokenizer bpe_tokenizer(const Vocab& vocab, const MergeList& merges, std::size_t max_len) {
  return Tokenizer(bpe_encoder(vocab, merges, max_len), concat_decoder(vocab, max_len));
}

Tokenizer uniform_tokenizer(const Vocab& vocab, std::size_t max_len) {
  return Tokenizer(uniform_segmenter_encoder(vocab, max_len), concat_decoder(vocab, max_len));
}

}  // namespace tokcheck
