#include "tokcheck/tokenizer.hpp"

#include <algorithm>
#include <limits>

#include "tokcheck/error.hpp"

namespace tokcheck {

namespace {

bool word_is_prefix(const Word& a, const Word& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

Word join(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

void require_token_space(const Tokenizer& t, const Dist& q, const char* op) {
  if (!q.space().compatible_with(t.token_space())) {
    throw Error(Errc::space_mismatch, std::string(op) + ": distribution on " + to_string(q.space()) +
                                          " but token space is " + to_string(t.token_space()));
  }
}

template <class W>
Property<W> not_applicable(std::string note) {
  Property<W> p;
  p.status = Status::not_applicable;
  p.note = std::move(note);
  return p;
}

}  // namespace

Tokenizer::Tokenizer(StochMap encoder, StochMap decoder) : encoder_(std::move(encoder)), decoder_(std::move(decoder)) {
  if (!(encoder_.codomain() == decoder_.domain())) {
    throw Error(Errc::space_mismatch, "encoder codomain " + to_string(encoder_.codomain()) +
                                          " differs from decoder domain " + to_string(decoder_.domain()));
  }
  const Space& text = encoder_.domain();
  const Space& back = decoder_.codomain();
  if (!text.compatible_with(back) || back.max_len() < text.max_len()) {
    throw Error(Errc::space_mismatch,
                "decoder codomain " + to_string(back) + " does not contain encoder domain " + to_string(text));
  }
}

Verdict<ConsistencyWitness> is_consistent_wrt(const Tokenizer& t, const Dist& p) {
  if (!p.space().compatible_with(t.text_space())) {
    throw Error(Errc::space_mismatch,
                "is_consistent_wrt: distribution on " + to_string(p.space()) + " but text space is " + to_string(t.text_space()));
  }
  Dist round_trip = pushforward(t.decoder(), pushforward(t.encoder(), p));
  auto a = round_trip.masses().begin();
  auto b = p.masses().begin();
  const auto a_end = round_trip.masses().end();
  const auto b_end = p.masses().end();
  while (a != a_end || b != b_end) {
    if (b == b_end || (a != a_end && a->first < b->first)) {
      return Verdict<ConsistencyWitness>::fail({a->first, a->second, Rational(0)});
    }
    if (a == a_end || b->first < a->first) {
      return Verdict<ConsistencyWitness>::fail({b->first, Rational(0), b->second});
    }
    if (a->second != b->second) return Verdict<ConsistencyWitness>::fail({a->first, a->second, b->second});
    ++a;
    ++b;
  }
  return Verdict<ConsistencyWitness>::pass();
}

Verdict<Str> is_exact(const Tokenizer& t) {
  for (const auto& [sigma, row] : t.encoder().rows()) {
    Dist back = pushforward(t.decoder(), row);
    const Str* y = back.point();
    if (y == nullptr || !(*y == sigma)) return Verdict<Str>::fail(sigma);
  }
  return Verdict<Str>::pass();
}

ConsistencyProbe exact_iff_all_consistent_probe(const Tokenizer& t, std::size_t trials, std::uint64_t seed) {
  ConsistencyProbe probe;
  auto exact = is_exact(t);
  probe.exact = exact.holds;
  if (!exact.holds) {
    Dist witness = point_mass(*exact.witness, t.text_space());
    probe.distributions_checked = 1;
    probe.all_consistent = is_consistent_wrt(t, witness).holds;
    if (!probe.all_consistent) probe.counterexample = std::move(witness);
    return probe;
  }
  auto check = [&](const Dist& p) {
    ++probe.distributions_checked;
    if (!is_consistent_wrt(t, p).holds && probe.all_consistent) {
      probe.all_consistent = false;
      probe.counterexample = p;
    }
  };
  for (const Str& sigma : t.text_space().members()) check(point_mass(sigma, t.text_space()));
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) check(random_dist(t.text_space(), rng));
  return probe;
}

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::holds: return "true";
    case Status::fails: return "false";
    case Status::not_applicable: return "not applicable";
  }
  return "?";
}

DecoderProperties decoder_properties(const StochMap& decoder) {
  DecoderProperties props;
  if (decoder.domain().kind() == SpaceKind::points || decoder.codomain().kind() == SpaceKind::points) {
    const std::string note = "opaque points carry no concatenation structure";
    props.multiplicative = not_applicable<SplitWitness>(note);
    props.trivial_kernel = not_applicable<Str>(note);
    props.prefix_monotone = not_applicable<PrefixWitness>(note);
    return props;
  }
  if (auto det = is_deterministic(decoder); !det.holds) {
    const std::string note = "decoder is stochastic at \"" + to_string(*det.witness) + "\"";
    props.multiplicative = not_applicable<SplitWitness>(note);
    props.trivial_kernel = not_applicable<Str>(note);
    props.prefix_monotone = not_applicable<PrefixWitness>(note);
    return props;
  }

  const Alphabet& tokens = decoder.domain().alphabet();
  auto image = [&](const Word& w) -> const Word& { return apply(decoder, Str(tokens, w)).symbols(); };

  props.multiplicative.status = Status::holds;
  props.prefix_monotone.status = Status::holds;
  for (const auto& [delta, row] : decoder.rows()) {
    const Word& whole = row.point()->symbols();
    const Word& w = delta.symbols();
    for (std::size_t k = 0; k <= w.size(); ++k) {
      Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
      Word right(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
      const Word& left_img = image(left);
      if (props.multiplicative.status == Status::holds && join(left_img, image(right)) != whole) {
        props.multiplicative.status = Status::fails;
        props.multiplicative.witness = SplitWitness{Str(tokens, left), Str(tokens, right)};
      }
      if (k < w.size() && props.prefix_monotone.status == Status::holds && !word_is_prefix(left_img, whole)) {
        props.prefix_monotone.status = Status::fails;
        props.prefix_monotone.witness = PrefixWitness{Str(tokens, left), delta};
      }
    }
  }

  // For a multiplicative decoder it is enough to look at single tokens.
  const bool single_tokens_only = props.multiplicative.status == Status::holds;
  props.trivial_kernel.status = Status::holds;
  for (const auto& [delta, row] : decoder.rows()) {
    if (delta.empty()) continue;
    if (single_tokens_only && delta.size() > 1) break;
    if (row.point()->empty()) {
      props.trivial_kernel.status = Status::fails;
      props.trivial_kernel.witness = delta;
      break;
    }
  }
  return props;
}

ClassificationReport classify(const Tokenizer& t) {
  ClassificationReport r;
  r.deterministic_encoder = is_deterministic(t.encoder());
  r.deterministic_decoder = is_deterministic(t.decoder());

  r.decoder_deterministic_on_image = Verdict<Str>::pass();
  for (const Str& delta : support_of(t.encoder())) {
    if (t.decoder().kernel_at(delta).point() == nullptr) {
      r.decoder_deterministic_on_image = Verdict<Str>::fail(delta);
      break;
    }
  }

  if (!r.deterministic_encoder.holds) {
    r.bijective = Verdict<Str>::fail(*r.deterministic_encoder.witness);
  } else {
    r.bijective = is_exact(t);
  }

  DecoderProperties props = decoder_properties(t.decoder());
  r.multiplicative_decoder = std::move(props.multiplicative);
  r.trivial_kernel = std::move(props.trivial_kernel);
  r.prefix_monotone = std::move(props.prefix_monotone);
  return r;
}

std::vector<Str> spelling_segmentations(const Alphabet& tokens, const std::vector<Word>& spellings,
                                        const Str& text) {
  const Word& target = text.symbols();
  std::vector<Word> found;
  Word current;
  // explicit recursion over positions; only spellings matching the suffix are explored
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (pos == target.size()) {
      found.push_back(current);
      return;
    }
    for (Symbol tok = 0; tok < spellings.size(); ++tok) {
      const Word& sp = spellings[tok];
      if (sp.empty() || sp.size() > target.size() - pos) continue;
      if (!std::equal(sp.begin(), sp.end(), target.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
      current.push_back(tok);
      self(self, pos + sp.size());
      current.pop_back();
    }
  };
  dfs(dfs, 0);
  std::sort(found.begin(), found.end(), canonical_less);
  std::vector<Str> out;
  out.reserve(found.size());
  for (auto& w : found) out.emplace_back(tokens, std::move(w));
  return out;
}

PreimageEnumerator::PreimageEnumerator(const Tokenizer& t)
    : tokens_(t.token_space().alphabet()), characters_(t.decoder().codomain().alphabet()) {
  DecoderProperties props = decoder_properties(t.decoder());
  if (!props.preimage_eligible()) {
    std::string why;
    if (props.multiplicative.status != Status::holds) {
      why = "decoder is not multiplicative";
      if (!props.multiplicative.note.empty()) why += " (" + props.multiplicative.note + ")";
    } else {
      why = "decoder kernel is not trivial: \"" + to_string(*props.trivial_kernel.witness) + "\" decodes to ε";
    }
    throw Error(Errc::decoder_not_eligible, why);
  }
  if (t.token_space().max_len() < 1) {
    throw Error(Errc::decoder_not_eligible, "token truncation 0 leaves no single-token rows to read spellings from");
  }
  spellings_.reserve(tokens_.size());
  for (Symbol s = 0; s < tokens_.size(); ++s) {
    spellings_.push_back(apply(t.decoder(), Str(tokens_, Word{s})).symbols());
  }
}

std::vector<Str> PreimageEnumerator::operator()(const Str& text) const {
  if (!(text.alphabet() == characters_)) {
    throw Error(Errc::alphabet_mismatch, "preimages: text is not over the decoder's character alphabet");
  }
  return spelling_segmentations(tokens_, spellings_, text);
}

std::vector<Str> preimages(const Tokenizer& t, const Str& text) { return PreimageEnumerator(t)(text); }

std::uint64_t preimage_bound(std::size_t n, std::uint64_t vocab_size) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (vocab_size != 0 && power > kMax / vocab_size) throw Error(Errc::invalid_argument, "preimage bound overflows 64 bits");
    power *= vocab_size;
    if (total > kMax - power) throw Error(Errc::invalid_argument, "preimage bound overflows 64 bits");
    total += power;
  }
  return total;
}

Rational marginalize(const PreimageEnumerator& pre, const Dist& q, const Str& text) {
  if (!(q.space().alphabet() == pre.tokens())) {
    throw Error(Errc::space_mismatch, "marginalize: distribution is not over the token alphabet");
  }
  Rational total = 0;
  for (const Str& delta : pre(text)) total += q.mass(delta);
  return total;
}

Rational marginalize(const Tokenizer& t, const Dist& q, const Str& text) {
  require_token_space(t, q, "marginalize");
  return marginalize(PreimageEnumerator(t), q, text);
}

Rational spurious_ambiguity_mass(const Tokenizer& t, const Dist& q) {
  require_token_space(t, q, "spurious_ambiguity_mass");
  if (auto det = is_deterministic(t.encoder()); !det.holds) {
    throw Error(Errc::encoder_not_deterministic, "encoder row \"" + to_string(*det.witness) + "\" is not a point mass");
  }
  std::set<Str> image = support_of(t.encoder());
  Rational total = 0;
  for (const auto& [delta, m] : q.masses()) {
    if (!image.contains(delta)) total += m;
  }
  return total;
}

std::vector<VariationProbe> variation_profile(const StochMap& f, std::size_t max_k) {
  if (auto det = is_deterministic(f); !det.holds) {
    throw Error(Errc::not_deterministic, "variation probe needs a deterministic map; row \"" +
                                             to_string(*det.witness) + "\" is stochastic");
  }
  std::vector<const Str*> inputs;
  std::vector<const Word*> outputs;
  for (const auto& [x, row] : f.rows()) {
    inputs.push_back(&x);
    outputs.push_back(&row.point()->symbols());
  }
  auto distance = [](const Word& a, const Word& b) {
    auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
    return a.size() + b.size() - 2 * static_cast<std::size_t>(ia - a.begin());
  };

  // best[d]: largest output distance among pairs at input distance exactly d
  std::vector<std::size_t> best(max_k + 1, 0);
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> where(max_k + 1);
  if (!inputs.empty()) where[0] = std::pair{std::size_t{0}, std::size_t{0}};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Word& a = inputs[i]->symbols();
    // rows are in canonical order, so lengths are nondecreasing in j
    for (std::size_t j = i + 1; j < inputs.size(); ++j) {
      const Word& b = inputs[j]->symbols();
      if (b.size() - a.size() > max_k) break;
      std::size_t din = distance(a, b);
      if (din > max_k) continue;
      std::size_t dout = distance(*outputs[i], *outputs[j]);
      if (!where[din] || dout > best[din]) {
        best[din] = dout;
        where[din] = std::pair{i, j};
      }
    }
  }

  std::vector<VariationProbe> out;
  VariationProbe running;
  for (std::size_t k = 0; k <= max_k; ++k) {
    if (where[k] && (!running.witness || best[k] > running.bound)) {
      running.bound = best[k];
      running.witness = std::pair{*inputs[where[k]->first], *inputs[where[k]->second]};
    }
    running.k = k;
    out.push_back(running);
  }
  return out;
}

VariationProbe bounded_variation_probe(const StochMap& f, std::size_t k) { return variation_profile(f, k).back(); }

}  // namespace tokcheck
