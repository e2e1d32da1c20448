#include <gtest/gtest.h>

#include "expect_errc.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tokcheck/encoders.hpp"
#include "tokcheck/tokenizer.hpp"

namespace tokcheck {
namespace {

using testing::chars;
using testing::dist;
using testing::ThreePoint;
using testing::S;
using testing::Swap;
using testing::toks;

TEST(Tokenizer, ValidatesSpaces) {
  ThreePoint f;
  EXPECT_ERRC(Tokenizer(f.t.encoder(), f.t.encoder()), Errc::space_mismatch);
  Vocab v = testing::the_vocab();
  EXPECT_ERRC(Tokenizer(maximal_munch_encoder(v, 3), concat_decoder(v, 2)), Errc::space_mismatch);
}

TEST(Consistency, ThreePoint) {
  ThreePoint f;
  auto v = is_consistent_wrt(f.t, f.p_star);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.witness->text, f.s("σ₁"));
  EXPECT_EQ(v.witness->round_trip_mass, 0);
  EXPECT_EQ(v.witness->reference_mass, Rational(1, 5));

  Dist p = dist(f.sigma, {{"σ₃", 1}});
  EXPECT_TRUE(is_consistent_wrt(f.t, p));
  EXPECT_ERRC(is_consistent_wrt(f.t, point_mass(S(chars({"x"}), "x"), Space(chars({"x"}), 1))), Errc::space_mismatch);
}

TEST(Consistency, SwapIsConsistentButNotExact) {
  Swap s;
  EXPECT_TRUE(is_consistent_wrt(s.t, s.p));
  auto exact = is_exact(s.t);
  ASSERT_FALSE(exact.holds);
  EXPECT_EQ(*exact.witness, S(s.x.alphabet(), "x1"));
  Dist skewed = dist(s.x, {{"x1", Rational(1, 3)}, {"x2", Rational(1, 6)}, {"x3", Rational(1, 2)}});
  EXPECT_FALSE(is_consistent_wrt(s.t, skewed));
}

TEST(Exactness, MaximalMunchOverSixChars) {
  Tokenizer t = maximal_munch_tokenizer(testing::the_vocab(), 6);
  EXPECT_TRUE(is_exact(t));
  EXPECT_EQ(*is_exact(ThreePoint{}.t).witness, ThreePoint{}.s("σ₁"));
}

TEST(Exactness, ProbeAgreesWithExactness) {
  Tokenizer t = maximal_munch_tokenizer(testing::the_vocab(), 4);
  ConsistencyProbe probe = exact_iff_all_consistent_probe(t, 100, 5);
  EXPECT_TRUE(probe.exact);
  EXPECT_TRUE(probe.all_consistent);
  EXPECT_EQ(probe.distributions_checked, t.text_space().size() + 100);
  EXPECT_TRUE(probe.agrees());

  ThreePoint f;
  ConsistencyProbe fig = exact_iff_all_consistent_probe(f.t, 100, 5);
  EXPECT_FALSE(fig.exact);
  ASSERT_TRUE(fig.counterexample);
  EXPECT_EQ(*fig.counterexample, point_mass(f.s("σ₁"), f.sigma));
  EXPECT_TRUE(fig.agrees());

  Swap s;
  ConsistencyProbe swap = exact_iff_all_consistent_probe(s.t, 10, 5);
  ASSERT_TRUE(swap.counterexample);
  EXPECT_EQ(*swap.counterexample, point_mass(S(s.x.alphabet(), "x1"), s.x));
}

TEST(Exactness, ImpliesInjectiveEncoderAndOntoDecoder) {
  Vocab v = testing::the_vocab();
  for (const Tokenizer& t : {maximal_munch_tokenizer(v, 4), uniform_tokenizer(v, 4)}) {
    ASSERT_TRUE(is_exact(t));
    EXPECT_TRUE(is_injective(t.encoder()));
    std::set<Str> hit;
    for (const Str& delta : support_of(t.encoder())) {
      const Dist& row = t.decoder().kernel_at(delta);
      ASSERT_NE(row.point(), nullptr);  // deterministic on the support of τ
      hit.insert(*row.point());
    }
    for (const Str& sigma : t.text_space().members()) EXPECT_TRUE(hit.contains(sigma)) << to_string(sigma);
  }
}

TEST(Classify, ConcatDecoderProperties) {
  Alphabet sigma = chars({"a", "b"});
  Vocab v = testing::vocab_with(sigma, {{0, 1}, {1, 1, 0}, {0, 0}});
  ASSERT_EQ(v.size(), 5u);
  DecoderProperties p = decoder_properties(concat_decoder(v, 6));
  EXPECT_EQ(p.multiplicative.status, Status::holds);
  EXPECT_EQ(p.trivial_kernel.status, Status::holds);
  EXPECT_EQ(p.prefix_monotone.status, Status::holds);
  EXPECT_TRUE(p.preimage_eligible());

  ClassificationReport r = classify(maximal_munch_tokenizer(v, 4));
  EXPECT_TRUE(r.deterministic_encoder);
  EXPECT_TRUE(r.deterministic_decoder);
  EXPECT_TRUE(r.decoder_deterministic_on_image);
  EXPECT_TRUE(r.bijective);
}

TEST(Classify, ErasingTokenBreaksTrivialKernel) {
  Alphabet sigma = chars({"a", "b"});
  Alphabet delta = toks({"a", "b", "<s>"});
  Space dom(delta, 3), cod(sigma, 3);
  Function erase = [&](const Str& d) {
    Word out;
    for (Symbol s : d.symbols()) {
      if (s != 2) out.push_back(s);
    }
    return Str(sigma, out);
  };
  DecoderProperties p = decoder_properties(materialize(erase, dom, cod));
  EXPECT_EQ(p.multiplicative.status, Status::holds);
  EXPECT_EQ(p.trivial_kernel.status, Status::fails);
  EXPECT_EQ(*p.trivial_kernel.witness, S(delta, "<s>"));
  EXPECT_FALSE(p.preimage_eligible());
}

TEST(Classify, NonMultiplicativeAndNotPrefixMonotone) {
  Alphabet sigma = chars({"a", "b"});
  Alphabet delta = toks({"a", "b"});
  Space dom(delta, 2), cod(sigma, 2);
  // reverses its input
  Function rev = [&](const Str& d) { return Str(sigma, Word(d.symbols().rbegin(), d.symbols().rend())); };
  DecoderProperties p = decoder_properties(materialize(rev, dom, cod));
  EXPECT_EQ(p.multiplicative.status, Status::fails);
  EXPECT_EQ(to_string(p.multiplicative.witness->left), "a");
  EXPECT_EQ(to_string(p.multiplicative.witness->right), "b");
  EXPECT_EQ(p.prefix_monotone.status, Status::fails);
  EXPECT_EQ(p.trivial_kernel.status, Status::holds);
}

TEST(Classify, ThreePointNotApplicable) {
  ClassificationReport r = classify(ThreePoint{}.t);
  EXPECT_EQ(r.multiplicative_decoder.status, Status::not_applicable);
  EXPECT_EQ(r.trivial_kernel.status, Status::not_applicable);
  EXPECT_EQ(r.prefix_monotone.status, Status::not_applicable);
  EXPECT_TRUE(r.deterministic_encoder);
  EXPECT_FALSE(r.bijective);
}

TEST(Classify, StochasticDecoderNotApplicable) {
  Space s(chars({"a"}), 1);
  Space d(toks({"a"}), 1);
  StochMap::Rows rows;
  Str eps(s.alphabet()), a = S(s.alphabet(), "a");
  rows.emplace(Str(d.alphabet()), point_mass(eps, s));
  rows.emplace(S(d.alphabet(), "a"), Dist(s, Dist::Masses{{eps, Rational(1, 2)}, {a, Rational(1, 2)}}));
  DecoderProperties p = decoder_properties(StochMap(d, s, rows));
  EXPECT_EQ(p.multiplicative.status, Status::not_applicable);
  EXPECT_FALSE(p.preimage_eligible());
}

TEST(Preimages, TheVocab) {
  Vocab v = testing::the_vocab();
  Tokenizer t = maximal_munch_tokenizer(v, 5);
  auto got = preimages(t, S(v.characters(), "the"));
  std::vector<std::string> text;
  for (const Str& d : got) text.push_back(to_string(d));
  EXPECT_EQ(text, (std::vector<std::string>{"t|he", "th|e", "t|h|e"}));
  auto eps = preimages(t, Str(v.characters()));
  ASSERT_EQ(eps.size(), 1u);
  EXPECT_TRUE(eps[0].empty());
}

TEST(Preimages, MatchBruteForce) {
  Vocab v = testing::the_vocab();
  PreimageEnumerator pre(maximal_munch_tokenizer(v, 5));
  for (const Str& sigma : enumerate_strings(v.characters(), 5)) {
    auto got = pre(sigma);
    auto want = oracle::preimages(v.spellings(), sigma.symbols());
    ASSERT_EQ(got.size(), want.size()) << to_string(sigma);
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].symbols(), want[i]);
      EXPECT_LE(got[i].size(), sigma.size());
    }
    if (!sigma.empty()) EXPECT_LE(got.size(), preimage_bound(sigma.size(), v.size()));
  }
}

TEST(Preimages, DecoderNotEligible) {
  EXPECT_ERRC(preimages(ThreePoint{}.t, ThreePoint{}.s("σ₁")), Errc::decoder_not_eligible);
}

TEST(PreimageBound, Formula) {
  EXPECT_EQ(preimage_bound(3, 5), 155u);
  for (std::uint64_t k = 1; k < 10; ++k) EXPECT_EQ(preimage_bound(1, k), k);
  EXPECT_EQ(preimage_bound(0, 7), 0u);
  EXPECT_ERRC(preimage_bound(100, 1000), Errc::invalid_argument);
}

TEST(Marginalize, ExampleValues) {
  Vocab v = testing::the_vocab();
  Tokenizer t = maximal_munch_tokenizer(v, 5);
  Dist q = dist(t.token_space(), {{"t|he", Rational(1, 10)},
                                  {"th|e", Rational(1, 5)},
                                  {"t|h|e", Rational(1, 20)},
                                  {"he", Rational(13, 20)}});
  EXPECT_EQ(marginalize(t, q, S(v.characters(), "the")), Rational(7, 20));
  EXPECT_EQ(marginalize(t, q, S(v.characters(), "ht")), 0);
}

TEST(Marginalize, AgreesWithPushforward) {
  Vocab v = testing::the_vocab();
  Tokenizer t = maximal_munch_tokenizer(v, 5);
  PreimageEnumerator pre(t);
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    Dist q = random_dist(t.token_space(), rng, 8);
    Dist decoded = pushforward(t.decoder(), q);
    for (const Str& sigma : enumerate_strings(v.characters(), 5)) {
      ASSERT_EQ(marginalize(pre, q, sigma), decoded.mass(sigma)) << to_string(sigma);
    }
  }
}

TEST(SpuriousAmbiguity, Mass) {
  Vocab v = testing::the_vocab();
  Tokenizer t = maximal_munch_tokenizer(v, 3);
  Rng rng(6);
  Dist p = random_dist(t.text_space(), rng);
  EXPECT_EQ(spurious_ambiguity_mass(t, pushforward(t.encoder(), p)), 0);

  Dist q = dist(t.token_space(), {{"t|he", Rational(1, 10)}, {"th|e", Rational(9, 10)}});
  EXPECT_EQ(spurious_ambiguity_mass(t, q), Rational(1, 10));
  Dist off = dist(t.token_space(), {{"t|h", Rational(1, 2)}, {"h|e", Rational(1, 2)}});
  EXPECT_EQ(spurious_ambiguity_mass(t, off), 1);
  EXPECT_ERRC(spurious_ambiguity_mass(uniform_tokenizer(v, 3), q), Errc::encoder_not_deterministic);
}

TEST(BoundedVariation, ConcatDecoderWithinKL) {
  Vocab v = testing::the_vocab();
  StochMap dec = concat_decoder(v, 5);
  auto profile = variation_profile(dec, 4);
  ASSERT_EQ(profile.size(), 5u);
  for (const auto& probe : profile) {
    EXPECT_LE(probe.bound, probe.k * v.max_spelling_length()) << probe.k;
    EXPECT_EQ(probe.bound, bounded_variation_probe(dec, probe.k).bound);
  }
  EXPECT_EQ(profile[0].bound, 0u);
}

TEST(BoundedVariation, MatchesPairwiseOracle) {
  Vocab v = testing::vocab_with(chars({"a", "b"}), {{0, 1, 1}});
  StochMap dec = concat_decoder(v, 3);
  auto members = dec.domain().members();
  for (std::size_t k = 0; k <= 3; ++k) {
    std::size_t want = 0;
    for (const Str& x : members) {
      for (const Str& y : members) {
        if (oracle::left_distance(x.symbols(), y.symbols()) > k) continue;
        want = std::max(want, oracle::left_distance(apply(dec, x).symbols(), apply(dec, y).symbols()));
      }
    }
    auto probe = bounded_variation_probe(dec, k);
    EXPECT_EQ(probe.bound, want);
    if (k > 0) {
      ASSERT_TRUE(probe.witness);
      const auto& [x, y] = *probe.witness;
      EXPECT_LE(left_distance(x, y), k);
      EXPECT_EQ(left_distance(apply(dec, x), apply(dec, y)), want);
    }
  }
}

TEST(BoundedVariation, GlobalRewriteGrows) {
  Alphabet a = chars({"a", "b"});
  // the last symbol decides whether the whole string is complemented
  Function rewrite = [&](const Str& s) {
    if (s.empty() || s[s.size() - 1] == 0) return s;
    Word w = s.symbols();
    for (Symbol& c : w) c = 1 - c;
    return Str(a, w);
  };
  std::size_t previous = 0;
  for (std::size_t n = 2; n <= 6; ++n) {
    Space s(a, n);
    std::size_t c2 = bounded_variation_probe(materialize(rewrite, s, s), 2).bound;
    EXPECT_GT(c2, previous) << n;
    previous = c2;
  }
}

TEST(BoundedVariation, NeedsDeterministicMap) {
  EXPECT_ERRC(bounded_variation_probe(uniform_segmenter_encoder(testing::the_vocab(), 3), 1), Errc::not_deterministic);
}

}  // namespace
}  // namespace tokcheck
