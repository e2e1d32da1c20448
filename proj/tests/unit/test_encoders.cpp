#include <gtest/gtest.h>

#include "expect_errc.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "tokcheck/encoders.hpp"

namespace tokcheck {
namespace {

using testing::chars;
using testing::S;

Str T(const Vocab& v, std::string_view text) { return parse_str(v.tokens(), text); }
Str C(const Vocab& v, std::string_view text) { return parse_str(v.characters(), text); }

TEST(Vocab, Validation) {
  Alphabet sigma = chars({"a", "b"});
  EXPECT_ERRC(Vocab(sigma, {{"a", Str(sigma)}}), Errc::invalid_argument);
  EXPECT_ERRC(Vocab(sigma, {{"a", S(sigma, "a")}, {"b", S(sigma, "b")}, {"x", S(sigma, "a")}}), Errc::invalid_argument);
  EXPECT_ERRC(Vocab(sigma, {{"a", S(sigma, "a")}, {"ab", S(sigma, "ab")}}), Errc::vocab_not_open);
  Vocab closed(sigma, {{"a", S(sigma, "a")}, {"ab", S(sigma, "ab")}}, false);
  EXPECT_FALSE(closed.covers_alphabet());
  EXPECT_EQ(closed.max_spelling_length(), 2u);
  EXPECT_EQ(closed.tokens().role(), AlphabetRole::tokens);
}

TEST(ConcatDecoder, Spellings) {
  Vocab v = testing::the_vocab();
  EXPECT_EQ(concat_decode(v, T(v, "th|e")), C(v, "the"));
  EXPECT_EQ(concat_decode(v, T(v, "t|he")), C(v, "the"));
  EXPECT_EQ(concat_decode(v, Str(v.tokens())), Str(v.characters()));
  StochMap dec = concat_decoder(v, 3);
  EXPECT_EQ(dec.codomain().max_len(), 6u);
  EXPECT_EQ(apply(dec, T(v, "he|th")), C(v, "heth"));
  EXPECT_ERRC(concat_decoder(v, 3, 5), Errc::truncation_overflow);
  EXPECT_EQ(concat_decoder(v, 3, 6), dec);
}

TEST(MaximalMunch, Examples) {
  Vocab v = testing::the_vocab();
  EXPECT_EQ(maximal_munch_encode(v, C(v, "the")), T(v, "th|e"));
  EXPECT_EQ(maximal_munch_encode(v, C(v, "e")), T(v, "e"));
  EXPECT_EQ(maximal_munch_encode(v, C(v, "hethe")), T(v, "he|th|e"));
  EXPECT_EQ(maximal_munch_encode(v, Str(v.characters())), Str(v.tokens()));
}

TEST(MaximalMunch, ClosedVocabAndUnk) {
  Alphabet sigma = chars({"a", "b", "c"});
  Vocab closed(sigma, {{"a", S(sigma, "a")}, {"b", S(sigma, "b")}, {"ab", S(sigma, "ab")}, {"<unk>", S(sigma, "ccc")}},
               false);
  EXPECT_ERRC(maximal_munch_encode(closed, S(sigma, "abc")), Errc::no_matching_prefix);
  Symbol unk = *closed.tokens().find("<unk>");
  EXPECT_EQ(to_string(maximal_munch_encode(closed, S(sigma, "abcb"), unk)), "ab|<unk>|b");
  // lossy: every unseen character collapses onto one token
  Tokenizer t(maximal_munch_encoder(closed, 3, unk), concat_decoder(closed, 3));
  EXPECT_FALSE(is_exact(t));
  EXPECT_FALSE(is_injective(t.encoder()));
}

TEST(MaximalMunch, MatchesGreedyOracleAndRoundTrips) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Vocab v = testing::random_open_vocab(rng);
    for (const Str& sigma : enumerate_strings(v.characters(), 6)) {
      Str delta = maximal_munch_encode(v, sigma);
      ASSERT_EQ(delta.symbols(), oracle::greedy(v.spellings(), sigma.symbols()));
      ASSERT_EQ(concat_decode(v, delta), sigma);
      ASSERT_LE(delta.size(), sigma.size());
    }
  }
}

TEST(Bpe, Examples) {
  Alphabet sigma = chars({"t", "h", "e"});
  std::vector<Vocab::Entry> entries;
  for (std::string sp : {"t", "h", "e", "th", "the"}) entries.push_back({sp, S(sigma, sp)});
  Vocab v(sigma, entries);
  MergeList none(v, {});
  MergeList one(v, {{S(sigma, "t"), S(sigma, "h")}});
  MergeList two(v, {{S(sigma, "t"), S(sigma, "h")}, {S(sigma, "th"), S(sigma, "e")}});
  EXPECT_EQ(bpe_encode(v, one, C(v, "the")), T(v, "th|e"));
  EXPECT_EQ(bpe_encode(v, none, C(v, "the")), T(v, "t|h|e"));
  EXPECT_EQ(bpe_encode(v, two, C(v, "the")), T(v, "the"));
  EXPECT_EQ(bpe_encode(v, two, C(v, "ththe")), T(v, "th|the"));
  EXPECT_ERRC(MergeList(v, {{S(sigma, "h"), S(sigma, "e")}}), Errc::invalid_argument);
}

TEST(Bpe, LeftmostNonOverlapping) {
  Alphabet sigma = chars({"a"});
  Vocab v(sigma, {{"a", S(sigma, "a")}, {"aa", S(sigma, "aa")}});
  MergeList m(v, {{S(sigma, "a"), S(sigma, "a")}});
  EXPECT_EQ(to_string(bpe_encode(v, m, S(sigma, "aaa"))), "aa|a");
  EXPECT_EQ(to_string(bpe_encode(v, m, S(sigma, "aaaaa"))), "aa|aa|a");
}

TEST(Bpe, MissingBaseCharacter) {
  Alphabet sigma = chars({"a", "b"});
  Vocab closed(sigma, {{"a", S(sigma, "a")}, {"ab", S(sigma, "ab")}}, false);
  EXPECT_ERRC(bpe_encode(closed, MergeList(closed, {}), S(sigma, "ab")), Errc::missing_base_character);
}

TEST(Bpe, RoundTripExact) {
  Alphabet sigma = chars({"t", "h", "e"});
  std::vector<Vocab::Entry> entries;
  for (std::string sp : {"t", "h", "e", "he", "the", "ee"}) entries.push_back({sp, S(sigma, sp)});
  Vocab v(sigma, entries);
  MergeList m(v, {{S(sigma, "h"), S(sigma, "e")}, {S(sigma, "t"), S(sigma, "he")}, {S(sigma, "e"), S(sigma, "e")}});
  for (const Str& s : enumerate_strings(sigma, 6)) ASSERT_EQ(concat_decode(v, bpe_encode(v, m, s)), s);
  EXPECT_TRUE(is_exact(bpe_tokenizer(v, m, 4)));
}

TEST(UniformSegmenter, Rows) {
  Vocab v = testing::the_vocab();
  Dist d = uniform_segmenter(v, C(v, "the"));
  EXPECT_EQ(d.support_size(), 3u);
  for (const char* seg : {"t|h|e", "t|he", "th|e"}) EXPECT_EQ(d.mass(T(v, seg)), Rational(1, 3));
  EXPECT_EQ(uniform_segmenter(v, C(v, "t")), point_mass(T(v, "t"), Space(v.tokens(), 1)));

  Alphabet sigma = chars({"a", "b"});
  Vocab closed(sigma, {{"a", S(sigma, "a")}, {"ab", S(sigma, "ab")}}, false);
  EXPECT_ERRC(uniform_segmenter(closed, S(sigma, "b")), Errc::no_segmentation);
}

TEST(UniformSegmenter, ExactAndInjective) {
  Vocab v = testing::the_vocab();
  Tokenizer t = uniform_tokenizer(v, 5);
  EXPECT_TRUE(is_exact(t));
  EXPECT_TRUE(is_injective(t.encoder()));
  for (const auto& [sigma, row] : t.encoder().rows()) {
    for (const auto& [delta, m] : row.masses()) ASSERT_EQ(concat_decode(v, delta), sigma);
  }
}

TEST(SpuriousAmbiguity, TheVocab) {
  Vocab v = testing::the_vocab();
  Str t_he = T(v, "t|he");
  Str back = maximal_munch_encode(v, concat_decode(v, t_he));
  EXPECT_EQ(back, T(v, "th|e"));
  EXPECT_NE(back, t_he);
}

}  // namespace
}  // namespace tokcheck
