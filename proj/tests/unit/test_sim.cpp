#include <gtest/gtest.h>

#include <cmath>

#include "expect_errc.hpp"
#include "fixtures.hpp"
#include "tokcheck/encoders.hpp"
#include "tokcheck/sim.hpp"

namespace tokcheck {
namespace {

using testing::dist;
using testing::ThreePoint;
using testing::Swap;

const std::vector<std::size_t> kSchedule{100, 1000, 10000, 100000};

double final_tv(const EstimationRun& r) { return r.rows().back().second.convert_to<double>(); }

TEST(Simulation, ExactTokenizerConverges) {
  Tokenizer t = maximal_munch_tokenizer(testing::the_vocab(), 5);
  Dist p = dist(t.text_space(), {{"t", Rational(1, 3)}, {"the", Rational(1, 3)}, {"he", Rational(1, 3)}});
  EstimationRun r = run_estimation(t, p, kSchedule, 2024);
  EXPECT_EQ(r.bias, 0);
  EXPECT_LT(r.rows().back().second, kConvergenceTolerance);
  EXPECT_TRUE(r.converged());
}

TEST(Simulation, ThreePointSettlesAtBias) {
  ThreePoint f;
  EstimationRun r = run_estimation(f.t, f.p_star, kSchedule, 2024);
  EXPECT_EQ(r.bias, Rational(2, 5));
  EXPECT_NEAR(final_tv(r), 0.4, 0.02);
  EXPECT_FALSE(r.converged());
}

TEST(Simulation, TraceLimitMatchesExactBias) {
  Rng rng(99);
  Vocab v = testing::the_vocab();
  std::vector<std::pair<Tokenizer, Dist>> cases;
  cases.emplace_back(ThreePoint{}.t, ThreePoint{}.p_star);
  cases.emplace_back(Swap{}.t, Swap{}.p);
  Tokenizer munch = maximal_munch_tokenizer(v, 3);
  cases.emplace_back(munch, random_dist(munch.text_space(), rng));
  Tokenizer uniform = uniform_tokenizer(v, 3);
  cases.emplace_back(uniform, random_dist(uniform.text_space(), rng));
  Swap s;
  cases.emplace_back(s.t, dist(s.x, {{"x1", Rational(1, 2)}, {"x2", Rational(1, 10)}, {"x3", Rational(2, 5)}}));
  for (const auto& [t, p] : cases) {
    EstimationRun r = run_estimation(t, p, kSchedule, 5);
    double slack = 3 / std::sqrt(100000.0) + 0.01;
    EXPECT_NEAR(final_tv(r), r.bias.convert_to<double>(), slack);
  }
}

TEST(Simulation, BiasZeroIffConsistent) {
  Swap s;
  EXPECT_EQ(bias(s.t, s.p), 0);
  EXPECT_TRUE(is_consistent_wrt(s.t, s.p));
  ThreePoint f;
  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Dist p = random_dist(f.sigma, rng, 3, 3);
    EXPECT_EQ(bias(f.t, p) == 0, is_consistent_wrt(f.t, p).holds);
    Dist q = random_dist(s.x, rng, 3, 3);
    EXPECT_EQ(bias(s.t, q) == 0, is_consistent_wrt(s.t, q).holds);
  }
  EXPECT_EQ(bias(f.t, dist(f.sigma, {{"σ₃", 1}})), 0);
}

TEST(Simulation, Reproducible) {
  ThreePoint f;
  auto a = run_estimation(f.t, f.p_star, kSchedule, 8).rows();
  auto b = run_estimation(f.t, f.p_star, kSchedule, 8).rows();
  EXPECT_EQ(a, b);
}

TEST(Simulation, Errors) {
  ThreePoint f;
  std::vector<std::size_t> zero{0};
  EXPECT_ERRC(run_estimation(f.t, f.p_star, zero, 1), Errc::empty_sample);
  std::vector<std::size_t> backwards{100, 10};
  EXPECT_ERRC(run_estimation(f.t, f.p_star, backwards, 1), Errc::invalid_argument);
  Swap s;
  EXPECT_ERRC(run_estimation(f.t, s.p, kSchedule, 1), Errc::space_mismatch);
}

}  // namespace
}  // namespace tokcheck
