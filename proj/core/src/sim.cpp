#include "tokcheck/sim.hpp"

#include "tokcheck/error.hpp"

namespace tokcheck {

std::vector<std::pair<std::size_t, Rational>> EstimationRun::rows() const {
  std::vector<std::pair<std::size_t, Rational>> out;
  auto tv = trace.tv_series();
  for (std::size_t i = 0; i < tv.size(); ++i) out.emplace_back(trace.steps()[i].samples, std::move(tv[i]));
  return out;
}

EstimationRun run_estimation(const Tokenizer& t, const Dist& p_star, std::span<const std::size_t> schedule,
                             std::uint64_t seed) {
  if (!p_star.space().compatible_with(t.text_space())) {
    throw Error(Errc::space_mismatch, "run_estimation: p* lives on " + to_string(p_star.space()) +
                                          ", tokenizer text space is " + to_string(t.text_space()));
  }
  EstimationRun result{EstimatorTrace(p_star), bias(t, p_star)};
  for (std::size_t n : schedule) {
    std::vector<Str> draws = sample(p_star, seed ^ static_cast<std::uint64_t>(n), n);
    Dist p_n = empirical(draws, t.text_space());
    Dist q_n = pushforward(t.encoder(), p_n);
    result.trace.append(n, pushforward(t.decoder(), q_n));
  }
  return result;
}

Rational bias(const Tokenizer& t, const Dist& p_star) {
  return tv_distance(pushforward(t.decoder(), pushforward(t.encoder(), p_star)), p_star);
}

}  // namespace tokcheck
