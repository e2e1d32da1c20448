#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tokcheck/dist.hpp"
#include "tokcheck/tokenizer.hpp"

namespace tokcheck {

/// Default verdict threshold for simulated convergence: total variation below
/// 1/20 at the last schedule step.
inline const Rational kConvergenceTolerance{1, 20};

struct EstimationRun {
  EstimatorTrace trace;  // decoded estimates κqₙ against p*
  Rational bias;         // tv(κτp*, p*), exact

  /// (n, tv) rows in schedule order.
  std::vector<std::pair<std::size_t, Rational>> rows() const;
  bool converged(const Rational& tolerance = kConvergenceTolerance) const { return trace.converged(tolerance); }
};

/// For each n in `schedule`: draw n samples from p* with seed (seed XOR n),
/// estimate qₙ = τ(empirical), decode κqₙ and record it against p*.
/// The schedule must be strictly increasing; n = 0 raises EmptySample.
EstimationRun run_estimation(const Tokenizer& t, const Dist& p_star, std::span<const std::size_t> schedule,
                             std::uint64_t seed);

/// tv(κτp*, p*); zero exactly when t is consistent with respect to p*.
Rational bias(const Tokenizer& t, const Dist& p_star);

}  // namespace tokcheck
