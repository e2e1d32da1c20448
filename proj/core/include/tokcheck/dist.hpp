#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tokcheck/strings.hpp"

namespace tokcheck {

using Rational = boost::multiprecision::cpp_rational;

/// "num/den" (or "num" when den = 1).
std::string to_string(const Rational& r);
/// Accepts "num/den", "num", or a finite decimal such as "0.25". Throws ParseError.
Rational parse_rational(std::string_view text);

/// Pseudo-random engine used everywhere a seed is accepted. mt19937_64 has a
/// bit-exact definition in the standard, so runs are reproducible across
/// platforms as long as only the helpers below consume it.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection sampling on raw 64-bit draws.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Finite-support probability distribution with exact rational masses.
///
/// Masses are stored sparsely in canonical string order; zero entries are
/// dropped at construction and every stored mass is in (0, 1]. The masses sum
/// to exactly one.
class Dist {
 public:
  using Masses = std::map<Str, Rational>;

  Dist(Space space, Masses masses);
  Dist(Space space, const std::vector<std::pair<Str, Rational>>& masses);

  static Dist point_mass(const Str& x, const Space& space);

  const Space& space() const noexcept { return space_; }
  const Masses& masses() const noexcept { return masses_; }
  std::size_t support_size() const noexcept { return masses_.size(); }
  Rational mass(const Str& x) const;
  /// The single support point, if this is a point mass.
  const Str* point() const noexcept;

  friend bool operator==(const Dist& a, const Dist& b);

 private:
  Space space_;
  Masses masses_;
};

Dist point_mass(const Str& x, const Space& space);

/// Pointwise mass equality; the spaces need only be compatible (same alphabet
/// and kind), so a distribution on Γ^≤N compares against one on Γ^≤N'.
bool same_masses(const Dist& p, const Dist& q);

// Distances accept compatible spaces and throw SpaceMismatch otherwise.
Rational l1_distance(const Dist& p, const Dist& q);
Rational tv_distance(const Dist& p, const Dist& q);
/// KL(p || q) in nats; +inf when supp(p) is not contained in supp(q).
double kl_divergence(const Dist& p, const Dist& q);

/// n i.i.d. draws by inverse CDF over the canonical support order. Each draw
/// consumes one 64-bit output u of Rng(seed) and selects the first support
/// point whose cumulative mass c satisfies u < floor(c * 2^64).
std::vector<Str> sample(const Dist& p, std::uint64_t seed, std::size_t n);

/// Maximum-likelihood (relative frequency) estimate on `space`.
Dist empirical(std::span<const Str> samples, const Space& space);

/// Random distribution on `space` with 1..max_support points and integer
/// weights in [1, max_weight], normalized exactly.
Dist random_dist(const Space& space, Rng& rng, std::size_t max_support = 5, std::uint64_t max_weight = 10);

/// A sequence of estimates indexed by strictly increasing sample counts,
/// together with the distribution they are meant to approach.
class EstimatorTrace {
 public:
  struct Step {
    std::size_t samples;
    Dist estimate;
  };

  explicit EstimatorTrace(Dist target);

  void append(std::size_t samples, Dist estimate);

  const Dist& target() const noexcept { return target_; }
  const std::vector<Step>& steps() const noexcept { return steps_; }
  std::vector<Rational> tv_series() const;

  /// Finite-trace surrogate for consistency: the final estimate is within
  /// `tolerance` (total variation) of the target and no farther than the first.
  bool converged(const Rational& tolerance) const;

 private:
  Dist target_;
  std::vector<Step> steps_;
};

}  // namespace tokcheck
