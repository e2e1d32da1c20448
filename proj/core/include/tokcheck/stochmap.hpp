#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>

#include "tokcheck/dist.hpp"
#include "tokcheck/strings.hpp"

namespace tokcheck {

/// Boolean outcome of a checker plus the first counterexample found, in
/// canonical enumeration order.
template <class Witness>
struct Verdict {
  bool holds = true;
  std::optional<Witness> witness;

  explicit operator bool() const noexcept { return holds; }

  static Verdict pass() { return Verdict{true, std::nullopt}; }
  static Verdict fail(Witness w) { return Verdict{false, std::move(w)}; }
};

/// Stochastic map between two finite spaces: each domain string is assigned a
/// distribution over the codomain. Total on the domain and immutable.
class StochMap {
 public:
  using Rows = std::map<Str, Dist>;

  StochMap(Space domain, Space codomain, Rows rows);

  const Space& domain() const noexcept { return domain_; }
  const Space& codomain() const noexcept { return codomain_; }
  const Rows& rows() const noexcept { return rows_; }

  /// The row f(· | x). Throws OutOfDomain.
  const Dist& kernel_at(const Str& x) const;
  /// f(y | x).
  Rational prob(const Str& y, const Str& x) const;

  friend bool operator==(const StochMap& a, const StochMap& b);

 private:
  Space domain_;
  Space codomain_;
  Rows rows_;
};

inline const Dist& kernel_at(const StochMap& f, const Str& x) { return f.kernel_at(x); }

/// g ∘ f, with gf(z | x) = Σ_y g(z | y) f(y | x). Requires cod(f) = dom(g).
StochMap compose(const StochMap& g, const StochMap& f);

/// f p, with (f p)(y) = Σ_x f(y | x) p(x). p may live on any space compatible
/// with dom(f) as long as its support lies inside dom(f).
Dist pushforward(const StochMap& f, const Dist& p);

StochMap identity_map(const Space& space);

Verdict<Str> is_deterministic(const StochMap& f);

struct Collision {
  Str first;   // earlier input in canonical order
  Str second;  // later input sharing an output with `first`
  Str image;   // the shared output
};
Verdict<Collision> is_injective(const StochMap& f);

/// Witness is the first codomain string receiving no mass.
Verdict<Str> is_surjective(const StochMap& f);

std::set<Str> support_of(const StochMap& f);

using Procedure = std::function<Dist(const Str&)>;
using Function = std::function<Str(const Str&)>;

/// Tabulate a procedural map over every string of `domain`. Any library error
/// raised by `proc` is rethrown as ProcUndefinedAt naming the input.
StochMap materialize(const Procedure& proc, const Space& domain, const Space& codomain);
StochMap materialize(const Function& fn, const Space& domain, const Space& codomain);

/// The value of a deterministic map at x. Throws NotDeterministic.
const Str& apply(const StochMap& f, const Str& x);

}  // namespace tokcheck
