#include "tokcheck/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tokcheck/error.hpp"

namespace tokcheck {

namespace {

using boost::multiprecision::cpp_int;

void require_compatible(const Dist& p, const Dist& q, const char* op) {
  if (!p.space().compatible_with(q.space())) {
    throw Error(Errc::space_mismatch, std::string(op) + ": " + to_string(p.space()) + " vs " + to_string(q.space()));
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

cpp_int parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(Errc::parse_error, "malformed rational \"" + std::string(whole) + "\"");
  // a leading zero would make the string constructor read octal
  s.remove_prefix(std::min(s.find_first_not_of('0'), s.size() - 1));
  cpp_int v{std::string(s)};
  return negative ? cpp_int(-v) : v;
}

}  // namespace

std::string to_string(const Rational& r) {
  const cpp_int& num = boost::multiprecision::numerator(r);
  const cpp_int& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    cpp_int num = parse_integer(text.substr(0, slash), text);
    cpp_int den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw Error(Errc::parse_error, "zero denominator in \"" + std::string(text) + "\"");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) throw Error(Errc::parse_error, "malformed rational \"" + std::string(text) + "\"");
    std::string_view int_part = text.substr(0, dot);
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::string digits(int_part.substr(negative || (!int_part.empty() && int_part.front() == '+') ? 1 : 0));
    digits += frac;
    cpp_int num = parse_integer(digits, text);
    cpp_int den = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(frac.size()));
    return Rational(negative ? cpp_int(-num) : num, den);
  }
  return Rational(parse_integer(text, text));
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::invalid_argument, "uniform_below: empty range");
  // reject the top partial block so every residue is equally likely
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  while (true) {
    std::uint64_t u = rng();
    if (u < limit) return u % bound;
  }
}

Dist::Dist(Space space, Masses masses) : space_(std::move(space)) {
  Rational total = 0;
  for (auto& [x, m] : masses) {
    if (!space_.contains(x)) {
      throw Error(Errc::out_of_truncation, "\"" + to_string(x) + "\" is not in " + to_string(space_));
    }
    if (m < 0 || m > 1) throw Error(Errc::invalid_argument, "mass of \"" + to_string(x) + "\" outside [0, 1]");
    if (m == 0) continue;
    total += m;
    masses_.emplace(x, std::move(m));
  }
  if (total != 1) throw Error(Errc::invalid_argument, "masses sum to " + to_string(total) + ", not 1");
}

Dist::Dist(Space space, const std::vector<std::pair<Str, Rational>>& masses)
    : Dist(std::move(space), [&] {
        Masses m;
        for (const auto& [x, v] : masses) {
          auto [it, fresh] = m.emplace(x, v);
          if (!fresh) throw Error(Errc::invalid_argument, "duplicate support point \"" + to_string(x) + "\"");
        }
        return m;
      }()) {}

Dist Dist::point_mass(const Str& x, const Space& space) {
  Masses m;
  m.emplace(x, Rational(1));
  return Dist(space, std::move(m));
}

Dist point_mass(const Str& x, const Space& space) { return Dist::point_mass(x, space); }

Rational Dist::mass(const Str& x) const {
  auto it = masses_.find(x);
  return it == masses_.end() ? Rational(0) : it->second;
}

const Str* Dist::point() const noexcept {
  return masses_.size() == 1 ? &masses_.begin()->first : nullptr;
}

bool operator==(const Dist& a, const Dist& b) { return a.space_ == b.space_ && a.masses_ == b.masses_; }

bool same_masses(const Dist& p, const Dist& q) {
  return p.space().compatible_with(q.space()) && p.masses() == q.masses();
}

Rational l1_distance(const Dist& p, const Dist& q) {
  require_compatible(p, q, "l1_distance");
  Rational total = 0;
  // merge walk over the two canonical supports
  auto a = p.masses().begin();
  auto b = q.masses().begin();
  while (a != p.masses().end() || b != q.masses().end()) {
    if (b == q.masses().end() || (a != p.masses().end() && a->first < b->first)) {
      total += a->second;
      ++a;
    } else if (a == p.masses().end() || b->first < a->first) {
      total += b->second;
      ++b;
    } else {
      total += boost::multiprecision::abs(a->second - b->second);
      ++a;
      ++b;
    }
  }
  return total;
}

Rational tv_distance(const Dist& p, const Dist& q) { return l1_distance(p, q) / 2; }

double kl_divergence(const Dist& p, const Dist& q) {
  require_compatible(p, q, "kl_divergence");
  double total = 0.0;
  for (const auto& [x, px] : p.masses()) {
    Rational qx = q.mass(x);
    if (qx == 0) return std::numeric_limits<double>::infinity();
    total += static_cast<double>(px) * std::log(static_cast<double>(Rational(px / qx)));
  }
  return std::max(total, 0.0);
}

std::vector<Str> sample(const Dist& p, std::uint64_t seed, std::size_t n) {
  std::vector<const Str*> points;
  std::vector<std::uint64_t> thresholds;
  const cpp_int two64 = cpp_int(1) << 64;
  Rational cumulative = 0;
  for (const auto& [x, m] : p.masses()) {
    cumulative += m;
    points.push_back(&x);
    if (cumulative == 1) {
      thresholds.push_back(std::numeric_limits<std::uint64_t>::max());
    } else {
      cpp_int t = boost::multiprecision::numerator(cumulative) * two64 / boost::multiprecision::denominator(cumulative);
      thresholds.push_back(t.convert_to<std::uint64_t>());
    }
  }
  Rng rng(seed);
  std::vector<Str> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t u = rng();
    auto it = std::upper_bound(thresholds.begin(), thresholds.end(), u);
    std::size_t idx = it == thresholds.end() ? thresholds.size() - 1 : static_cast<std::size_t>(it - thresholds.begin());
    out.push_back(*points[idx]);
  }
  return out;
}

Dist empirical(std::span<const Str> samples, const Space& space) {
  if (samples.empty()) throw Error(Errc::empty_sample, "empirical estimate needs at least one sample");
  std::map<Str, std::size_t> counts;
  for (const Str& s : samples) ++counts[s];
  Dist::Masses masses;
  const auto n = static_cast<long long>(samples.size());
  for (auto& [x, c] : counts) masses.emplace(x, Rational(static_cast<long long>(c), n));
  return Dist(space, std::move(masses));
}

Dist random_dist(const Space& space, Rng& rng, std::size_t max_support, std::uint64_t max_weight) {
  std::vector<Str> members = space.members();
  std::size_t k = std::min<std::size_t>(std::max<std::size_t>(max_support, 1), members.size());
  std::size_t support = 1 + static_cast<std::size_t>(uniform_below(rng, k));
  // partial Fisher-Yates
  for (std::size_t i = 0; i < support; ++i) {
    auto j = i + static_cast<std::size_t>(uniform_below(rng, members.size() - i));
    std::swap(members[i], members[j]);
  }
  std::vector<std::uint64_t> weights(support);
  std::uint64_t total = 0;
  for (auto& w : weights) {
    w = 1 + uniform_below(rng, max_weight);
    total += w;
  }
  Dist::Masses masses;
  for (std::size_t i = 0; i < support; ++i) {
    masses.emplace(members[i], Rational(cpp_int(weights[i]), cpp_int(total)));
  }
  return Dist(space, std::move(masses));
}

EstimatorTrace::EstimatorTrace(Dist target) : target_(std::move(target)) {}

void EstimatorTrace::append(std::size_t samples, Dist estimate) {
  if (!steps_.empty() && samples <= steps_.back().samples) {
    throw Error(Errc::invalid_argument, "estimator trace sample counts must be strictly increasing");
  }
  if (!estimate.space().compatible_with(target_.space())) {
    throw Error(Errc::space_mismatch, "estimate and target live on incompatible spaces");
  }
  steps_.push_back({samples, std::move(estimate)});
}

std::vector<Rational> EstimatorTrace::tv_series() const {
  std::vector<Rational> out;
  out.reserve(steps_.size());
  for (const auto& step : steps_) out.push_back(tv_distance(step.estimate, target_));
  return out;
}

bool EstimatorTrace::converged(const Rational& tolerance) const {
  if (steps_.empty()) return false;
  Rational first = tv_distance(steps_.front().estimate, target_);
  Rational last = tv_distance(steps_.back().estimate, target_);
  return last < tolerance && last <= first;
}

}  // namespace tokcheck
