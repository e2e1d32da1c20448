#include "tokcheck/stochmap.hpp"

#include "tokcheck/error.hpp"

namespace tokcheck {

StochMap::StochMap(Space domain, Space codomain, Rows rows)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), rows_(std::move(rows)) {
  for (const auto& [x, row] : rows_) {
    if (!domain_.contains(x)) {
      throw Error(Errc::out_of_domain, "row \"" + to_string(x) + "\" is outside " + to_string(domain_));
    }
    if (!(row.space() == codomain_)) {
      throw Error(Errc::space_mismatch, "row \"" + to_string(x) + "\" is not a distribution on " + to_string(codomain_));
    }
  }
  if (rows_.size() != domain_.size()) {
    for (const Str& x : domain_.members()) {
      if (!rows_.contains(x)) throw Error(Errc::out_of_domain, "no row for \"" + to_string(x) + "\"");
    }
  }
}

const Dist& StochMap::kernel_at(const Str& x) const {
  auto it = rows_.find(x);
  if (it == rows_.end() || !(x.alphabet() == domain_.alphabet())) {
    throw Error(Errc::out_of_domain, "\"" + to_string(x) + "\" is not in " + to_string(domain_));
  }
  return it->second;
}

Rational StochMap::prob(const Str& y, const Str& x) const { return kernel_at(x).mass(y); }

bool operator==(const StochMap& a, const StochMap& b) {
  return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.rows_ == b.rows_;
}

StochMap compose(const StochMap& g, const StochMap& f) {
  if (!(f.codomain() == g.domain())) {
    throw Error(Errc::space_mismatch,
                "compose: codomain " + to_string(f.codomain()) + " does not match domain " + to_string(g.domain()));
  }
  StochMap::Rows rows;
  for (const auto& [x, fx] : f.rows()) rows.emplace(x, pushforward(g, fx));
  return StochMap(f.domain(), g.codomain(), std::move(rows));
}

Dist pushforward(const StochMap& f, const Dist& p) {
  if (!p.space().compatible_with(f.domain())) {
    throw Error(Errc::space_mismatch,
                "pushforward: distribution on " + to_string(p.space()) + " but map domain is " + to_string(f.domain()));
  }
  // single point masses are the common case for deterministic encoders
  if (const Str* x = p.point()) return f.kernel_at(*x);
  Dist::Masses acc;
  for (const auto& [x, px] : p.masses()) {
    for (const auto& [y, fyx] : f.kernel_at(x).masses()) acc[y] += fyx * px;
  }
  return Dist(f.codomain(), std::move(acc));
}

StochMap identity_map(const Space& space) {
  StochMap::Rows rows;
  for (const Str& x : space.members()) rows.emplace(x, Dist::point_mass(x, space));
  return StochMap(space, space, std::move(rows));
}

Verdict<Str> is_deterministic(const StochMap& f) {
  for (const auto& [x, row] : f.rows()) {
    if (row.point() == nullptr) return Verdict<Str>::fail(x);
  }
  return Verdict<Str>::pass();
}

Verdict<Collision> is_injective(const StochMap& f) {
  std::map<Str, const Str*> owner;
  for (const auto& [x, row] : f.rows()) {
    for (const auto& [y, m] : row.masses()) {
      auto [it, fresh] = owner.emplace(y, &x);
      if (!fresh) return Verdict<Collision>::fail(Collision{*it->second, x, y});
    }
  }
  return Verdict<Collision>::pass();
}

Verdict<Str> is_surjective(const StochMap& f) {
  std::set<Str> hit = support_of(f);
  if (hit.size() == f.codomain().size()) return Verdict<Str>::pass();
  for (const Str& y : f.codomain().members()) {
    if (!hit.contains(y)) return Verdict<Str>::fail(y);
  }
  return Verdict<Str>::pass();
}

std::set<Str> support_of(const StochMap& f) {
  std::set<Str> out;
  for (const auto& [x, row] : f.rows()) {
    for (const auto& [y, m] : row.masses()) out.insert(y);
  }
  return out;
}

StochMap materialize(const Procedure& proc, const Space& domain, const Space& codomain) {
  StochMap::Rows rows;
  for (const Str& x : domain.members()) {
    try {
      rows.emplace(x, proc(x));
    } catch (const Error& e) {
      throw Error(Errc::proc_undefined, "\"" + to_string(x) + "\": " + e.what());
    }
  }
  return StochMap(domain, codomain, std::move(rows));
}

StochMap materialize(const Function& fn, const Space& domain, const Space& codomain) {
  return materialize(Procedure([&](const Str& x) { return Dist::point_mass(fn(x), codomain); }), domain, codomain);
}

const Str& apply(const StochMap& f, const Str& x) {
  const Str* y = f.kernel_at(x).point();
  if (y == nullptr) throw Error(Errc::not_deterministic, "row \"" + to_string(x) + "\" is not a point mass");
  return *y;
}

}  // namespace tokcheck
