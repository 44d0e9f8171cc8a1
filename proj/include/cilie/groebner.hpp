#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "cilie/errors.hpp"
#include "cilie/poly.hpp"

namespace cilie {

struct GroebnerLimits {
  /// Cap on the total number of stored terms during one Buchberger run.
  std::size_t max_monomials = 1'000'000;
};

/// Reduced Groebner basis together with membership certificates:
/// generators[g] == sum_i representation[g][i] * inputs[i].
struct GroebnerBasis {
  RingPtr ring;
  std::vector<Poly> inputs;
  std::vector<Poly> generators;
  std::vector<std::vector<Poly>> representation;

  std::vector<Exponent> leading_exponents() const {
    std::vector<Exponent> out;
    for (const auto& g : generators) out.push_back(g.leading_exponent());
    return out;
  }
};

struct Division {
  Poly remainder;
  std::vector<Poly> quotients;
};

/// Multivariate division: p = sum_i quotients[i] * divisors[i] + remainder,
/// with no term of the remainder divisible by any leading monomial.
inline Division divide(const Poly& p, std::span<const Poly> divisors) {
  const RingPtr& ring = p.ring();
  Division out{Poly(ring), std::vector<Poly>(divisors.size(), Poly(ring))};
  Poly h = p;
  while (!h.is_zero()) {
    const Exponent lead = h.leading_exponent();
    const Rational c = h.leading_coeff();
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const Poly& g = divisors[i];
      if (!divides(g.leading_exponent(), lead)) continue;
      const Exponent shift = lead - g.leading_exponent();
      const Rational factor = c / g.leading_coeff();
      out.quotients[i].add_term(shift, factor);
      h.add_scaled(-factor, shift, g);
      reduced = true;
      break;
    }
    if (!reduced) {
      out.remainder.add_term(lead, c);
      h.add_term(lead, -c);
    }
  }
  return out;
}

namespace detail {

struct TrackedPoly {
  Poly value;
  std::vector<Poly> rep;
};

class MonomialBudget {
 public:
  explicit MonomialBudget(std::size_t cap) : cap_(cap) {}
  void check(std::size_t used) const {
    if (used > cap_)
      throw ResourceLimitError("Groebner computation exceeded " + std::to_string(cap_) + " monomials");
  }

 private:
  std::size_t cap_;
};

inline std::size_t tracked_size(const TrackedPoly& t) {
  std::size_t n = t.value.size();
  for (const auto& r : t.rep) n += r.size();
  return n;
}

/// Fully reduces t by basis (skipping index `skip`), updating the certificate.
inline void reduce_tracked(TrackedPoly& t, const std::vector<TrackedPoly>& basis, std::size_t skip,
                           const MonomialBudget& budget, std::size_t base_usage) {
  Poly remainder(t.value.ring());
  std::size_t steps = 0;
  while (!t.value.is_zero()) {
    const Exponent lead = t.value.leading_exponent();
    const Rational c = t.value.leading_coeff();
    bool reduced = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (i == skip) continue;
      const Poly& g = basis[i].value;
      if (!divides(g.leading_exponent(), lead)) continue;
      const Exponent shift = lead - g.leading_exponent();
      const Rational factor = c / g.leading_coeff();
      t.value.add_scaled(-factor, shift, g);
      for (std::size_t k = 0; k < t.rep.size(); ++k) t.rep[k].add_scaled(-factor, shift, basis[i].rep[k]);
      reduced = true;
      break;
    }
    if (!reduced) {
      remainder.add_term(lead, c);
      t.value.add_term(lead, -c);
    }
    if (++steps % 64 == 0) budget.check(base_usage + tracked_size(t) + remainder.size());
  }
  t.value = std::move(remainder);
}

inline void make_monic(TrackedPoly& t) {
  const Rational inv = 1 / t.value.leading_coeff();
  t.value *= inv;
  for (auto& r : t.rep) r *= inv;
}

}  // namespace detail

/// Buchberger's algorithm with cofactor tracking. Pairs are processed by
/// lowest weighted degree of the lcm of leading monomials, then
/// lexicographically by index pair; pairs with coprime leading monomials
/// are skipped. The result is reduced, monic and sorted by leading monomial.
inline GroebnerBasis buchberger(const std::vector<Poly>& gens, const RingPtr& ring,
                                const GroebnerLimits& limits = {}) {
  using detail::TrackedPoly;
  const detail::MonomialBudget budget(limits.max_monomials);
  GroebnerBasis out;
  out.ring = ring;
  for (const auto& g : gens) {
    if (g.nvars() != ring->nvars()) throw std::invalid_argument("buchberger: generator from a different ring");
    out.inputs.push_back(g.in_ring(ring));
  }
  const std::size_t m = out.inputs.size();
  auto unit_rep = [&](std::size_t i) {
    std::vector<Poly> rep(m, Poly(ring));
    rep[i] = Poly::constant(ring, 1);
    return rep;
  };

  std::vector<TrackedPoly> basis;
  std::size_t usage = 0;
  std::set<std::tuple<int, std::size_t, std::size_t>> pairs;
  auto add_to_basis = [&](TrackedPoly t) {
    detail::make_monic(t);
    const std::size_t k = basis.size();
    for (std::size_t i = 0; i < k; ++i) {
      const Exponent l = lcm(basis[i].value.leading_exponent(), t.value.leading_exponent());
      pairs.emplace(ring->order.degree(l), i, k);
    }
    usage += detail::tracked_size(t);
    budget.check(usage);
    basis.push_back(std::move(t));
  };

  for (std::size_t i = 0; i < m; ++i) {
    TrackedPoly t{out.inputs[i], unit_rep(i)};
    detail::reduce_tracked(t, basis, basis.size(), budget, usage);
    if (!t.value.is_zero()) add_to_basis(std::move(t));
  }

  while (!pairs.empty()) {
    const auto [deg, i, j] = *pairs.begin();
    pairs.erase(pairs.begin());
    const Exponent& li = basis[i].value.leading_exponent();
    const Exponent& lj = basis[j].value.leading_exponent();
    const Exponent l = lcm(li, lj);
    if (l == li + lj) continue;
    TrackedPoly s{Poly(ring), std::vector<Poly>(m, Poly(ring))};
    const Exponent si = l - li, sj = l - lj;
    s.value.add_scaled(1, si, basis[i].value);
    s.value.add_scaled(-1, sj, basis[j].value);
    for (std::size_t k = 0; k < m; ++k) {
      s.rep[k].add_scaled(1, si, basis[i].rep[k]);
      s.rep[k].add_scaled(-1, sj, basis[j].rep[k]);
    }
    detail::reduce_tracked(s, basis, basis.size(), budget, usage);
    if (!s.value.is_zero()) add_to_basis(std::move(s));
  }

  // Minimize: keep elements whose leading monomial is not divisible by an
  // earlier kept one (ascending order puts divisors first).
  std::vector<std::size_t> order(basis.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ring->order.less(basis[a].value.leading_exponent(), basis[b].value.leading_exponent());
  });
  std::vector<TrackedPoly> kept;
  for (std::size_t idx : order) {
    const Exponent& lead = basis[idx].value.leading_exponent();
    bool redundant = false;
    for (const auto& k : kept)
      if (divides(k.value.leading_exponent(), lead)) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(basis[idx]);
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    detail::reduce_tracked(kept[i], kept, i, budget, usage);
    detail::make_monic(kept[i]);
  }
  for (auto& k : kept) {
    out.generators.push_back(std::move(k.value));
    out.representation.push_back(std::move(k.rep));
  }
  return out;
}

inline Poly normal_form(const Poly& p, const GroebnerBasis& gb) {
  const Poly q = p.ring() == gb.ring ? p : p.in_ring(gb.ring);
  if (gb.generators.empty()) return q;
  return divide(q, gb.generators).remainder;
}

/// Cofactors c with p == sum_i c[i] * gb.inputs[i], or nullopt if p is not
/// in the ideal.
inline std::optional<std::vector<Poly>> ideal_cofactors(const Poly& p, const GroebnerBasis& gb) {
  const Poly q = p.ring() == gb.ring ? p : p.in_ring(gb.ring);
  std::vector<Poly> out(gb.inputs.size(), Poly(gb.ring));
  if (q.is_zero()) return out;
  if (gb.generators.empty()) return std::nullopt;
  Division div = divide(q, gb.generators);
  if (!div.remainder.is_zero()) return std::nullopt;
  for (std::size_t g = 0; g < gb.generators.size(); ++g) {
    if (div.quotients[g].is_zero()) continue;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += div.quotients[g] * gb.representation[g][i];
  }
  return out;
}

}  // namespace cilie
