#pragma once

// Random input generators shared by the unit and acceptance suites.

#include <random>
#include <tuple>
#include <string>
#include <vector>

#include "cilie/dgmodule.hpp"
#include "cilie/poly.hpp"

namespace cilie::randgen {

inline Rational random_small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  return make_rational(num(rng), den(rng));
}

inline Poly random_poly(std::mt19937_64& rng, const RingPtr& ring, int max_degree, int terms, int coef_range = 3) {
  std::uniform_int_distribution<int> coef(-coef_range, coef_range), deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, ring->nvars() - 1);
  Poly p(ring);
  for (int t = 0; t < terms; ++t) {
    Exponent e(ring->nvars(), 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    p.add_term(e, coef(rng));
  }
  return p;
}

/// A polynomial map f: Q^n -> Q^m of degree <= max_degree vanishing at a
/// random rational point. Each component independently has its linear part
/// at the point removed with probability 1/2, so the Jacobian is often
/// degenerate and the bracket nontrivial.
struct RandomMapAtZero {
  RingPtr ring;
  std::vector<Poly> map;
  Vector point;
};

inline RandomMapAtZero random_map_at_zero(std::mt19937_64& rng, std::size_t n, std::size_t m, int max_degree) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  RandomMapAtZero out{make_ring(names), {}, Vector(n)};
  for (auto& zi : out.point) zi = random_small_rational(rng);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<int> terms(1, 5);
  for (std::size_t k = 0; k < m; ++k) {
    Poly g = random_poly(rng, out.ring, max_degree, terms(rng));
    g -= Poly::constant(out.ring, g.evaluate(out.point));
    if (coin(rng)) {
      for (std::size_t i = 0; i < n; ++i) {
        const Rational slope = g.derivative(i).evaluate(out.point);
        g -= (Poly::variable(out.ring, i) - Poly::constant(out.ring, out.point[i])) * slope;
      }
    }
    out.map.push_back(std::move(g));
  }
  return out;
}

/// A finite semifree DG module over k[chi_1..chi_c] assembled from free
/// generators, identity cones and monomial cones d(e) = chi^a e', then
/// conjugated by a random unitriangular automorphism. `expected(n)` is the
/// cohomology read off the blocks.
struct RandomDGModule {
  DGModule module;
  std::vector<int> free_degrees;                    // H gets A shifted to these degrees
  std::vector<std::pair<int, Exponent>> quotients;  // A/(chi^a) at degree of e'

  std::size_t expected(int n) const {
    std::size_t h = 0;
    const RingPresentation a(module.ring, {});
    auto dim_a = [&](int d) { return d < 0 ? std::size_t{0} : a.standard_monomials(d).size(); };
    for (int d : free_degrees) h += dim_a(n - d);
    for (const auto& [deg, mono] : quotients) {
      const int shift = a.ring()->order.degree(mono);
      h += dim_a(n - deg) - dim_a(n - deg - shift);
    }
    return h;
  }
};

inline RandomDGModule random_dg_module(std::mt19937_64& rng, std::size_t c, std::size_t max_generators) {
  RandomDGModule out;
  out.module.ring = operator_ring(c);
  const RingPtr& ring = out.module.ring;
  std::uniform_int_distribution<int> kind(0, 2), degree(-3, 3), power(1, 2), coef(-2, 2);
  std::uniform_int_distribution<std::size_t> var(0, c - 1);
  std::vector<std::tuple<std::size_t, std::size_t, Poly>> entries;
  auto& degs = out.module.degrees;
  while (degs.size() < max_generators) {
    const int k = kind(rng);
    const int d = degree(rng);
    if (k == 0 || degs.size() + 2 > max_generators) {
      degs.push_back(d);
      out.free_degrees.push_back(d);
      continue;
    }
    Exponent mono(c, 0);
    if (k == 2)
      for (int a = power(rng); a > 0; --a) ++mono[var(rng)];
    const int shift = ring->order.degree(mono);
    degs.push_back(d);
    degs.push_back(d + 1 - shift);
    entries.emplace_back(degs.size() - 1, degs.size() - 2, Poly::monomial(ring, mono));
    if (k == 2) out.quotients.emplace_back(d + 1 - shift, mono);
  }
  const std::size_t n = degs.size();
  PolyMatrix base(ring, n, n);
  for (const auto& [r, s, p] : entries) base(r, s) = p;

  // P = 1 + N with N strictly upper triangular for the order (degree, index).
  auto before = [&](std::size_t r, std::size_t s) { return degs[r] < degs[s] || (degs[r] == degs[s] && r < s); };
  PolyMatrix nil(ring, n, n);
  std::bernoulli_distribution sparse(0.5);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      const int gap = degs[s] - degs[r];
      if (!before(r, s) || gap % 2 != 0 || !sparse(rng)) continue;
      Poly p(ring);
      for (const auto& m : monomials_of_degree(*ring, gap)) p.add_term(m, coef(rng));
      nil(r, s) = p;
    }
  PolyMatrix id(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = Poly::constant(ring, 1);
  PolyMatrix p = id, inv = id, power_n = id;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) += nil(i, j);
  for (std::size_t k = 1; k <= n; ++k) {
    power_n = power_n * nil;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (k % 2 == 1)
          inv(i, j) -= power_n(i, j);
        else
          inv(i, j) += power_n(i, j);
      }
  }
  out.module.differential = p * base * inv;
  return out;
}

}  // namespace cilie::randgen
