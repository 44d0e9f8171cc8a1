#pragma once

// Chevalley-Eilenberg cochains of a tangent Lie algebra g = g1 + g2 in the
// dual model: k[y_1..y_a] (y dual to g1, even) tensor an exterior algebra on
// e_1..e_b (e dual to g2, odd), with d(y_i) = 0 and d(e_j) = q_j, the
// quadric obtained by polarizing the bracket. This is the Koszul complex of
// (q_1, ..., q_b); slices are indexed by exterior degree p and y-degree.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "cilie/linalg.hpp"
#include "cilie/poly.hpp"
#include "cilie/tangent.hpp"

namespace cilie {

struct ChevalleyComplex {
  RingPtr ring;                    // k[y_1..y_a]
  std::size_t odd_count = 0;       // b
  std::vector<Poly> differential;  // q_j = d(e_j)

  std::size_t even_count() const { return ring->nvars(); }
};

/// dims[p][e] for exterior degree p in [0, b] and y-degree e in [0, D].
struct GradedDims {
  std::vector<std::vector<std::size_t>> dims;

  std::size_t at(std::size_t p, std::size_t e) const { return dims.at(p).at(e); }
};

inline RingPtr chevalley_ring(std::size_t even_count) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= even_count; ++i) names.push_back("y" + std::to_string(i));
  return make_ring(std::move(names));
}

/// q_j(y) = 1/2 sum_{k,l} <e_j, B(e_k, e_l)> y_k y_l.
inline ChevalleyComplex chevalley_cochain(const SymmetricBracket& bracket) {
  ChevalleyComplex ce;
  ce.ring = chevalley_ring(bracket.source_dim());
  ce.odd_count = bracket.target_dim();
  const std::size_t a = bracket.source_dim();
  for (std::size_t j = 0; j < ce.odd_count; ++j) {
    Poly q(ce.ring);
    for (std::size_t k = 0; k < a; ++k)
      for (std::size_t l = 0; l < a; ++l) {
        Exponent e(a, 0);
        ++e[k];
        ++e[l];
        q.add_term(e, bracket(k, l)[j] / 2);
      }
    ce.differential.push_back(std::move(q));
  }
  return ce;
}

inline ChevalleyComplex chevalley_cochain(const TangentLieAlgebra& g) { return chevalley_cochain(g.bracket); }

/// Reads the quadratic part of d back as a bracket: off-diagonal values are
/// the y_k y_l coefficients, diagonal values twice the y_k^2 coefficients.
inline SymmetricBracket extract_bracket(const ChevalleyComplex& ce) {
  const std::size_t a = ce.even_count();
  SymmetricBracket b(a, ce.odd_count);
  for (std::size_t k = 0; k < a; ++k)
    for (std::size_t l = k; l < a; ++l) {
      Exponent e(a, 0);
      ++e[k];
      ++e[l];
      Vector v(ce.odd_count);
      for (std::size_t j = 0; j < ce.odd_count; ++j) {
        v[j] = ce.differential[j].coeff(e);
        if (k == l) v[j] *= 2;
      }
      b.set(k, l, v);
    }
  return b;
}

namespace detail {

/// Subsets of {0..b-1} of size p, as sorted index lists in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t b, std::size_t p) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == p) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < b; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// One slice of the complex: basis e_J * y^m with |J| = p and deg m = e.
class ChevalleySlices {
 public:
  explicit ChevalleySlices(const ChevalleyComplex& ce) : ce_(ce) {}

  std::size_t dim(std::size_t p, int e) const {
    if (p > ce_.odd_count || e < 0) return 0;
    return detail::subsets(ce_.odd_count, p).size() * monomials_of_degree(*ce_.ring, e).size();
  }

  /// d: C^p_e -> C^{p-1}_{e+2}, d(e_J y^m) = sum_t (-1)^t q_{J_t} y^m e_{J \ J_t}.
  RatMatrix differential(std::size_t p, int e) const {
    if (p == 0 || p > ce_.odd_count || e < 0) return RatMatrix(p == 0 ? 0 : dim(p - 1, e + 2), dim(p, e));
    const auto src_sets = detail::subsets(ce_.odd_count, p);
    const auto dst_sets = detail::subsets(ce_.odd_count, p - 1);
    const auto src_monos = monomials_of_degree(*ce_.ring, e);
    const auto dst_monos = monomials_of_degree(*ce_.ring, e + 2);
    RatMatrix m(dst_sets.size() * dst_monos.size(), src_sets.size() * src_monos.size());
    auto set_index = [&](const std::vector<std::size_t>& s) {
      return static_cast<std::size_t>(std::lower_bound(dst_sets.begin(), dst_sets.end(), s) - dst_sets.begin());
    };
    auto mono_index = [&](const Exponent& x) {
      auto it = std::lower_bound(dst_monos.begin(), dst_monos.end(), x,
                                 [&](const Exponent& a, const Exponent& b) { return ce_.ring->order.less(a, b); });
      return static_cast<std::size_t>(it - dst_monos.begin());
    };
    for (std::size_t s = 0; s < src_sets.size(); ++s)
      for (std::size_t mi = 0; mi < src_monos.size(); ++mi) {
        const std::size_t col = s * src_monos.size() + mi;
        for (std::size_t t = 0; t < p; ++t) {
          std::vector<std::size_t> rest = src_sets[s];
          rest.erase(rest.begin() + static_cast<long>(t));
          const std::size_t row_block = set_index(rest) * dst_monos.size();
          const Rational sign = t % 2 == 0 ? 1 : -1;
          for (const auto& [x, c] : ce_.differential[src_sets[s][t]].terms())
            m(row_block + mono_index(x + src_monos[mi]), col) += sign * c;
        }
      }
    return m;
  }

 private:
  const ChevalleyComplex& ce_;
};

inline GradedDims ce_cohomology(const ChevalleyComplex& ce, int max_degree) {
  ChevalleySlices slices(ce);
  GradedDims out;
  for (std::size_t p = 0; p <= ce.odd_count; ++p) {
    std::vector<std::size_t> row;
    for (int e = 0; e <= max_degree; ++e) {
      const std::size_t outgoing = p == 0 ? 0 : rank(slices.differential(p, e));
      const std::size_t incoming = e >= 2 ? rank(slices.differential(p + 1, e - 2)) : 0;
      row.push_back(slices.dim(p, e) - outgoing - incoming);
    }
    out.dims.push_back(std::move(row));
  }
  return out;
}

/// d o d = 0 on every slice with source y-degree <= max_degree.
inline bool differential_squares_to_zero(const ChevalleyComplex& ce, int max_degree) {
  ChevalleySlices slices(ce);
  for (std::size_t p = 2; p <= ce.odd_count; ++p)
    for (int e = 0; e <= max_degree; ++e)
      if (!(slices.differential(p - 1, e + 2) * slices.differential(p, e)).is_zero()) return false;
  return true;
}

}  // namespace cilie
