#pragma once

// Finite semifree DG modules over A = k[chi_1..chi_c], chi_j in cohomological
// degree 2, and their minimal models: entries of the differential with an
// invertible constant term are cancelled one at a time, each cancellation
// removing a contractible two-term summand.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cilie/errors.hpp"
#include "cilie/linalg.hpp"
#include "cilie/poly.hpp"
#include "cilie/quotient.hpp"
#include "cilie/resolution.hpp"

namespace cilie {

/// Generators e_s in degrees[s]; d(e_s) = sum_r differential(r, s) e_r with
/// differential(r, s) homogeneous of degree degrees[s] + 1 - degrees[r].
struct DGModule {
  RingPtr ring;
  std::vector<int> degrees;
  PolyMatrix differential;

  std::size_t rank() const { return degrees.size(); }
};

inline RingPtr operator_ring(std::size_t c) {
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= c; ++j) names.push_back("chi" + std::to_string(j));
  return make_ring(std::move(names), std::vector<int>(c, 2));
}

/// dims[n - lo] = dim H^n for n in [lo, hi].
struct GradedCohomology {
  int lo = 0;
  int hi = -1;
  std::vector<std::size_t> dims;

  std::size_t at(int n) const { return n < lo || n > hi ? 0 : dims[static_cast<std::size_t>(n - lo)]; }
};

namespace detail {

inline std::vector<int> shifted_down(const std::vector<int>& degrees) {
  std::vector<int> out;
  for (int d : degrees) out.push_back(d - 1);
  return out;
}

}  // namespace detail

/// Throws GradingError on shape or degree mismatches and NotAComplexError if d^2 != 0.
inline void check_dg_module(const DGModule& m) {
  const std::size_t n = m.rank();
  if (m.differential.rows() != n || m.differential.cols() != n)
    throw InputError("differential must be " + std::to_string(n) + " x " + std::to_string(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      const Poly& p = m.differential(r, s);
      if (p.is_zero()) continue;
      const int want = m.degrees[s] + 1 - m.degrees[r];
      if (p.homogeneous_degree() != want)
        throw GradingError("differential entry (" + std::to_string(r + 1) + ", " + std::to_string(s + 1) + ") = '" +
                           p.to_string() + "' should be homogeneous of degree " + std::to_string(want));
    }
  if (!(m.differential * m.differential).is_zero()) throw NotAComplexError("d^2 is not zero");
}

/// H^n = dim M_n - rank d_n - rank d_{n-1}, M_n = sum_s A_{n - deg e_s}.
inline GradedCohomology dg_cohomology(const DGModule& m, int lo, int hi) {
  GradedCohomology h{lo, hi, {}};
  RingPresentation a(m.ring, {});
  GradedSlices slices(a);
  const auto target = detail::shifted_down(m.degrees);
  auto rank_at = [&](int n) { return rank(slices.map_matrix(m.differential, m.degrees, target, n)); };
  std::size_t incoming = rank_at(lo - 1);
  for (int n = lo; n <= hi; ++n) {
    const std::size_t outgoing = rank_at(n);
    h.dims.push_back(slices.dim(m.degrees, n) - outgoing - incoming);
    incoming = outgoing;
  }
  return h;
}

/// Lowest degree in which the cohomology can be nonzero.
inline int lowest_degree(const DGModule& m) {
  int lo = 0;
  for (std::size_t s = 0; s < m.rank(); ++s) lo = s == 0 ? m.degrees[s] : std::min(lo, m.degrees[s]);
  return lo;
}

/// True iff some differential entry has a nonzero constant term.
inline bool has_unit_entries(const DGModule& m) { return !m.differential.constant_part().is_zero(); }

struct MinimalModel {
  DGModule module;
  bool perfect = true;
  GradedCohomology cohomology;
  std::size_t cancellations = 0;
};

/// Cancels a unit entry u = d(r, s): d' = d - d(:, s) u^{-1} d(r, :) on the
/// generators other than e_r and e_s. Repeats until no unit entry is left.
/// The input is finite, so the minimal model is finitely generated and
/// `perfect` is always true; cohomology is reported on [lowest degree, hi].
inline MinimalModel minimize_dg(const DGModule& input, int hi) {
  check_dg_module(input);
  MinimalModel out;
  DGModule m = input;
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    for (std::size_t s = 0; s < m.rank() && !unit; ++s)
      for (std::size_t r = 0; r < m.rank() && !unit; ++r)
        if (m.differential(r, s).constant_term() != 0) unit = std::make_pair(r, s);
    if (!unit) break;
    const auto [r, s] = *unit;
    const Rational inv = Rational(1) / m.differential(r, s).constant_term();
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < m.rank(); ++k)
      if (k != r && k != s) keep.push_back(k);
    DGModule next{m.ring, {}, PolyMatrix(m.ring, keep.size(), keep.size())};
    for (std::size_t a = 0; a < keep.size(); ++a) {
      next.degrees.push_back(m.degrees[keep[a]]);
      for (std::size_t b = 0; b < keep.size(); ++b) {
        Poly entry = m.differential(keep[a], keep[b]);
        const Poly& left = m.differential(keep[a], s);
        const Poly& right = m.differential(r, keep[b]);
        if (!left.is_zero() && !right.is_zero()) entry -= left * right * inv;
        next.differential(a, b) = std::move(entry);
      }
    }
    m = std::move(next);
    ++out.cancellations;
  }
  out.cohomology = dg_cohomology(m, lowest_degree(input), hi);
  out.module = std::move(m);
  return out;
}

}  // namespace cilie
