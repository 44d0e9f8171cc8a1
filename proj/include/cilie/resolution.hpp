#pragma once

// Graded free resolutions over R = k[x]/(f_1..f_c). Every graded piece of a
// free module is finite-dimensional, so kernels and minimal generators are
// computed degree by degree with exact linear algebra on the standard
// monomial bases.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cilie/errors.hpp"
#include "cilie/linalg.hpp"
#include "cilie/poly.hpp"
#include "cilie/quotient.hpp"

namespace cilie {

/// Dense matrix of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Poly(ring_)) {}

  static PolyMatrix from_columns(RingPtr ring, std::size_t rows, const std::vector<std::vector<Poly>>& columns) {
    PolyMatrix m(std::move(ring), rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Poly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::vector<Poly> column(std::size_t c) const {
    std::vector<Poly> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Poly& p) { return p.is_zero(); });
  }

  /// Entrywise constant terms.
  RatMatrix constant_part() const {
    RatMatrix m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).constant_term();
    return m;
  }

  /// Product in the polynomial ring, no reduction.
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("polynomial matrix shapes do not compose");
    RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
    PolyMatrix out(ring, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Poly& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r].push_back((*this)(r, c).to_string());
    return out;
  }

 private:
  RingPtr ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Poly> entries_;
};

inline PolyMatrix reduce(const RingPresentation& r, const PolyMatrix& m) {
  PolyMatrix out(r.ring(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = r.reduce(m(i, j));
  return out;
}

/// Generators in twists[g] (weighted degree); column s of relations is the
/// relation sum_r relations(r, s) e_r.
struct GradedModulePresentation {
  std::vector<int> twists;
  PolyMatrix relations;
};

/// F_0..F_D by generator twists, d_i: F_i -> F_{i-1} stored at differentials[i - 1].
struct FreeResolution {
  std::vector<std::vector<int>> twists;
  std::vector<PolyMatrix> differentials;
  bool minimal = true;

  std::size_t length() const { return differentials.size(); }
  const PolyMatrix& d(std::size_t i) const { return differentials.at(i - 1); }

  std::vector<std::size_t> betti() const {
    std::vector<std::size_t> out;
    for (const auto& t : twists) out.push_back(t.size());
    return out;
  }
};

struct ResolutionLimits {
  GroebnerLimits groebner;
  std::size_t max_width = 1000;
};

/// Degree pieces of graded free R-modules in the basis
/// (generator g, standard monomial m of degree e - twist[g]), ordered by g
/// and then increasingly in the monomial order.
class GradedSlices {
 public:
  explicit GradedSlices(const RingPresentation& r) : r_(r) {}

  const RingPresentation& ring() const { return r_; }

  const std::vector<Exponent>& monomials(int degree) {
    auto it = monomials_.find(degree);
    if (it == monomials_.end()) {
      std::vector<Exponent> ms = degree < 0 ? std::vector<Exponent>{} : r_.standard_monomials(degree);
      std::map<Exponent, std::size_t> index;
      for (std::size_t i = 0; i < ms.size(); ++i) index.emplace(ms[i], i);
      indices_.emplace(degree, std::move(index));
      it = monomials_.emplace(degree, std::move(ms)).first;
    }
    return it->second;
  }

  std::size_t dim(const std::vector<int>& twists, int e) {
    std::size_t n = 0;
    for (int t : twists) n += monomials(e - t).size();
    return n;
  }

  /// Homogeneous column of reduced polynomials -> coordinates in F_e.
  Vector to_vector(const std::vector<Poly>& column, const std::vector<int>& twists, int e) {
    Vector v(dim(twists, e));
    std::size_t offset = 0;
    for (std::size_t g = 0; g < twists.size(); ++g) {
      const int d = e - twists[g];
      const std::size_t width = monomials(d).size();
      for (const auto& [m, c] : column[g].terms()) {
        auto it = indices_.at(d).find(m);
        if (r_.ring()->order.degree(m) != d || it == indices_.at(d).end())
          throw GradingError("module element is not homogeneous of degree " + std::to_string(e));
        v[offset + it->second] = c;
      }
      offset += width;
    }
    return v;
  }

  std::vector<Poly> from_vector(const Vector& v, const std::vector<int>& twists, int e) {
    std::vector<Poly> out;
    std::size_t offset = 0;
    for (int t : twists) {
      const auto& ms = monomials(e - t);
      Poly p(r_.ring());
      for (std::size_t i = 0; i < ms.size(); ++i)
        if (v[offset + i] != 0) p.add_term(ms[i], v[offset + i]);
      out.push_back(std::move(p));
      offset += ms.size();
    }
    return out;
  }

  /// Normal form of x^m, cached.
  const Poly& monomial_nf(const Exponent& m) {
    auto it = nf_.find(m);
    if (it == nf_.end()) it = nf_.emplace(m, r_.reduce(Poly::monomial(r_.ring(), m))).first;
    return it->second;
  }

  /// x^m * p reduced, for p already in normal form.
  Poly times_monomial(const Exponent& m, const Poly& p) {
    Poly out(r_.ring());
    for (const auto& [a, c] : p.terms()) out.add_scaled(c, Exponent(m.size(), 0), monomial_nf(m + a));
    return out;
  }

  /// The degree e piece of d: F -> G as a matrix dim G_e x dim F_e.
  RatMatrix map_matrix(const PolyMatrix& d, const std::vector<int>& source, const std::vector<int>& target, int e) {
    const std::size_t rows = dim(target, e);
    std::vector<Vector> cols;
    for (std::size_t s = 0; s < source.size(); ++s)
      for (const auto& m : monomials(e - source[s])) {
        std::vector<Poly> image;
        for (std::size_t r = 0; r < target.size(); ++r) image.push_back(times_monomial(m, d(r, s)));
        cols.push_back(to_vector(image, target, e));
      }
    return RatMatrix::from_columns(rows, cols);
  }

  /// x_i * v for v in F_e, as a vector of F_{e + w_i}.
  Vector times_variable(std::size_t i, const Vector& v, const std::vector<int>& twists, int e) {
    const int w = r_.ring()->weights()[i];
    Exponent xi(r_.nvars(), 0);
    xi[i] = 1;
    std::vector<Poly> column = from_vector(v, twists, e);
    for (auto& p : column) p = times_monomial(xi, p);
    return to_vector(column, twists, e + w);
  }

 private:
  const RingPresentation& r_;
  std::map<int, std::vector<Exponent>> monomials_;
  std::map<int, std::map<Exponent, std::size_t>> indices_;
  std::map<Exponent, Poly> nf_;
};

namespace detail {

inline std::vector<Vector> rref_rows(const std::vector<Vector>& vectors, std::size_t width) {
  if (vectors.empty()) return {};
  RatMatrix m = RatMatrix::from_rows(width, vectors);
  RrefResult r = rref(m);
  std::vector<Vector> out;
  for (std::size_t i = 0; i < r.rank; ++i) {
    auto row = r.reduced.row(i);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

/// Canonical basis of N ∩ {v : v vanishes on the pivot columns of rref(W)},
/// a complement of W in N when W ⊆ N.
inline std::vector<Vector> canonical_complement(const std::vector<Vector>& n, const std::vector<Vector>& w,
                                                std::size_t width) {
  const auto wr = rref_rows(w, width);
  std::vector<std::size_t> pivots;
  for (const auto& row : wr) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    pivots.push_back(p);
  }
  std::vector<Vector> reduced;
  for (Vector v : n) {
    for (std::size_t k = 0; k < wr.size(); ++k) {
      const Rational c = v[pivots[k]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < width; ++j) v[j] -= c * wr[k][j];
    }
    if (!is_zero(v)) reduced.push_back(std::move(v));
  }
  return rref_rows(reduced, width);
}

inline int max_degree_of_entries(const PolyMatrix& m) {
  int best = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero()) best = std::max(best, m(r, c).weighted_degree());
  return best;
}

}  // namespace detail

/// A generating set of a graded submodule N of F, minimal: each new
/// generator in degree e spans N_e modulo R_+ N_e = sum_i x_i N_{e - w_i}.
/// `piece(e)` returns a spanning set of N_e; degrees outside [lo, hi] are
/// treated as zero below lo and ignored above hi.
struct GeneratedSubmodule {
  std::vector<int> degrees;
  std::vector<std::vector<Poly>> generators;
};

template <class Piece>
GeneratedSubmodule minimal_generators(GradedSlices& slices, const std::vector<int>& twists, int lo, int hi,
                                      Piece&& piece) {
  GeneratedSubmodule out;
  std::map<int, std::vector<Vector>> basis;
  const auto& weights = slices.ring().ring()->weights();
  for (int e = lo; e <= hi; ++e) {
    const std::size_t width = slices.dim(twists, e);
    auto n = detail::rref_rows(piece(e), width);
    if (n.empty()) continue;
    std::vector<Vector> w;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      auto it = basis.find(e - weights[i]);
      if (it == basis.end()) continue;
      for (const auto& v : it->second) w.push_back(slices.times_variable(i, v, twists, e - weights[i]));
    }
    for (const auto& g : detail::canonical_complement(n, w, width)) {
      out.degrees.push_back(e);
      out.generators.push_back(slices.from_vector(g, twists, e));
    }
    basis.emplace(e, std::move(n));
  }
  return out;
}

namespace detail {

/// Degrees of the relation columns; throws GradingError on inhomogeneous columns.
inline std::vector<std::optional<int>> column_degrees(const PolyMatrix& m, const std::vector<int>& twists) {
  std::vector<std::optional<int>> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::optional<int> deg;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const Poly& p = m(r, c);
      if (p.is_zero()) continue;
      auto h = p.homogeneous_degree();
      if (!h) throw GradingError("relation entry '" + p.to_string() + "' is not homogeneous");
      const int d = *h + twists[r];
      if (deg && *deg != d) throw GradingError("relation column " + std::to_string(c + 1) + " is not homogeneous");
      deg = d;
    }
    out.push_back(deg);
  }
  return out;
}

inline void check_width(std::size_t width, const ResolutionLimits& limits) {
  if (width > limits.max_width)
    throw ResourceLimitError("free module of rank " + std::to_string(width) + " exceeds the resolution width cap " +
                             std::to_string(limits.max_width));
}

inline void require_complete_intersection(const RingPresentation& r, const GroebnerLimits& limits) {
  r.require_homogeneous();
  if (!is_regular_sequence(r.ideal(), r.ring(), limits))
    throw NotCompleteIntersectionError("the ideal generators do not form a regular sequence");
}

/// Step between consecutive generator degrees that the kernel search allows for.
inline int syzygy_reach(const RingPresentation& r, const PolyMatrix& d1) {
  int reach = 1;
  for (int w : r.ring()->weights()) reach = std::max(reach, w);
  int fmax = 0;
  for (const auto& f : r.ideal()) fmax = std::max(fmax, f.weighted_degree());
  return reach + fmax + max_degree_of_entries(d1);
}

}  // namespace detail

/// Cancels relations with a unit entry against the generator they kill, then
/// replaces the relations by a minimal generating set of their span.
/// Returns F_0 twists and d_1.
inline std::pair<std::vector<int>, PolyMatrix> minimal_presentation(const RingPresentation& r,
                                                                    const GradedModulePresentation& m) {
  if (m.relations.cols() > 0 && m.relations.rows() != m.twists.size())
    throw InputError("relation matrix has " + std::to_string(m.relations.rows()) + " rows for " +
                     std::to_string(m.twists.size()) + " generators");
  std::vector<int> twists = m.twists;
  std::vector<std::vector<Poly>> cols;
  for (std::size_t c = 0; c < m.relations.cols(); ++c) {
    std::vector<Poly> col;
    for (std::size_t i = 0; i < twists.size(); ++i) col.push_back(r.reduce(m.relations(i, c).in_ring(r.ring())));
    cols.push_back(std::move(col));
  }
  detail::column_degrees(PolyMatrix::from_columns(r.ring(), twists.size(), cols), twists);

  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> unit;
    for (std::size_t c = 0; c < cols.size() && !unit; ++c)
      for (std::size_t g = 0; g < twists.size() && !unit; ++g)
        if (!cols[c][g].is_zero() && cols[c][g].weighted_degree() == 0 && cols[c][g].homogeneous_degree() == 0)
          unit = std::make_pair(g, c);
    if (!unit) break;
    const auto [g, c] = *unit;
    const Rational u = cols[c][g].constant_term();
    const std::vector<Poly> pivot = cols[c];
    std::vector<std::vector<Poly>> next;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (k == c) continue;
      std::vector<Poly> col = cols[k];
      const Poly factor = col[g] * (Rational(1) / u);
      if (!factor.is_zero())
        for (std::size_t i = 0; i < twists.size(); ++i) col[i] = r.reduce(col[i] - factor * pivot[i]);
      col.erase(col.begin() + static_cast<long>(g));
      next.push_back(std::move(col));
    }
    twists.erase(twists.begin() + static_cast<long>(g));
    cols = std::move(next);
  }

  PolyMatrix rel = PolyMatrix::from_columns(r.ring(), twists.size(), cols);
  auto degs = detail::column_degrees(rel, twists);
  std::vector<int> rel_twists;
  std::vector<std::size_t> nonzero;
  for (std::size_t c = 0; c < degs.size(); ++c)
    if (degs[c]) {
      rel_twists.push_back(*degs[c]);
      nonzero.push_back(c);
    }
  if (nonzero.empty()) return {twists, PolyMatrix(r.ring(), twists.size(), 0)};

  GradedSlices slices(r);
  const int lo = *std::min_element(rel_twists.begin(), rel_twists.end());
  const int hi = *std::max_element(rel_twists.begin(), rel_twists.end());
  auto gens = minimal_generators(slices, twists, lo, hi, [&](int e) {
    std::vector<Vector> span;
    for (std::size_t k = 0; k < nonzero.size(); ++k)
      for (const auto& mono : slices.monomials(e - rel_twists[k])) {
        std::vector<Poly> col;
        for (const auto& p : cols[nonzero[k]]) col.push_back(slices.times_monomial(mono, p));
        span.push_back(slices.to_vector(col, twists, e));
      }
    return span;
  });
  return {twists, PolyMatrix::from_columns(r.ring(), twists.size(), gens.generators)};
}

namespace detail {

/// Extra kernel elements that are redundant by construction: the sum of the
/// first and last generator (twice the first if there is only one) when
/// their degrees agree, and x_v times the
/// first generator for the first variable not killing it.
inline void add_redundant_generators(GradedSlices& slices, GeneratedSubmodule& gens) {
  if (gens.generators.empty()) return;
  const std::size_t last = gens.generators.size() - 1;
  std::vector<std::vector<Poly>> extra;
  std::vector<int> degs;
  if (gens.degrees[0] == gens.degrees[last]) {
    std::vector<Poly> sum;
    for (std::size_t i = 0; i < gens.generators[0].size(); ++i)
      sum.push_back(gens.generators[0][i] + gens.generators[last][i]);
    extra.push_back(std::move(sum));
    degs.push_back(gens.degrees[0]);
  }
  const RingPtr& ring = slices.ring().ring();
  for (std::size_t v = 0; v < ring->nvars(); ++v) {
    Exponent xv(ring->nvars(), 0);
    xv[v] = 1;
    std::vector<Poly> col;
    bool nonzero = false;
    for (const auto& p : gens.generators[0]) {
      col.push_back(slices.times_monomial(xv, p));
      nonzero = nonzero || !col.back().is_zero();
    }
    if (nonzero) {
      extra.push_back(std::move(col));
      degs.push_back(gens.degrees[0] + ring->weights()[v]);
      break;
    }
  }
  for (std::size_t k = 0; k < extra.size(); ++k) {
    gens.generators.push_back(std::move(extra[k]));
    gens.degrees.push_back(degs[k]);
  }
}

inline FreeResolution resolve(const RingPresentation& r, const GradedModulePresentation& m, int max_degree,
                              bool minimal, const ResolutionLimits& limits) {
  if (max_degree < 0) throw InputError("resolution length must be non-negative");
  require_complete_intersection(r, limits.groebner);
  auto [f0, d1] = minimal_presentation(r, m);
  FreeResolution res;
  res.minimal = minimal;
  check_width(f0.size(), limits);
  res.twists.push_back(f0);
  if (max_degree == 0) return res;

  GradedSlices slices(r);
  const int reach = syzygy_reach(r, d1);
  if (!minimal) {
    auto degs = column_degrees(d1, f0);
    GeneratedSubmodule rel;
    for (std::size_t c = 0; c < d1.cols(); ++c) {
      rel.generators.push_back(d1.column(c));
      rel.degrees.push_back(*degs[c]);
    }
    add_redundant_generators(slices, rel);
    d1 = PolyMatrix::from_columns(r.ring(), f0.size(), rel.generators);
    res.twists.push_back(rel.degrees);
  } else {
    std::vector<int> t1;
    for (const auto& d : column_degrees(d1, f0)) t1.push_back(*d);
    res.twists.push_back(t1);
  }
  check_width(d1.cols(), limits);
  res.differentials.push_back(d1);

  for (int i = 1; i < max_degree; ++i) {
    const auto& src = res.twists[static_cast<std::size_t>(i)];
    const auto& dst = res.twists[static_cast<std::size_t>(i) - 1];
    const PolyMatrix& d = res.differentials.back();
    GeneratedSubmodule gens;
    if (!src.empty()) {
      const int lo = *std::min_element(src.begin(), src.end());
      const int hi = *std::max_element(src.begin(), src.end()) + reach;
      gens = minimal_generators(slices, src, lo, hi,
                                [&](int e) { return kernel_basis(slices.map_matrix(d, src, dst, e)); });
      if (!minimal) add_redundant_generators(slices, gens);
    }
    check_width(gens.generators.size(), limits);
    res.differentials.push_back(PolyMatrix::from_columns(r.ring(), src.size(), gens.generators));
    res.twists.push_back(gens.degrees);
  }
  return res;
}

}  // namespace detail

/// Minimal graded free resolution F_D -> ... -> F_0 -> M.
inline FreeResolution minimal_resolution(const RingPresentation& r, const GradedModulePresentation& m, int max_degree,
                                         const ResolutionLimits& limits = {}) {
  return detail::resolve(r, m, max_degree, true, limits);
}

/// A resolution of M padded with redundant generators at every step.
inline FreeResolution nonminimal_resolution(const RingPresentation& r, const GradedModulePresentation& m,
                                            int max_degree, const ResolutionLimits& limits = {}) {
  return detail::resolve(r, m, max_degree, false, limits);
}

/// d_{i-1} d_i = 0 in R for every consecutive pair.
inline bool is_complex(const RingPresentation& r, const FreeResolution& res) {
  for (std::size_t i = 2; i <= res.length(); ++i)
    if (!reduce(r, res.d(i - 1) * res.d(i)).is_zero()) return false;
  return true;
}

/// No entry of any differential has a nonzero constant term.
inline bool has_no_unit_entries(const FreeResolution& res) {
  for (const auto& d : res.differentials)
    if (!d.constant_part().is_zero()) return false;
  return true;
}

/// dim Ext^i(M, k) = dim Hom(F_i, k) cohomology, from any resolution:
/// beta_i - rank d_i(0) - rank d_{i+1}(0), for i < length.
inline std::vector<std::size_t> ext_dims_from_resolution(const FreeResolution& res) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < res.length(); ++i) {
    std::size_t v = res.twists[i].size();
    if (i >= 1) v -= rank(res.d(i).constant_part());
    v -= rank(res.d(i + 1).constant_part());
    out.push_back(v);
  }
  return out;
}

/// R/(generators) with one generator in the given twist.
inline GradedModulePresentation cyclic_module(const RingPtr& ring, const std::vector<Poly>& relations, int twist = 0) {
  GradedModulePresentation m{{twist}, PolyMatrix(ring, 1, relations.size())};
  for (std::size_t c = 0; c < relations.size(); ++c) m.relations(0, c) = relations[c];
  return m;
}

/// The residue field k = R/(x_1..x_n), generated in the given twist.
inline GradedModulePresentation residue_field(const RingPtr& ring, int twist = 0) {
  std::vector<Poly> vars;
  for (std::size_t i = 0; i < ring->nvars(); ++i) vars.push_back(Poly::variable(ring, i));
  return cyclic_module(ring, vars, twist);
}

}  // namespace cilie
