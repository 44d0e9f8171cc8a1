#pragma once

// Ext^*(M, k) from a minimal resolution, the degree-2 cohomology operators
// chi_1..chi_c acting on it, and the degreewise finite-generation test.
//
// Operators come from lifting: with d~ the differential read over k[x],
// d~_{i-1} d~_i = sum_j f_j t~_j, and t_j = t~_j mod (f) is a chain
// endomorphism of degree -2. On Ext^* = Hom(F, k) the operator is the
// transpose of the constant part of t_j.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cilie/errors.hpp"
#include "cilie/linalg.hpp"
#include "cilie/resolution.hpp"

namespace cilie {

/// t[j][i]: F_i -> F_{i-2} for i in [2, length]; t[j][0], t[j][1] are empty.
struct EisenbudOperators {
  std::vector<std::vector<PolyMatrix>> t;
};

/// dims[i] = dim Ext^i for i = 0..D; chi[j][i]: Ext^{i-2} -> Ext^i for i >= 2.
struct ExtModule {
  std::vector<std::size_t> dims;
  std::vector<std::vector<RatMatrix>> chi;

  std::size_t operator_count() const { return chi.size(); }
  std::size_t top_degree() const { return dims.empty() ? 0 : dims.size() - 1; }
};

namespace detail {

inline Poly homogeneous_part(const Poly& p, int degree) {
  Poly out(p.ring());
  for (const auto& [m, c] : p.terms())
    if (p.ring()->order.degree(m) == degree) out.add_term(m, c);
  return out;
}

inline Poly random_form(std::mt19937_64& rng, const RingPtr& ring, int degree) {
  Poly out(ring);
  if (degree < 0) return out;
  std::uniform_int_distribution<int> coef(-2, 2);
  for (const auto& m : monomials_of_degree(*ring, degree)) out.add_term(m, coef(rng));
  return out;
}

/// Every f_j lies in the square of the maximal ideal at the origin.
inline void require_no_linear_part(const RingPresentation& r) {
  for (const auto& f : r.ideal())
    for (const auto& [m, c] : f.terms()) {
      int total = 0;
      for (int k : m) total += k;
      if (total > 1) continue;
      std::string what = total == 0 ? "a constant term" : "a linear term in " + r.ring()->names[0];
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] == 1) what = "a linear term in " + r.ring()->names[i];
      throw ReduceVariablesError("'" + f.to_string() + "' has " + what +
                                 "; eliminate that variable before computing operators");
    }
}

}  // namespace detail

/// Eisenbud operators on a minimal resolution. With `rng`, the lift of each
/// differential is perturbed by multiples of the f_j and the cofactors by
/// Koszul syzygies, giving a different but homotopic choice.
inline EisenbudOperators eisenbud_ops(const RingPresentation& r, const FreeResolution& res,
                                      std::mt19937_64* rng = nullptr) {
  detail::require_no_linear_part(r);
  if (!res.minimal) throw InputError("Eisenbud operators need a minimal resolution");
  const auto& f = r.ideal();
  const std::size_t c = f.size();
  std::vector<int> fdeg;
  for (const auto& fj : f) fdeg.push_back(fj.weighted_degree());

  std::vector<PolyMatrix> lifts;
  for (std::size_t i = 1; i <= res.length(); ++i) {
    PolyMatrix d = res.d(i);
    if (rng) {
      const auto& src = res.twists[i];
      const auto& dst = res.twists[i - 1];
      for (std::size_t a = 0; a < d.rows(); ++a)
        for (std::size_t b = 0; b < d.cols(); ++b)
          for (std::size_t j = 0; j < c; ++j)
            d(a, b) += f[j] * detail::random_form(*rng, r.ring(), src[b] - dst[a] - fdeg[j]);
    }
    lifts.push_back(std::move(d));
  }

  EisenbudOperators ops;
  ops.t.assign(c, std::vector<PolyMatrix>(std::min<std::size_t>(2, res.length() + 1)));
  for (std::size_t i = 2; i <= res.length(); ++i) {
    const PolyMatrix p = lifts[i - 2] * lifts[i - 1];
    const auto& src = res.twists[i];
    const auto& dst = res.twists[i - 2];
    std::vector<PolyMatrix> t(c, PolyMatrix(r.ring(), dst.size(), src.size()));
    for (std::size_t a = 0; a < dst.size(); ++a)
      for (std::size_t b = 0; b < src.size(); ++b) {
        auto cof = ideal_cofactors(p(a, b), r.gb());
        if (!cof) throw NotAComplexError("d_" + std::to_string(i - 1) + " d_" + std::to_string(i) + " is not zero mod the ideal");
        const int deg = src[b] - dst[a];
        for (std::size_t j = 0; j < c; ++j) (*cof)[j] = detail::homogeneous_part((*cof)[j], deg - fdeg[j]);
        if (rng)
          for (std::size_t j = 0; j < c; ++j)
            for (std::size_t k = j + 1; k < c; ++k) {
              const Poly h = detail::random_form(*rng, r.ring(), deg - fdeg[j] - fdeg[k]);
              (*cof)[j] += f[k] * h;
              (*cof)[k] -= f[j] * h;
            }
        for (std::size_t j = 0; j < c; ++j) t[j](a, b) = r.reduce((*cof)[j]);
      }
    for (std::size_t j = 0; j < c; ++j) ops.t[j].push_back(std::move(t[j]));
  }
  return ops;
}

/// d_{i-2} t_j^{(i)} = t_j^{(i-1)} d_i in R wherever both sides are defined.
inline bool operators_are_chain_maps(const RingPresentation& r, const FreeResolution& res,
                                     const EisenbudOperators& ops) {
  for (const auto& tj : ops.t)
    for (std::size_t i = 3; i <= res.length(); ++i) {
      const PolyMatrix lhs = reduce(r, res.d(i - 2) * tj[i]);
      const PolyMatrix rhs = reduce(r, tj[i - 1] * res.d(i));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

/// Induced maps on Ext: chi[j][i] = (t_j^{(i)}(0))^T : Ext^{i-2} -> Ext^i.
inline ExtModule ext_from(const FreeResolution& res, const EisenbudOperators& ops) {
  ExtModule e;
  e.dims = res.betti();
  for (const auto& tj : ops.t) {
    std::vector<RatMatrix> chi(std::min<std::size_t>(2, e.dims.size()));
    for (std::size_t i = 2; i < tj.size(); ++i) chi.push_back(tj[i].constant_part().transpose());
    e.chi.push_back(std::move(chi));
  }
  return e;
}

struct ExtComputation {
  FreeResolution resolution;
  EisenbudOperators operators;
  ExtModule ext;
};

/// Ext^i(M, k) for i = 0..D with its operators.
inline ExtComputation ext_module(const RingPresentation& r, const GradedModulePresentation& m, int max_degree,
                                 const ResolutionLimits& limits = {}, std::mt19937_64* rng = nullptr) {
  ExtComputation out;
  out.resolution = minimal_resolution(r, m, max_degree, limits);
  out.operators = eisenbud_ops(r, out.resolution, rng);
  out.ext = ext_from(out.resolution, out.operators);
  return out;
}

/// chi_j chi_k = chi_k chi_j as maps Ext^i -> Ext^{i+4} for i + 4 <= top.
inline bool operators_commute(const ExtModule& e, std::size_t top) {
  for (std::size_t j = 0; j < e.chi.size(); ++j)
    for (std::size_t k = j + 1; k < e.chi.size(); ++k)
      for (std::size_t i = 0; i + 4 <= top && i + 4 < e.dims.size(); ++i)
        if (!(e.chi[j][i + 4] * e.chi[k][i + 2] == e.chi[k][i + 4] * e.chi[j][i + 2])) return false;
  return true;
}

enum class FGStatus { CertifiedFG, WindowFG, NotFGWithinWindow };

inline const char* to_string(FGStatus s) {
  switch (s) {
    case FGStatus::CertifiedFG: return "CertifiedFG";
    case FGStatus::WindowFG: return "WindowFG";
    case FGStatus::NotFGWithinWindow: return "NotFGWithinWindow";
  }
  return "?";
}

/// How a CertifiedFG verdict was established.
struct FGCertificate {
  enum class Kind { Periodic, Terminates } kind = Kind::Periodic;
  std::size_t start = 0;  // d_{start+2} = d_start and d_{start+3} = d_{start+1}; or F_start = 0
};

struct FGVerdict {
  FGStatus status = FGStatus::NotFGWithinWindow;
  std::vector<int> generator_degrees;
  int window_lo = 0;
  int window_hi = 0;
  std::vector<std::size_t> minimal_generators;  // G_i for i = 0..window_hi
  std::vector<int> offending_degrees;
  std::optional<FGCertificate> certificate;
};

inline std::pair<int, int> default_window(int top = 10) { return {(top + 1) / 2, top}; }

namespace detail {

inline std::optional<FGCertificate> find_certificate(const FreeResolution& res, std::size_t operator_count,
                                                     int top) {
  for (std::size_t i = 0; i < res.twists.size() && static_cast<int>(i) <= top; ++i)
    if (res.twists[i].empty()) return FGCertificate{FGCertificate::Kind::Terminates, i};
  if (operator_count != 1) return std::nullopt;
  for (std::size_t i = 1; static_cast<int>(i) + 3 <= top && i + 3 <= res.length(); ++i)
    if (res.d(i + 2) == res.d(i) && res.d(i + 3) == res.d(i + 1))
      return FGCertificate{FGCertificate::Kind::Periodic, i};
  return std::nullopt;
}

}  // namespace detail

/// G_i = Ext^i / sum_j chi_j(Ext^{i-2}). WindowFG when G vanishes on the
/// window [lo, hi]; CertifiedFG when in addition the resolution terminates,
/// or c = 1 and the differentials repeat with period 2.
inline FGVerdict fg_check(const ExtModule& e, int lo, int hi, const FreeResolution* res = nullptr) {
  if (lo < 2 || hi < lo + 2) throw InputError("window [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                              "] must satisfy 2 <= D0 and D0 + 2 <= D");
  if (static_cast<int>(e.top_degree()) < hi || e.dims.empty())
    throw InputError("Ext is known only through degree " + std::to_string(e.top_degree()) +
                     ", short of the window end " + std::to_string(hi));
  FGVerdict v;
  v.window_lo = lo;
  v.window_hi = hi;
  for (int i = 0; i <= hi; ++i) {
    const std::size_t di = e.dims[static_cast<std::size_t>(i)];
    std::size_t image = 0;
    if (i >= 2 && di > 0) {
      std::vector<Vector> cols;
      for (const auto& chi : e.chi) {
        const RatMatrix& m = chi.at(static_cast<std::size_t>(i));
        if (m.rows() != di) throw InputError("operator shape does not match dim Ext^" + std::to_string(i));
        for (std::size_t k = 0; k < m.cols(); ++k) cols.push_back(m.column(k));
      }
      image = rank(RatMatrix::from_columns(di, cols));
    }
    v.minimal_generators.push_back(di - image);
  }
  for (int i = lo; i <= hi; ++i)
    if (v.minimal_generators[static_cast<std::size_t>(i)] != 0) v.offending_degrees.push_back(i);
  if (!v.offending_degrees.empty()) return v;
  v.status = FGStatus::WindowFG;
  for (int i = 0; i < lo; ++i)
    for (std::size_t k = 0; k < v.minimal_generators[static_cast<std::size_t>(i)]; ++k) v.generator_degrees.push_back(i);
  if (res) {
    v.certificate = detail::find_certificate(*res, e.operator_count(), hi);
    if (v.certificate) v.status = FGStatus::CertifiedFG;
  }
  return v;
}

struct CoherenceReport {
  ExtComputation computation;
  FGVerdict verdict;
  bool chain_maps = false;
  bool operators_commute = false;
};

inline CoherenceReport coherence_report(const RingPresentation& r, const GradedModulePresentation& m, int lo, int hi,
                                        const ResolutionLimits& limits = {}) {
  CoherenceReport out;
  out.computation = ext_module(r, m, hi, limits);
  out.verdict = fg_check(out.computation.ext, lo, hi, &out.computation.resolution);
  out.chain_maps = operators_are_chain_maps(r, out.computation.resolution, out.computation.operators);
  out.operators_commute = cilie::operators_commute(out.computation.ext, static_cast<std::size_t>(hi));
  return out;
}

}  // namespace cilie
