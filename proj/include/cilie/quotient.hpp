#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "cilie/errors.hpp"
#include "cilie/groebner.hpp"
#include "cilie/poly.hpp"

namespace cilie {

/// A quotient ring k[x]/(ideal) with its Groebner basis. An empty ideal list
/// presents the polynomial ring itself.
class RingPresentation {
 public:
  RingPresentation(RingPtr ring, std::vector<Poly> ideal, const GroebnerLimits& limits = {})
      : ring_(std::move(ring)), ideal_(std::move(ideal)), gb_(buchberger(ideal_, ring_, limits)) {
    for (auto& g : ideal_) g = g.in_ring(ring_);
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& ideal() const { return ideal_; }
  const GroebnerBasis& gb() const { return gb_; }
  std::size_t nvars() const { return ring_->nvars(); }

  Poly reduce(const Poly& p) const { return normal_form(p, gb_); }

  bool is_standard(const Exponent& e) const {
    for (const auto& g : gb_.generators)
      if (divides(g.leading_exponent(), e)) return false;
    return true;
  }

  /// Standard monomials of the given weighted degree, increasing in the order.
  std::vector<Exponent> standard_monomials(int degree) const {
    std::vector<Exponent> out;
    for (auto& e : monomials_of_degree(*ring_, degree))
      if (is_standard(e)) out.push_back(std::move(e));
    return out;
  }

  /// Throws GradingError unless every ideal generator is homogeneous.
  void require_homogeneous() const {
    for (const auto& g : ideal_)
      if (!g.is_homogeneous())
        throw GradingError("generator '" + g.to_string() + "' is not homogeneous for the declared weights");
  }

  bool is_homogeneous() const {
    return std::all_of(ideal_.begin(), ideal_.end(), [](const Poly& g) { return g.is_homogeneous(); });
  }

 private:
  RingPtr ring_;
  std::vector<Poly> ideal_;
  GroebnerBasis gb_;
};

/// dim_k of each weighted-graded piece of the quotient, degrees 0..max_degree.
inline std::vector<std::size_t> hilbert_function(const RingPresentation& r, int max_degree) {
  r.require_homogeneous();
  std::vector<std::size_t> out;
  for (int d = 0; d <= max_degree; ++d) out.push_back(r.standard_monomials(d).size());
  return out;
}

/// Krull dimension of k[x]/(monomials): the largest set of variables
/// containing the support of none of the monomials.
inline std::size_t monomial_krull_dimension(const std::vector<Exponent>& monomials, std::size_t nvars) {
  if (nvars > 24) throw ResourceLimitError("too many variables for subset enumeration");
  std::vector<unsigned long> supports;
  for (const auto& m : monomials) {
    unsigned long s = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m[i] > 0) s |= 1ul << i;
    supports.push_back(s);
  }
  std::size_t best = 0;
  for (unsigned long subset = 0; subset < (1ul << nvars); ++subset) {
    const auto size = static_cast<std::size_t>(__builtin_popcountl(subset));
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [&](unsigned long s) { return (s & ~subset) == 0; });
    if (independent) best = size;
  }
  return best;
}

inline std::size_t krull_dimension(const RingPresentation& r) {
  return monomial_krull_dimension(r.gb().leading_exponents(), r.nvars());
}

/// For homogeneous generators: regular iff the quotient has dimension
/// nvars - count (graded complete intersections are Cohen-Macaulay).
inline bool is_regular_sequence(const std::vector<Poly>& gens, const RingPtr& ring,
                                const GroebnerLimits& limits = {}) {
  RingPresentation r(ring, gens, limits);
  r.require_homogeneous();
  if (gens.size() > r.nvars()) return false;
  return krull_dimension(r) == r.nvars() - gens.size();
}

/// O(Y_n) = k[x]/(f_1^n, ..., f_s^n).
inline RingPresentation tower_ring(const std::vector<Poly>& gens, unsigned n, const RingPtr& ring,
                                   const GroebnerLimits& limits = {}) {
  if (n == 0) throw InputError("tower stage n must be positive");
  std::vector<Poly> powers;
  for (const auto& f : gens) powers.push_back(f.in_ring(ring).pow(n));
  return RingPresentation(ring, std::move(powers), limits);
}

/// True iff every pairwise product of the ideal generators vanishes in r.
inline bool is_square_zero(const RingPresentation& r, const std::vector<Poly>& ideal_gens) {
  for (std::size_t i = 0; i < ideal_gens.size(); ++i)
    for (std::size_t j = i; j < ideal_gens.size(); ++j)
      if (!r.reduce(ideal_gens[i] * ideal_gens[j]).is_zero()) return false;
  return true;
}

/// Generators of (f)^k: all products f_{j1}...f_{jk}, j1 <= ... <= jk.
inline std::vector<Poly> ideal_power_generators(const std::vector<Poly>& gens, unsigned k, const RingPtr& ring) {
  std::vector<Poly> out;
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t start, const Poly& acc) -> void {
    if (idx.size() == k) {
      out.push_back(acc);
      return;
    }
    for (std::size_t j = start; j < gens.size(); ++j) {
      idx.push_back(j);
      self(self, j, acc * gens[j].in_ring(ring));
      idx.pop_back();
    }
  };
  rec(rec, 0, Poly::constant(ring, 1));
  return out;
}

/// Checks that Y -> Y_n is a chain of square-zero extensions: for
/// k = n-1 down to 1, the image of (f)^k squares to zero in
/// k[x]/((f)^{k+1} + (f_1^n, ..., f_s^n)).
inline std::vector<bool> square_zero_filtration(const std::vector<Poly>& gens, unsigned n, const RingPtr& ring,
                                                const GroebnerLimits& limits = {}) {
  if (n == 0) throw InputError("tower stage n must be positive");
  std::vector<bool> stages;
  std::vector<Poly> top;
  for (const auto& f : gens) top.push_back(f.in_ring(ring).pow(n));
  for (unsigned k = n - 1; k >= 1; --k) {
    std::vector<Poly> ideal = ideal_power_generators(gens, k + 1, ring);
    ideal.insert(ideal.end(), top.begin(), top.end());
    RingPresentation stage(ring, std::move(ideal), limits);
    stages.push_back(is_square_zero(stage, ideal_power_generators(gens, k, ring)));
  }
  return stages;
}

}  // namespace cilie
