#pragma once

// Exact linear algebra over Q. Basis conventions are deterministic and
// downstream code relies on them:
//   * rref pivots on the first nonzero entry of each column, scanning rows
//     top-down from the current pivot row;
//   * kernel_basis emits one vector per non-pivot column, in column order,
//     with that free coordinate set to 1 and the other free coordinates 0;
//   * cokernel_presentation stacks the kernel basis of the transpose as rows.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cilie/errors.hpp"
#include "cilie/matrix.hpp"

namespace cilie {

struct RrefResult {
  RatMatrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

inline RrefResult rref(const RatMatrix& m) {
  RrefResult out{m, {}, 0};
  RatMatrix& a = out.reduced;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < a.rows() && a(r, c) == 0) ++r;
    if (r == a.rows()) continue;
    if (r != pivot_row)
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(r, k), a(pivot_row, k));
    const Rational inv = 1 / a(pivot_row, c);
    for (std::size_t k = c; k < a.cols(); ++k) a(pivot_row, k) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == pivot_row || a(i, c) == 0) continue;
      const Rational factor = a(i, c);
      for (std::size_t k = c; k < a.cols(); ++k)
        if (a(pivot_row, k) != 0) a(i, k) -= factor * a(pivot_row, k);
    }
    out.pivots.push_back(c);
    ++pivot_row;
  }
  out.rank = out.pivots.size();
  return out;
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).rank; }

inline std::vector<Vector> kernel_basis(const RatMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Surjection from the codomain of m onto Coker(m), as a (rows - rank) x rows
/// matrix P with P * m = 0.
inline RatMatrix cokernel_presentation(const RatMatrix& m) {
  return RatMatrix::from_rows(m.rows(), kernel_basis(m.transpose()));
}

/// A solution of m x = b with all free coordinates zero, or nullopt when b
/// is outside the column space.
inline std::optional<Vector> solve(const RatMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  const RrefResult red = rref(aug);
  if (!red.pivots.empty() && red.pivots.back() == m.cols()) return std::nullopt;
  Vector x(m.cols());
  for (std::size_t i = 0; i < red.rank; ++i) x[red.pivots[i]] = red.reduced(i, m.cols());
  return x;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const RrefResult r = rref(hstack(m, RatMatrix::identity(n)));
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

/// Row-reduced basis of the column space of m (as vectors).
inline std::vector<Vector> column_space_basis(const RatMatrix& m) {
  const RrefResult r = rref(m.transpose());
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < r.rank; ++i) {
    auto row = r.reduced.row(i);
    basis.emplace_back(row.begin(), row.end());
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Snake lemma

/// 0 -> A --inclusion--> B --projection--> C -> 0
struct ExactRow {
  RatMatrix inclusion;
  RatMatrix projection;

  std::size_t left_dim() const { return inclusion.cols(); }
  std::size_t middle_dim() const { return inclusion.rows(); }
  std::size_t right_dim() const { return projection.rows(); }
};

/// Two exact rows joined by vertical maps left: A -> A', middle: B -> B',
/// right: C -> C'.
struct SnakeDiagram {
  ExactRow top;
  ExactRow bottom;
  RatMatrix left;
  RatMatrix middle;
  RatMatrix right;
};

/// A linear map Ker(domain map) -> Coker(codomain map). `map` is expressed in
/// the coordinates of `domain_basis` and of the rows of `codomain_projection`.
struct SubquotientMap {
  std::vector<Vector> domain_basis;
  RatMatrix codomain_projection;
  RatMatrix map;
};

namespace detail {

inline void check_row_exact(const ExactRow& row, const char* which) {
  const auto& i = row.inclusion;
  const auto& p = row.projection;
  if (p.cols() != i.rows())
    throw DiagramError(std::string(which) + " row: projection does not compose with inclusion");
  if (!(p * i).is_zero())
    throw ExactnessError(std::string(which) + " row: projection after inclusion is nonzero");
  const std::size_t ri = rank(i), rp = rank(p);
  if (ri != i.cols()) throw ExactnessError(std::string(which) + " row: inclusion is not injective");
  if (rp != p.rows()) throw ExactnessError(std::string(which) + " row: projection is not surjective");
  if (ri + rp != i.rows()) throw ExactnessError(std::string(which) + " row: not exact in the middle");
}

}  // namespace detail

/// Connecting map Ker(right) -> Coker(left) computed by lift, push, project.
/// `lift_noise`, when set, supplies coefficients that move each lift along
/// Ker(top projection); the result does not depend on them.
inline SubquotientMap snake_boundary(const SnakeDiagram& d,
                                     const std::function<Rational()>& lift_noise = {}) {
  detail::check_row_exact(d.top, "top");
  detail::check_row_exact(d.bottom, "bottom");
  auto shape = [](const RatMatrix& m, std::size_t r, std::size_t c) {
    return m.rows() == r && m.cols() == c;
  };
  if (!shape(d.left, d.bottom.left_dim(), d.top.left_dim()) ||
      !shape(d.middle, d.bottom.middle_dim(), d.top.middle_dim()) ||
      !shape(d.right, d.bottom.right_dim(), d.top.right_dim()))
    throw DiagramError("vertical map shapes do not match the rows");
  if (!(d.middle * d.top.inclusion == d.bottom.inclusion * d.left))
    throw DiagramError("left square does not commute");
  if (!(d.right * d.top.projection == d.bottom.projection * d.middle))
    throw DiagramError("right square does not commute");

  SubquotientMap out;
  out.domain_basis = kernel_basis(d.right);
  out.codomain_projection = cokernel_presentation(d.left);
  out.map = RatMatrix(out.codomain_projection.rows(), out.domain_basis.size());

  const auto lift_freedom = lift_noise ? kernel_basis(d.top.projection) : std::vector<Vector>{};
  for (std::size_t k = 0; k < out.domain_basis.size(); ++k) {
    auto lift = solve(d.top.projection, out.domain_basis[k]);
    if (!lift) throw ExactnessError("top projection failed to lift a kernel vector");
    for (const auto& dir : lift_freedom) {
      const Rational t = lift_noise();
      for (std::size_t i = 0; i < lift->size(); ++i) (*lift)[i] += t * dir[i];
    }
    const Vector pushed = d.middle.apply(*lift);
    auto pre = solve(d.bottom.inclusion, pushed);
    if (!pre) throw DiagramError("pushed lift is not in the image of the bottom inclusion");
    const Vector image = out.codomain_projection.apply(*pre);
    for (std::size_t r = 0; r < image.size(); ++r) out.map(r, k) = image[r];
  }
  return out;
}

}  // namespace cilie
