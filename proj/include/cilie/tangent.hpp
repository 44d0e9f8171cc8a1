#pragma once

// Fiber of the tangent complex of Z = f^{-1}(0) at a rational point z and
// the graded Lie algebra g = g1 + g2 it carries:
//   g1 = Ker(df|_z)   (degree 1),   g2 = Coker(df|_z)   (degree 2),
// with bracket Sym^2(g1) -> g2 given by the Hessian of f. The Hessian is
// computed twice: from second partials directly, and as the connecting map
// of the order <= 2 differential operator diagram.

#include <cstddef>
#include <functional>
#include <vector>

#include "cilie/errors.hpp"
#include "cilie/linalg.hpp"
#include "cilie/poly.hpp"

namespace cilie {

/// Symmetric bilinear map V x V -> W stored as values[i][j] in W.
class SymmetricBracket {
 public:
  SymmetricBracket() = default;
  SymmetricBracket(std::size_t source_dim, std::size_t target_dim)
      : source_dim_(source_dim),
        target_dim_(target_dim),
        values_(source_dim, std::vector<Vector>(source_dim, Vector(target_dim))) {}

  std::size_t source_dim() const { return source_dim_; }
  std::size_t target_dim() const { return target_dim_; }

  const Vector& operator()(std::size_t i, std::size_t j) const { return values_[i][j]; }

  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, const Vector& v) {
    if (v.size() != target_dim_) throw std::invalid_argument("bracket value has wrong length");
    values_[i][j] = v;
    values_[j][i] = v;
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < source_dim_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (values_[i][j] != values_[j][i]) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& row : values_)
      for (const auto& v : row)
        if (!cilie::is_zero(v)) return false;
    return true;
  }

  /// Rank of the induced linear map Sym^2(V) -> W.
  std::size_t rank() const {
    std::vector<Vector> cols;
    for (std::size_t i = 0; i < source_dim_; ++i)
      for (std::size_t j = i; j < source_dim_; ++j) cols.push_back(values_[i][j]);
    return cilie::rank(RatMatrix::from_columns(target_dim_, cols));
  }

  friend bool operator==(const SymmetricBracket& a, const SymmetricBracket& b) {
    return a.source_dim_ == b.source_dim_ && a.target_dim_ == b.target_dim_ && a.values_ == b.values_;
  }

 private:
  std::size_t source_dim_ = 0;
  std::size_t target_dim_ = 0;
  std::vector<std::vector<Vector>> values_;
};

/// Index of the monomial d_i d_j (i <= j) in the lexicographic basis of Sym^2 of an n-dim space.
inline std::size_t sym2_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

inline std::size_t sym2_dim(std::size_t n) { return n * (n + 1) / 2; }

struct TangentComplexFiber {
  RatMatrix jacobian;
  std::vector<Vector> g1_basis;
  RatMatrix g2_projection;
};

namespace detail {

inline void check_point(const std::vector<Poly>& f, const Vector& z) {
  for (const auto& fj : f) {
    if (fj.nvars() != z.size()) throw InputError("point length does not match the number of variables");
    if (fj.evaluate(z) != 0)
      throw OffLocusError("point is not on the zero locus: " + fj.to_string() + " evaluates to " +
                          to_string(fj.evaluate(z)));
  }
}

inline std::size_t ambient_dim(const std::vector<Poly>& f, const Vector& z) {
  return f.empty() ? z.size() : f.front().nvars();
}

/// hessians[k](i, j) = d^2 f_k / dx_i dx_j at z.
inline std::vector<RatMatrix> hessians_at(const std::vector<Poly>& f, const Vector& z) {
  const std::size_t n = ambient_dim(f, z);
  std::vector<RatMatrix> out;
  for (const auto& fk : f) {
    RatMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const Poly di = fk.derivative(i);
      for (std::size_t j = i; j < n; ++j) {
        h(i, j) = di.derivative(j).evaluate(z);
        h(j, i) = h(i, j);
      }
    }
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace detail

/// m x n matrix of first partials of f at z; z must lie on f = 0.
inline RatMatrix jacobian_at(const std::vector<Poly>& f, const Vector& z) {
  detail::check_point(f, z);
  const std::size_t n = detail::ambient_dim(f, z);
  RatMatrix j(f.size(), n);
  for (std::size_t k = 0; k < f.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) j(k, i) = f[k].derivative(i).evaluate(z);
  return j;
}

inline TangentComplexFiber tangent_fiber(const std::vector<Poly>& f, const Vector& z) {
  TangentComplexFiber t;
  t.jacobian = jacobian_at(f, z);
  t.g1_basis = kernel_basis(t.jacobian);
  t.g2_projection = cokernel_presentation(t.jacobian);
  return t;
}

/// B(u, v) = P( sum_{i,j} u_i v_j Hess(f)_{ij}(z) ) on kernel basis vectors,
/// P the cokernel projection.
inline SymmetricBracket hessian_direct(const std::vector<Poly>& f, const Vector& z) {
  const TangentComplexFiber t = tangent_fiber(f, z);
  const auto hess = detail::hessians_at(f, z);
  const std::size_t a = t.g1_basis.size();
  SymmetricBracket b(a, t.g2_projection.rows());
  for (std::size_t p = 0; p < a; ++p)
    for (std::size_t q = p; q < a; ++q) {
      const Vector& u = t.g1_basis[p];
      const Vector& v = t.g1_basis[q];
      Vector w(f.size());
      for (std::size_t k = 0; k < f.size(); ++k) {
        const Vector hv = hess[k].apply(v);
        Rational acc;
        for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * hv[i];
        w[k] = acc;
      }
      b.set(p, q, t.g2_projection.apply(w));
    }
  return b;
}

/// The fiber at z of the diagram of order <= 2 differential operators
/// modulo order 0:
///
///   0 -> T_X  -> F2 D_X / F0 D_X       -> Sym^2 T_X  -> 0
///          |df        | push-forward         | Sym^2 df
///   0 -> f*T_Y -> f*(F2 D_Y / F0 D_Y)  -> Sym^2 f*T_Y -> 0
///
/// Middle spaces use the basis (d_1..d_n, then d_i d_j for i <= j).
struct DiffOpFiber {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  SnakeDiagram diagram;
};

inline DiffOpFiber diffop_fiber(const std::vector<Poly>& f, const Vector& z) {
  const RatMatrix jac = jacobian_at(f, z);
  const auto hess = detail::hessians_at(f, z);
  const std::size_t n = jac.cols(), m = jac.rows();
  const std::size_t sn = sym2_dim(n), sm = sym2_dim(m);

  auto row = [](std::size_t dim, std::size_t sym) {
    ExactRow r{RatMatrix(dim + sym, dim), RatMatrix(sym, dim + sym)};
    for (std::size_t i = 0; i < dim; ++i) r.inclusion(i, i) = 1;
    for (std::size_t i = 0; i < sym; ++i) r.projection(i, dim + i) = 1;
    return r;
  };

  // (sum_k J_ki d'_k)(sum_l J_lj d'_l) in the Sym^2 basis of the target;
  // for k != l both orderings land on the same basis monomial.
  auto quadratic_part = [&](std::size_t i, std::size_t j) {
    Vector v(sm);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) v[sym2_index(k, l, m)] += jac(k, i) * jac(l, j);
    return v;
  };

  DiffOpFiber out;
  out.source_dim = n;
  out.target_dim = m;
  SnakeDiagram& d = out.diagram;
  d.top = row(n, sn);
  d.bottom = row(m, sm);
  d.left = jac;
  d.right = RatMatrix(sm, sn);
  d.middle = RatMatrix(m + sm, n + sn);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < m; ++k) d.middle(k, i) = jac(k, i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t col = sym2_index(i, j, n);
      const Vector q = quadratic_part(i, j);
      for (std::size_t r = 0; r < sm; ++r) {
        d.right(r, col) = q[r];
        d.middle(m + r, n + col) = q[r];
      }
      for (std::size_t k = 0; k < m; ++k) d.middle(k, n + col) = hess[k](i, j);
    }
  return out;
}

/// Hessian as snake boundary Ker(Sym^2 df) -> Coker(df), precomposed with
/// Sym^2(Ker df) -> Ker(Sym^2 df). Same bases as hessian_direct.
inline SymmetricBracket hessian_snake(const std::vector<Poly>& f, const Vector& z,
                                      const std::function<Rational()>& lift_noise = {}) {
  const TangentComplexFiber t = tangent_fiber(f, z);
  const DiffOpFiber fiber = diffop_fiber(f, z);
  const SubquotientMap boundary = snake_boundary(fiber.diagram, lift_noise);
  const std::size_t n = fiber.source_dim;
  const RatMatrix domain = RatMatrix::from_columns(sym2_dim(n), boundary.domain_basis);

  const std::size_t a = t.g1_basis.size();
  SymmetricBracket b(a, boundary.codomain_projection.rows());
  for (std::size_t p = 0; p < a; ++p)
    for (std::size_t q = p; q < a; ++q) {
      const Vector& u = t.g1_basis[p];
      const Vector& v = t.g1_basis[q];
      Vector product(sym2_dim(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) product[sym2_index(i, j, n)] += u[i] * v[j];
      // u.v is symmetric: each off-diagonal monomial picked up u_i v_j + u_j v_i.
      auto coords = solve(domain, product);
      if (!coords) throw DiagramError("symmetric product of kernel vectors is not in Ker(Sym^2 df)");
      b.set(p, q, boundary.map.apply(*coords));
    }
  return b;
}

struct TangentLieAlgebra {
  TangentComplexFiber fiber;
  std::size_t g1_dim = 0;
  std::size_t g2_dim = 0;
  SymmetricBracket bracket;
  SymmetricBracket snake_bracket;
  bool constructions_agree = false;
};

inline TangentLieAlgebra tangent_lie(const std::vector<Poly>& f, const Vector& z) {
  TangentLieAlgebra g;
  g.fiber = tangent_fiber(f, z);
  g.g1_dim = g.fiber.g1_basis.size();
  g.g2_dim = g.fiber.g2_projection.rows();
  g.bracket = hessian_direct(f, z);
  g.snake_bracket = hessian_snake(f, z);
  g.constructions_agree = g.bracket == g.snake_bracket;
  return g;
}

}  // namespace cilie
