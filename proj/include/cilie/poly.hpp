#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cilie/errors.hpp"
#include "cilie/rational.hpp"

namespace cilie {

using Exponent = std::vector<int>;

enum class OrderKind { grevlex, lex };

/// A multiplicative total order on monomials. grevlex compares weighted
/// degree first, then breaks ties reverse-lexicographically.
struct MonomialOrder {
  OrderKind kind = OrderKind::grevlex;
  std::vector<int> weights;

  int degree(const Exponent& e) const {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * weights[i];
    return d;
  }

  bool less(const Exponent& a, const Exponent& b) const {
    if (kind == OrderKind::lex) return lex_less(a, b);
    const int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  }

 private:
  static bool lex_less(const Exponent& a, const Exponent& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

/// Variable names, positive weights and the monomial order in force.
struct PolyRing {
  std::vector<std::string> names;
  MonomialOrder order;

  std::size_t nvars() const { return names.size(); }
  const std::vector<int>& weights() const { return order.weights; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr make_ring(std::vector<std::string> names, std::vector<int> weights = {},
                         OrderKind kind = OrderKind::grevlex) {
  if (weights.empty()) weights.assign(names.size(), 1);
  if (weights.size() != names.size()) throw InputError("one weight per variable required");
  for (int w : weights)
    if (w <= 0) throw InputError("variable weights must be positive");
  return std::make_shared<const PolyRing>(PolyRing{std::move(names), MonomialOrder{kind, std::move(weights)}});
}

inline RingPtr with_order(const RingPtr& ring, OrderKind kind) {
  return make_ring(ring->names, ring->weights(), kind);
}

struct ExponentLess {
  const MonomialOrder* order = nullptr;
  bool operator()(const Exponent& a, const Exponent& b) const { return order->less(a, b); }
};

inline bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

inline Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Exponent operator-(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

/// Multivariate polynomial over Q. Terms are kept sorted by the ring's
/// monomial order with no zero coefficients stored.
class Poly {
 public:
  using TermMap = std::map<Exponent, Rational, ExponentLess>;

  explicit Poly(RingPtr ring) : ring_(std::move(ring)), terms_(ExponentLess{&ring_->order}) {}

  Poly(const Poly& o) : ring_(o.ring_), terms_(ExponentLess{&ring_->order}) { terms_.insert(o.terms_.begin(), o.terms_.end()); }
  Poly(Poly&& o) noexcept = default;
  Poly& operator=(const Poly& o) {
    if (this != &o) {
      Poly tmp(o);
      *this = std::move(tmp);
    }
    return *this;
  }
  Poly& operator=(Poly&& o) noexcept = default;

  static Poly constant(RingPtr ring, const Rational& c) {
    Poly p(ring);
    if (c != 0) p.terms_.emplace(Exponent(ring->nvars(), 0), c);
    return p;
  }

  static Poly variable(RingPtr ring, std::size_t i) {
    if (i >= ring->nvars()) throw std::out_of_range("variable index out of range");
    Exponent e(ring->nvars(), 0);
    e[i] = 1;
    return monomial(std::move(ring), std::move(e));
  }

  static Poly monomial(RingPtr ring, Exponent e, const Rational& c = 1) {
    Poly p(ring);
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_->nvars(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Exponent& leading_exponent() const { return terms_.rbegin()->first; }
  const Rational& leading_coeff() const { return terms_.rbegin()->second; }

  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coeff(Exponent(nvars(), 0)); }

  void add_term(const Exponent& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// this += c * x^e * other
  void add_scaled(const Rational& c, const Exponent& e, const Poly& other) {
    if (c == 0) return;
    for (const auto& [m, a] : other.terms_) add_term(m + e, c * a);
  }

  Poly operator-() const {
    Poly p(*this);
    for (auto& [m, a] : p.terms_) a = -a;
    return p;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, a] : o.terms_) add_term(m, a);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, a] : o.terms_) add_term(m, -a);
    return *this;
  }
  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, a] : terms_) a *= c;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out(a.ring_);
    for (const auto& [m, c] : a.terms_) out.add_scaled(c, m, b);
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars() == b.nvars() && std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end());
  }

  Poly pow(unsigned n) const {
    Poly out = constant(ring_, 1);
    for (unsigned i = 0; i < n; ++i) out = out * *this;
    return out;
  }

  Poly derivative(std::size_t var) const {
    if (var >= nvars()) throw std::out_of_range("derivative: variable index out of range");
    Poly out(ring_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Exponent e = m;
      --e[var];
      out.add_term(e, c * m[var]);
    }
    return out;
  }

  Rational evaluate(const Vector& point) const {
    if (point.size() != nvars()) throw std::invalid_argument("evaluate: point has wrong length");
    Rational acc;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        mpq_class p;
        mpz_pow_ui(p.get_num_mpz_t(), point[i].get_num_mpz_t(), static_cast<unsigned long>(m[i]));
        mpz_pow_ui(p.get_den_mpz_t(), point[i].get_den_mpz_t(), static_cast<unsigned long>(m[i]));
        t *= p;
      }
      acc += t;
    }
    return acc;
  }

  /// Replaces variable i by images[i]; the result lives in the images' ring.
  Poly substitute(const std::vector<Poly>& images) const {
    if (images.size() != nvars()) throw std::invalid_argument("substitute: wrong number of images");
    RingPtr target = images.empty() ? ring_ : images.front().ring();
    Poly out(target);
    for (const auto& [m, c] : terms_) {
      Poly t = constant(target, c);
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) t = t * images[i].pow(static_cast<unsigned>(m[i]));
      out += t;
    }
    return out;
  }

  /// Same terms, reinterpreted in another ring with the same variable count.
  Poly in_ring(const RingPtr& target) const {
    if (target->nvars() != nvars()) throw std::invalid_argument("in_ring: variable count mismatch");
    Poly out(target);
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c);
    return out;
  }

  int weighted_degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, ring_->order.degree(m));
    return d;
  }

  /// Weighted degree if all terms share it; nullopt otherwise. The zero
  /// polynomial reports degree -1.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return -1;
    const int d = ring_->order.degree(terms_.begin()->first);
    for (const auto& [m, c] : terms_)
      if (ring_->order.degree(m) != d) return std::nullopt;
    return d;
  }

  bool is_homogeneous() const { return homogeneous_degree().has_value(); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool is_one = std::all_of(m.begin(), m.end(), [](int x) { return x == 0; });
      bool wrote = false;
      if (mag != 1 || is_one) {
        os << mag.get_str();
        wrote = true;
      }
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (wrote) os << '*';
        os << ring_->names[i];
        if (m[i] > 1) os << '^' << m[i];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  RingPtr ring_;
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Parsing
//
//   poly    := ['-'] term (('+'|'-') term)*
//   term    := coeff ('*' varpow)* | varpow ('*' varpow)*
//   varpow  := name ('^' nat)?
//   coeff   := int ('/' posint)?

namespace detail {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), text_(text) {}

  Poly parse() {
    Poly out(ring_);
    skip_ws();
    bool negative = false;
    if (peek() == '-') {
      negative = true;
      ++pos_;
    }
    add_term(out, negative);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char c = text_[pos_];
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++pos_;
      add_term(out, c == '-');
    }
    return out;
  }

 private:
  void add_term(Poly& out, bool negative) {
    skip_ws();
    Rational coeff = 1;
    Exponent e(ring_->nvars(), 0);
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_coeff();
      need_factor = false;
    }
    if (need_factor) {
      parse_varpow(e);
    }
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      skip_ws();
      parse_varpow(e);
    }
    out.add_term(e, negative ? Rational(-coeff) : coeff);
  }

  Rational parse_coeff() {
    std::string num = digits();
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      std::string den = digits();
      if (mpz_class(den) == 0) fail("zero denominator");
      Rational q{mpz_class(num), mpz_class(den)};
      q.canonicalize();
      return q;
    }
    return Rational(mpz_class(num));
  }

  void parse_varpow(Exponent& e) {
    const std::size_t start = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected a variable name");
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    auto idx = ring_->index_of(name);
    if (!idx) throw ParseError("undeclared variable '" + name + "'");
    int power = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      const std::string d = digits();
      if (d.size() > 6) fail("exponent too large");
      power = std::stoi(d);
    }
    e[*idx] += power;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("cannot parse polynomial '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  const RingPtr& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(const RingPtr& ring, std::string_view text) {
  return detail::PolyParser(ring, text).parse();
}

/// All exponents of the given weighted degree, in increasing order.
inline std::vector<Exponent> monomials_of_degree(const PolyRing& ring, int degree) {
  std::vector<Exponent> out;
  if (degree < 0) return out;
  const std::size_t n = ring.nvars();
  Exponent e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == n) {
      if (remaining == 0) out.push_back(e);
      return;
    }
    const int w = ring.weights()[i];
    for (int k = 0; k * w <= remaining; ++k) {
      e[i] = k;
      self(self, i + 1, remaining - k * w);
    }
    e[i] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), [&](const Exponent& a, const Exponent& b) { return ring.order.less(a, b); });
  return out;
}

}  // namespace cilie
