#pragma once

// Exact integer and rational arithmetic: gcds, Smith normal form over Z,
// univariate polynomials over Q (gcd, squarefree part, rational roots) and
// root analysis of binary forms.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wfano/error.hpp"

namespace wfano {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Integer& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

inline Integer floor_of(const Rational& v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Integer n = numerator(v), d = denominator(v);
  Integer q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

inline Integer ceil_of(const Rational& v) {
  Integer f = floor_of(v);
  return Rational(f) == v ? f : f + 1;
}

inline std::int64_t gcd_tuple(std::span<const std::int64_t> values) {
  if (values.empty()) throw UsageError("gcd_tuple: empty list");
  std::int64_t g = 0;
  for (std::int64_t v : values) {
    if (v <= 0) throw UsageError("gcd_tuple: values must be positive");
    g = std::gcd(g, v);
  }
  return g;
}

inline std::int64_t gcd_tuple(std::initializer_list<std::int64_t> values) {
  return gcd_tuple(std::span<const std::int64_t>(values.begin(), values.size()));
}

// ---------------------------------------------------------------------------
// Integer matrices and the Smith normal form

class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw UsageError("IntegerMatrix: ragged rows");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("IntegerMatrix: dimension mismatch");
    IntegerMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntegerMatrix m) {
  if (m.rows() != m.cols()) throw UsageError("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  std::vector<Integer> diagonal;  // length min(rows, cols); zeros trail
  IntegerMatrix left;             // rows x rows, unimodular
  IntegerMatrix right;            // cols x cols, unimodular

  std::size_t rank() const {
    return static_cast<std::size_t>(
        std::count_if(diagonal.begin(), diagonal.end(), [](const Integer& d) { return d != 0; }));
  }
};

// left * m * right == diag(diagonal). Pivot: smallest nonzero |entry| of the
// remaining block, ties broken by lowest (row, col).
inline SmithForm smith_normal_form(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  IntegerMatrix left = IntegerMatrix::identity(m.rows());
  IntegerMatrix right = IntegerMatrix::identity(m.cols());
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t n = std::min(rows, cols);
  std::vector<Integer> diag(n);

  for (std::size_t t = 0; t < n; ++t) {
    bool empty = false;
    for (;;) {
      std::size_t pi = rows, pj = cols;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Integer v = abs(a(i, j));
          if (pi == rows || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) {
        empty = true;
        break;
      }
      a.swap_rows(t, pi);
      left.swap_rows(t, pi);
      a.swap_cols(t, pj);
      right.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        a.add_row(i, t, -q);
        left.add_row(i, t, -q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        a.add_col(j, t, -q);
        right.add_col(j, t, -q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            a.add_row(t, i, 1);
            left.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (empty) break;
    if (a(t, t) < 0) {
      a.negate_row(t);
      left.negate_row(t);
    }
    diag[t] = a(t, t);
  }
  return SmithForm{std::move(diag), std::move(left), std::move(right)};
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q, coefficients stored low degree first.

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly monomial(const Rational& coeff, std::size_t degree) {
    std::vector<Rational> c(degree + 1);
    c[degree] = coeff;
    return UniPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long long>(i);
    return UniPoly(std::move(d));
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    std::vector<Rational> d = c_;
    Rational lc = leading();
    for (auto& v : d) v /= lc;
    return UniPoly(std::move(d));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return UniPoly(std::move(r));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(r));
  }
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  // Euclidean division: *this = q * divisor + r, deg r < deg divisor.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("UniPoly: division by zero polynomial");
    std::vector<Rational> r = c_;
    const std::size_t dd = divisor.c_.size();
    if (r.size() < dd) return {UniPoly{}, *this};
    std::vector<Rational> q(r.size() - dd + 1);
    for (std::size_t k = q.size(); k-- > 0;) {
      Rational f = r[k + dd - 1] / divisor.leading();
      q[k] = f;
      if (f == 0) continue;
      for (std::size_t j = 0; j < dd; ++j) r[k + j] -= f * divisor.c_[j];
    }
    r.resize(dd - 1);
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Monic gcd; gcd(0, 0) = 0.
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero()) throw DomainError("squarefree_part: zero polynomial");
  UniPoly g = gcd(p, p.derivative());
  return p.divmod(g).first.monic();
}

namespace detail {

inline int sign(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    UniPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(UniPoly{} - r);
  }
  return chain;
}

inline int sign_changes(const std::vector<UniPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    int s = sign(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace detail

// Distinct rational roots, ascending. Real roots are isolated with a Sturm
// chain and each isolating interval is shrunk below 1/lc, where lc is the
// leading coefficient of the primitive integer multiple; every rational root
// has the form m/lc, so the candidates in the interval are tested exactly.
inline std::vector<Rational> rational_roots(const UniPoly& p) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (p.is_zero()) throw DomainError("rational_roots: zero polynomial");
  UniPoly sq = squarefree_part(p);
  if (sq.degree() <= 0) return {};

  Integer den_lcm = 1;
  for (const auto& c : sq.coeffs()) den_lcm = boost::multiprecision::lcm(den_lcm, Integer(denominator(c)));
  Integer lc = abs(numerator(sq.leading() * Rational(den_lcm)));

  Rational bound = 0;
  for (int i = 0; i < sq.degree(); ++i) bound = std::max(bound, Rational(abs(sq.coeff(i) / sq.leading())));
  bound += 1;

  auto chain = detail::sturm_chain(sq);
  auto count = [&](const Rational& lo, const Rational& hi) {
    return detail::sign_changes(chain, lo) - detail::sign_changes(chain, hi);
  };

  std::vector<Rational> roots;
  const Rational target_width = Rational(1, 2) / Rational(lc);
  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int n = count(lo, hi);
    if (n == 0) continue;
    if (n > 1) {
      Rational mid = (lo + hi) / 2;
      stack.emplace_back(lo, mid);
      stack.emplace_back(mid, hi);
      continue;
    }
    while (hi - lo > target_width) {
      Rational mid = (lo + hi) / 2;
      if (count(lo, mid) == 1)
        hi = mid;
      else
        lo = mid;
    }
    // root in (lo, hi]
    for (Integer m = ceil_of(lo * Rational(lc)); Rational(m) <= hi * Rational(lc); ++m) {
      Rational cand = Rational(m) / Rational(lc);
      if (cand > lo && cand <= hi && sq(cand) == 0) roots.push_back(cand);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// Points of the projective line and binary forms

// A point [u : v] of P^1 over Q, stored normalized: [r : 1] or [1 : 0].
class ProjPoint {
 public:
  ProjPoint() : u_(0), v_(1) {}
  ProjPoint(Rational u, Rational v) {
    if (u == 0 && v == 0) throw DomainError("ProjPoint: [0:0] is not a point");
    if (v != 0) {
      u_ = u / v;
      v_ = 1;
    } else {
      u_ = 1;
      v_ = 0;
    }
  }
  static ProjPoint affine(Rational r) { return ProjPoint(std::move(r), 1); }
  static ProjPoint infinity() { return ProjPoint(1, 0); }

  const Rational& u() const { return u_; }
  const Rational& v() const { return v_; }
  bool is_infinity() const { return v_ == 0; }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    if (a.is_infinity() != b.is_infinity()) return b.is_infinity();
    return a.u_ < b.u_;
  }

  std::string str() const { return is_infinity() ? "inf" : to_string(u_); }

 private:
  Rational u_, v_;
};

// F(u, v) = sum_k coefficients[k] * u^(degree - k) * v^k.
struct BinaryForm {
  int degree = 0;
  std::vector<Rational> coefficients;

  BinaryForm() : coefficients(1) {}
  explicit BinaryForm(std::vector<Rational> c)
      : degree(static_cast<int>(c.size()) - 1), coefficients(std::move(c)) {
    if (coefficients.empty()) throw UsageError("BinaryForm: needs degree + 1 coefficients");
  }

  bool is_zero() const {
    return std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& c) { return c == 0; });
  }

  // Multiplicity of the root [1 : 0].
  int multiplicity_at_infinity() const {
    int m = 0;
    while (m <= degree && coefficients[m] == 0) ++m;
    return m;
  }

  // F(u, 1) as a polynomial in u.
  UniPoly dehomogenized() const {
    std::vector<Rational> c(coefficients.size());
    for (int i = 0; i <= degree; ++i) c[i] = coefficients[degree - i];
    return UniPoly(std::move(c));
  }

  Rational operator()(const Rational& u, const Rational& v) const {
    Rational acc = 0;
    for (int k = 0; k <= degree; ++k) acc += coefficients[k] * pow(u, degree - k) * pow(v, k);
    return acc;
  }

 private:
  static Rational pow(const Rational& b, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }
};

struct RootCount {
  bool squarefree = false;
  int distinct_roots = 0;
  friend bool operator==(const RootCount&, const RootCount&) = default;
};

inline RootCount squarefree_and_root_count(const BinaryForm& b) {
  if (b.is_zero()) throw DomainError("squarefree_and_root_count: zero form");
  const int at_inf = b.multiplicity_at_infinity();
  UniPoly affine = b.dehomogenized();
  RootCount out;
  out.distinct_roots = squarefree_part(affine).degree() + (at_inf > 0 ? 1 : 0);
  out.squarefree = at_inf <= 1 && gcd(affine, affine.derivative()).degree() <= 0;
  return out;
}

// All roots of b that are rational points of P^1, sorted (infinity last).
inline std::vector<ProjPoint> rational_projective_roots(const BinaryForm& b) {
  if (b.is_zero()) throw DomainError("rational_projective_roots: zero form");
  std::vector<ProjPoint> out;
  UniPoly affine = b.dehomogenized();
  if (affine.degree() > 0)
    for (const auto& r : rational_roots(affine)) out.push_back(ProjPoint::affine(r));
  if (b.multiplicity_at_infinity() > 0) out.push_back(ProjPoint::infinity());
  return out;
}

}  // namespace wfano
