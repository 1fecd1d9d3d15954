#pragma once

// Sparse quasihomogeneous polynomials with rational coefficients, triangular
// coordinate changes, restrictions to coordinate strata and seeded sampling
// of general members.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wfano/error.hpp"
#include "wfano/exactmath.hpp"
#include "wfano/wspace.hpp"

namespace wfano {

class GradedPolynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexLess>;

  GradedPolynomial() = default;
  GradedPolynomial(WeightSystem ws, int grade) : ws_(ws), grade_(grade) {
    if (grade < 0) throw UsageError("polynomial grade must be nonnegative");
  }

  static GradedPolynomial monomial(const WeightSystem& ws, const Monomial& m, const Rational& c = 1) {
    GradedPolynomial p(ws, m.weighted_degree(ws));
    p.add_term(m, c);
    return p;
  }
  static GradedPolynomial variable(const WeightSystem& ws, int i) { return monomial(ws, Monomial::var(i)); }
  static GradedPolynomial constant(const WeightSystem& ws, const Rational& c) { return monomial(ws, Monomial{}, c); }

  const WeightSystem& ws() const { return ws_; }
  int grade() const { return grade_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  bool has(const Monomial& m) const { return terms_.count(m) != 0; }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.weighted_degree(ws_) != grade_)
      throw UsageError("monomial " + format_monomial(m) + " has degree " + std::to_string(m.weighted_degree(ws_)) +
                       ", expected " + std::to_string(grade_));
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void set_coeff(const Monomial& m, const Rational& c) {
    terms_.erase(m);
    add_term(m, c);
  }

  std::vector<Monomial> support() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.push_back(m);
    return out;
  }

  GradedPolynomial& operator+=(const GradedPolynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  GradedPolynomial& operator-=(const GradedPolynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  GradedPolynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend GradedPolynomial operator+(GradedPolynomial a, const GradedPolynomial& b) { return a += b; }
  friend GradedPolynomial operator-(GradedPolynomial a, const GradedPolynomial& b) { return a -= b; }
  friend GradedPolynomial operator*(GradedPolynomial a, const Rational& s) { return a *= s; }
  friend GradedPolynomial operator*(const Rational& s, GradedPolynomial a) { return a *= s; }

  friend GradedPolynomial operator*(const GradedPolynomial& a, const GradedPolynomial& b) {
    if (a.ws_.weights() != b.ws_.weights()) throw UsageError("polynomials over different weights");
    GradedPolynomial r(a.ws_, a.grade_ + b.grade_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  GradedPolynomial pow(int e) const {
    if (e < 0) throw UsageError("negative power");
    GradedPolynomial r = constant(ws_, 1);
    for (int k = 0; k < e; ++k) r = r * *this;
    return r;
  }

  // Same terms over the same weights; the degree stored in ws is ignored so
  // that polynomials of any grade compare.
  friend bool operator==(const GradedPolynomial& a, const GradedPolynomial& b) {
    return a.ws_.weights() == b.ws_.weights() && a.grade_ == b.grade_ && a.terms_ == b.terms_;
  }

  // "-3/2*x^2*y*w + w^3"; terms in grlex order, zero prints as "0".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational a = c;
      if (first) {
        if (a < 0) s += "-";
      } else {
        s += a < 0 ? " - " : " + ";
      }
      if (a < 0) a = -a;
      const bool unit_monomial = m.total() == 0;
      if (a != 1 || unit_monomial) {
        s += to_string(a);
        if (!unit_monomial) s += "*";
      }
      if (!unit_monomial) s += format_monomial(m);
      first = false;
    }
    return s;
  }

  static GradedPolynomial parse(const WeightSystem& ws, std::string_view text, std::optional<int> grade = {});

 private:
  void check_compatible(const GradedPolynomial& o) const {
    if (ws_.weights() != o.ws_.weights() || grade_ != o.grade_)
      throw UsageError("adding polynomials of different grades or weights");
  }

  WeightSystem ws_;
  int grade_ = 0;
  Terms terms_;
};

namespace detail {
inline Rational parse_rational(std::string_view s) {
  s = trim(s);
  std::size_t slash = s.find('/');
  auto integer = [](std::string_view t) {
    t = trim(t);
    if (t.empty() || t.size() > 200) throw UsageError("malformed coefficient");
    for (char c : t)
      if (c < '0' || c > '9') throw UsageError("malformed coefficient '" + std::string(t) + "'");
    return Integer(std::string(t));
  };
  if (slash == std::string_view::npos) return Rational(integer(s));
  Integer den = integer(s.substr(slash + 1));
  if (den == 0) throw UsageError("zero denominator");
  return Rational(integer(s.substr(0, slash)), den);
}
}  // namespace detail

inline GradedPolynomial GradedPolynomial::parse(const WeightSystem& ws, std::string_view text,
                                                std::optional<int> grade) {
  text = trim(text);
  if (text.empty()) throw UsageError("empty polynomial");
  struct Parsed {
    Monomial m;
    Rational c;
  };
  std::vector<Parsed> parsed;
  std::size_t pos = 0;
  int sign = 1;
  bool expect_term = true;
  while (pos < text.size()) {
    char ch = text[pos];
    if (ch == ' ' || ch == '\t') {
      ++pos;
      continue;
    }
    if (ch == '+' || ch == '-') {
      if (!expect_term && !parsed.empty()) {
        sign = ch == '-' ? -1 : 1;
        expect_term = true;
      } else if (parsed.empty() && expect_term && sign == 1) {
        sign = ch == '-' ? -1 : 1;
      } else {
        throw UsageError("malformed polynomial '" + std::string(text) + "'");
      }
      ++pos;
      continue;
    }
    if (!expect_term) throw UsageError("missing operator in polynomial '" + std::string(text) + "'");
    std::size_t end = pos;
    while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
    std::string_view term = trim(text.substr(pos, end - pos));
    Rational c = 1;
    Monomial m;
    if (!term.empty() && term[0] >= '0' && term[0] <= '9') {
      std::size_t star = term.find('*');
      c = detail::parse_rational(term.substr(0, star));
      if (star != std::string_view::npos) m = parse_monomial(term.substr(star + 1));
    } else {
      m = parse_monomial(term);
    }
    parsed.push_back({m, sign < 0 ? Rational(-c) : c});
    sign = 1;
    expect_term = false;
    pos = end;
  }
  if (expect_term) throw UsageError("polynomial ends with an operator");
  if (!grade) {
    grade = parsed.front().m.weighted_degree(ws);
    if (parsed.size() == 1 && parsed.front().c == 0 && parsed.front().m.total() == 0)
      throw UsageError("grade of the zero polynomial is ambiguous");
  }
  GradedPolynomial p(ws, *grade);
  for (const auto& t : parsed) {
    if (t.c == 0 && t.m.total() == 0) continue;  // literal "0"
    p.add_term(t.m, t.c);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Coordinate changes

// x_j -> x_j + rest, where rest has grade a_j and does not involve x_j.
class Substitution {
 public:
  Substitution() = default;
  Substitution(int target, GradedPolynomial rest) : target_(target), rest_(std::move(rest)) {
    if (target < 0 || target >= kVars) throw UsageError("substitution target out of range");
    if (rest_.grade() != rest_.ws().weight(target))
      throw UsageError("substitution for " + std::string(1, kVarNames[target]) + " must have grade " +
                       std::to_string(rest_.ws().weight(target)));
    for (const auto& [m, c] : rest_.terms())
      if (m.e[target] != 0)
        throw UsageError("substitution rest must not involve " + std::string(1, kVarNames[target]));
  }
  static Substitution identity(const WeightSystem& ws, int target) {
    return Substitution(target, GradedPolynomial(ws, ws.weight(target)));
  }

  int target() const { return target_; }
  const GradedPolynomial& rest() const { return rest_; }
  GradedPolynomial replacement() const { return GradedPolynomial::variable(rest_.ws(), target_) + rest_; }
  bool is_identity() const { return rest_.is_zero(); }
  Substitution inverse() const { return Substitution(target_, rest_ * Rational(-1)); }

  std::string str() const {
    std::string v(1, kVarNames[target_]);
    return v + " -> " + replacement().str();
  }
  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  int target_ = 0;
  GradedPolynomial rest_;
};

// Replace every variable i with images[i] (when set) simultaneously.
inline GradedPolynomial substitute_simultaneous(const GradedPolynomial& f,
                                                const std::array<std::optional<GradedPolynomial>, kVars>& images) {
  const WeightSystem& ws = f.ws();
  for (int i = 0; i < kVars; ++i)
    if (images[i] && images[i]->grade() != ws.weight(i))
      throw UsageError("image of " + std::string(1, kVarNames[i]) + " has the wrong grade");
  std::array<std::vector<GradedPolynomial>, kVars> powers;
  auto power = [&](int i, int e) -> const GradedPolynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(GradedPolynomial::constant(ws, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * *images[i]);
    return cache[static_cast<std::size_t>(e)];
  };
  GradedPolynomial out(ws, f.grade());
  for (const auto& [m, c] : f.terms()) {
    Monomial kept;
    GradedPolynomial term = GradedPolynomial::constant(ws, c);
    for (int i = 0; i < kVars; ++i) {
      if (images[i] && m.e[i] > 0)
        term = term * power(i, m.e[i]);
      else
        kept.e[i] = m.e[i];
    }
    out += term * GradedPolynomial::monomial(ws, kept);
  }
  return out;
}

inline GradedPolynomial substitute(const GradedPolynomial& f, const Substitution& s) {
  if (f.ws().weights() != s.rest().ws().weights()) throw UsageError("substitution over different weights");
  if (s.is_identity()) return f;
  std::array<std::optional<GradedPolynomial>, kVars> images;
  images[s.target()] = s.replacement();
  return substitute_simultaneous(f, images);
}

// x_i -> m[0] x_i + m[1] x_j,  x_j -> m[2] x_i + m[3] x_j for two variables
// of equal weight.
struct LinearChange2 {
  int i = 3, j = 4;
  std::array<Rational, 4> m{1, 0, 0, 1};

  Rational det() const { return m[0] * m[3] - m[1] * m[2]; }
  LinearChange2 inverse() const {
    Rational dt = det();
    if (dt == 0) throw DomainError("singular linear change");
    return {i, j, {m[3] / dt, -m[1] / dt, -m[2] / dt, m[0] / dt}};
  }
  std::string str() const {
    auto lin = [&](const Rational& a, const Rational& b) {
      std::string s = to_string(a) + "*" + kVarNames[i];
      s += b < 0 ? " - " + to_string(-b) : " + " + to_string(b);
      return s + "*" + kVarNames[j];
    };
    return std::string(1, kVarNames[i]) + " -> " + lin(m[0], m[1]) + ", " + kVarNames[j] + " -> " + lin(m[2], m[3]);
  }
  friend bool operator==(const LinearChange2&, const LinearChange2&) = default;
};

inline GradedPolynomial substitute(const GradedPolynomial& f, const LinearChange2& lc) {
  const WeightSystem& ws = f.ws();
  if (lc.i == lc.j || ws.weight(lc.i) != ws.weight(lc.j))
    throw UsageError("linear change needs two distinct variables of equal weight");
  if (lc.det() == 0) throw DomainError("singular linear change");
  auto xi = GradedPolynomial::variable(ws, lc.i), xj = GradedPolynomial::variable(ws, lc.j);
  std::array<std::optional<GradedPolynomial>, kVars> images;
  images[lc.i] = xi * lc.m[0] + xj * lc.m[1];
  images[lc.j] = xi * lc.m[2] + xj * lc.m[3];
  return substitute_simultaneous(f, images);
}

// ---------------------------------------------------------------------------
// Restrictions

// Terms of f using only the variables of s.
inline GradedPolynomial stratum_restriction(const GradedPolynomial& f, Stratum s) {
  GradedPolynomial out(f.ws(), f.grade());
  for (const auto& [m, c] : f.terms())
    if ((m.support() & ~s.mask) == 0) out.add_term(m, c);
  return out;
}

// The restriction of a grade-k polynomial to the line x_i, x_j is
// x_i^p0 x_j^r0 * F(u, v) with u = x_i^beta, v = x_j^alpha, where
// (a_i, a_j) = q (alpha, beta). F is reported with its full formal degree, so
// vanishing end coefficients show up as roots at the vertices.
struct EdgeRestriction {
  int i = 0, j = 1;
  int u_exponent = 1, v_exponent = 1;  // beta, alpha
  Monomial factor;
  BinaryForm form;
};

inline EdgeRestriction edge_restriction(const GradedPolynomial& f, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= kVars || j >= kVars) throw UsageError("edge needs two distinct variables");
  const WeightSystem& ws = f.ws();
  const int ai = ws.weight(i), aj = ws.weight(j), q = std::gcd(ai, aj);
  const int k = f.grade();
  std::vector<std::pair<int, int>> exps;  // (p, r), p descending
  for (int p = k / ai; p >= 0; --p)
    if ((k - p * ai) % aj == 0) exps.emplace_back(p, (k - p * ai) / aj);
  if (exps.empty())
    throw DomainError("no monomial of degree " + std::to_string(k) + " on the line " + kVarNames[i] + kVarNames[j]);
  EdgeRestriction out;
  out.i = i;
  out.j = j;
  out.u_exponent = aj / q;
  out.v_exponent = ai / q;
  out.factor.e[i] = exps.back().first;
  out.factor.e[j] = exps.front().second;
  std::vector<Rational> coeffs;
  for (auto [p, r] : exps) {
    Monomial m;
    m.e[i] = p;
    m.e[j] = r;
    coeffs.push_back(f.coeff(m));
  }
  out.form = BinaryForm(std::move(coeffs));
  return out;
}

// The part of f of the form cofactor * (monomial in x_i, x_j), as a binary
// form on that line. The cofactor must avoid x_i and x_j.
inline EdgeRestriction coefficient_restriction(const GradedPolynomial& f, const Monomial& cofactor, int i, int j) {
  if (cofactor.e[i] != 0 || cofactor.e[j] != 0) throw UsageError("cofactor must avoid the line variables");
  const WeightSystem& ws = f.ws();
  const int k = f.grade() - cofactor.weighted_degree(ws);
  if (k < 0) throw DomainError("cofactor degree exceeds the grade");
  GradedPolynomial part(ws, k);
  for (const auto& [m, c] : f.terms()) {
    bool match = true;
    Monomial rest;
    for (int v = 0; v < kVars; ++v) {
      if (v == i || v == j)
        rest.e[v] = m.e[v];
      else if (m.e[v] != cofactor.e[v])
        match = false;
    }
    if (match) part.add_term(rest, c);
  }
  return edge_restriction(part, i, j);
}

// ---------------------------------------------------------------------------
// Genericity predicates and sampling

struct NonzeroCoefficient {
  Monomial m;
};
// The edge restriction F has distinct roots (formal degree counted).
struct SquarefreeRestriction {
  int i = 0, j = 1;
};
struct SquarefreeCoefficient {
  Monomial cofactor;
  int i = 0, j = 1;
};
using GenericityCheck = std::variant<NonzeroCoefficient, SquarefreeRestriction, SquarefreeCoefficient>;

inline std::string describe(const GenericityCheck& g) {
  auto line = [](int i, int j) { return std::string{kVarNames[i], kVarNames[j]}; };
  return std::visit(
      [&](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NonzeroCoefficient>)
          return "nonzero coefficient of " + format_monomial(c.m);
        else if constexpr (std::is_same_v<T, SquarefreeRestriction>)
          return "restriction to the " + line(c.i, c.j) + " line has distinct roots";
        else
          return "coefficient of " + format_monomial(c.cofactor) + " on the " + line(c.i, c.j) +
                 " line has distinct roots";
      },
      g);
}

namespace detail {
inline bool distinct_roots(const BinaryForm& b) {
  if (b.is_zero()) return false;
  if (b.degree == 0) return true;
  RootCount rc = squarefree_and_root_count(b);
  return rc.squarefree && rc.distinct_roots == b.degree;
}
}  // namespace detail

inline bool holds(const GenericityCheck& g, const GradedPolynomial& f) {
  return std::visit(
      [&](const auto& c) -> bool {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, NonzeroCoefficient>)
          return f.coeff(c.m) != 0;
        else if constexpr (std::is_same_v<T, SquarefreeRestriction>)
          return detail::distinct_roots(edge_restriction(f, c.i, c.j).form);
        else
          return detail::distinct_roots(coefficient_restriction(f, c.cofactor, c.i, c.j).form);
      },
      g);
}

// A line x_i, x_j on which the sampled restriction is forced to split into
// distinct rational linear factors in (u, v).
struct SplitStratum {
  int i = 0, j = 1;
};

struct SamplingOptions {
  std::vector<SplitStratum> split;
  std::vector<GenericityCheck> checks;
  int budget = 1000;

  // Distinct roots on every coordinate line carrying at least two points.
  static SamplingOptions defaults(const WeightSystem& ws) {
    SamplingOptions o;
    for (int i = 0; i < kVars; ++i)
      for (int j = i + 1; j < kVars; ++j) {
        int terms = 0;
        for (int p = 0; p * ws.weight(i) <= ws.degree(); ++p)
          if ((ws.degree() - p * ws.weight(i)) % ws.weight(j) == 0) ++terms;
        if (terms >= 3) o.checks.push_back(SquarefreeRestriction{i, j});
      }
    return o;
  }
};

struct SampledMember {
  GradedPolynomial f;
  std::uint64_t seed = 0;
  int attempts = 0;
  std::vector<std::string> enforced;
};

namespace detail {
// Nonzero integer in [-9, 9].
inline int draw_coefficient(std::mt19937_64& rng) {
  int v = static_cast<int>(rng() % 18);
  return v < 9 ? v - 9 : v - 8;
}

// Coefficients (u^N ... v^N) of c * prod (q_k u - p_k v) over N distinct
// nonzero rational roots p_k/q_k; nullopt when some coefficient vanishes.
inline std::optional<std::vector<Rational>> draw_split_form(std::mt19937_64& rng, int n) {
  std::vector<Rational> roots;
  int guard = 0;
  while (static_cast<int>(roots.size()) < n) {
    if (++guard > 10000) return std::nullopt;
    Rational r(draw_coefficient(rng), static_cast<int>(rng() % 9) + 1);
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  }
  std::vector<Rational> poly{Rational(draw_coefficient(rng))};
  for (const auto& r : roots) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Rational qk(denominator(r)), pk(numerator(r));
    std::vector<Rational> next(poly.size() + 1);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k] * qk;
      next[k + 1] -= poly[k] * pk;
    }
    poly = std::move(next);
  }
  for (const auto& c : poly)
    if (c == 0) return std::nullopt;
  return poly;
}
}  // namespace detail

inline SampledMember sample_general_member(const WeightSystem& ws, std::uint64_t seed,
                                           const SamplingOptions& opt = {}) {
  if (opt.budget < 1) throw UsageError("sampling budget must be positive");
  std::uint8_t used = 0;
  for (const auto& s : opt.split) {
    const std::uint8_t mask = static_cast<std::uint8_t>((1u << s.i) | (1u << s.j));
    if (s.i == s.j || (used & mask) != 0) throw UsageError("split lines must be disjoint pairs of variables");
    used |= mask;
  }
  const std::vector<Monomial> monomials = enumerate_monomials(ws, ws.degree());
  std::mt19937_64 rng(seed);
  std::string last_failure = "rational splitting of a forced line";
  for (int attempt = 1; attempt <= opt.budget; ++attempt) {
    GradedPolynomial f(ws, ws.degree());
    std::map<Monomial, Rational> forced;
    bool ok = true;
    for (const auto& s : opt.split) {
      EdgeRestriction shape = edge_restriction(GradedPolynomial(ws, ws.degree()), s.i, s.j);
      auto coeffs = detail::draw_split_form(rng, shape.form.degree);
      if (!coeffs) {
        ok = false;
        break;
      }
      for (int k = 0; k <= shape.form.degree; ++k) {
        Monomial m = shape.factor;
        m.e[s.i] += shape.u_exponent * (shape.form.degree - k);
        m.e[s.j] += shape.v_exponent * k;
        forced[m] = (*coeffs)[static_cast<std::size_t>(k)];
      }
    }
    if (!ok) continue;
    for (const auto& m : monomials) {
      auto it = forced.find(m);
      f.add_term(m, it != forced.end() ? it->second : Rational(detail::draw_coefficient(rng)));
    }
    auto failing = std::find_if(opt.checks.begin(), opt.checks.end(),
                                [&](const GenericityCheck& g) { return !holds(g, f); });
    if (failing != opt.checks.end()) {
      last_failure = describe(*failing);
    } else {
      SampledMember out{std::move(f), seed, attempt, {}};
      for (const auto& s : opt.split)
        out.enforced.push_back(std::string("restriction to the ") + kVarNames[s.i] + kVarNames[s.j] +
                               " line splits over Q");
      for (const auto& g : opt.checks) out.enforced.push_back(describe(g));
      return out;
    }
  }
  throw GenericityError("sample_general_member: no member of " + ws.str() + " within " +
                        std::to_string(opt.budget) + " draws; last failing predicate: " + last_failure);
}

}  // namespace wfano
