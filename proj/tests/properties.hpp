#pragma once

// Randomized property checks shared by the property test and the acceptance
// binary. Each check draws `cases` inputs from a fixed seed and returns the
// number of failures plus a description of the first one.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wfano/exactmath.hpp"
#include "wfano/polynomial.hpp"
#include "wfano/singular.hpp"
#include "wfano/symmetry.hpp"
#include "wfano/wspace.hpp"

namespace props {

using namespace wfano;

struct Outcome {
  int cases = 0;
  int failures = 0;
  std::string first;

  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
  bool ok() const { return failures == 0; }
};

inline int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline WeightSystem random_weights(std::mt19937_64& rng, int max_weight, int degree) {
  std::array<int, kVars> a{};
  for (int& v : a) v = uniform(rng, 1, max_weight);
  std::sort(a.begin(), a.end());
  return WeightSystem(a, degree);
}

// Random polynomial of grade k using roughly half of the monomials.
inline GradedPolynomial random_polynomial(std::mt19937_64& rng, const WeightSystem& ws, int k,
                                          const std::vector<Monomial>& pool) {
  GradedPolynomial f(ws, k);
  for (const auto& m : pool)
    if (uniform(rng, 0, 1)) f.add_term(m, Rational(uniform(rng, -5, 5), uniform(rng, 1, 3)));
  return f;
}

// A random x_j -> x_j + rest with rest free of x_j.
inline std::optional<Substitution> random_substitution(std::mt19937_64& rng, const WeightSystem& ws) {
  const int j = uniform(rng, 0, kVars - 1);
  std::vector<Monomial> pool;
  for (const auto& m : enumerate_monomials(ws, ws.weight(j)))
    if (m.e[j] == 0) pool.push_back(m);
  if (pool.empty()) return std::nullopt;
  GradedPolynomial rest(ws, ws.weight(j));
  for (const auto& m : pool)
    if (uniform(rng, 0, 2) == 0) rest.add_term(m, uniform(rng, -3, 3));
  if (rest.is_zero()) rest.add_term(pool[uniform(rng, 0, static_cast<int>(pool.size()) - 1)], 1);
  return Substitution(j, rest);
}

struct SubstitutionCase {
  GradedPolynomial f;
  Substitution s;
};

inline std::vector<SubstitutionCase> substitution_cases(int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SubstitutionCase> out;
  while (static_cast<int>(out.size()) < cases) {
    const WeightSystem ws = random_weights(rng, 5, 1);
    const int k = uniform(rng, 2, 12);
    const auto pool = enumerate_monomials(ws, k);
    if (pool.empty() || pool.size() > 60) continue;
    auto s = random_substitution(rng, ws);
    if (!s) continue;
    out.push_back({random_polynomial(rng, ws, k, pool), *s});
  }
  return out;
}

inline Outcome substitution_invertibility(int cases = 1000, std::uint64_t seed = 1) {
  Outcome o;
  for (const auto& c : substitution_cases(cases, seed)) {
    ++o.cases;
    const GradedPolynomial back = substitute(substitute(c.f, c.s), c.s.inverse());
    if (!(back == c.f)) o.fail(c.f.str() + " under " + c.s.str());
  }
  return o;
}

inline Outcome grade_preservation(int cases = 1000, std::uint64_t seed = 2) {
  Outcome o;
  for (const auto& c : substitution_cases(cases, seed)) {
    ++o.cases;
    const GradedPolynomial g = substitute(c.f, c.s);
    bool ok = g.grade() == c.f.grade();
    for (const auto& [m, coeff] : g.terms()) ok = ok && m.weighted_degree(g.ws()) == c.f.grade();
    if (!ok) o.fail(c.f.str() + " under " + c.s.str());
  }
  return o;
}

inline Integer abs_int(const Integer& v) { return v < 0 ? Integer(-v) : v; }

inline Outcome snf_divisor_chain(int cases = 1000, std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  Outcome o;
  for (int n = 0; n < cases; ++n) {
    ++o.cases;
    const std::size_t rows = uniform(rng, 1, 5), cols = uniform(rng, 1, 5);
    IntegerMatrix m(rows, cols);
    const int range = uniform(rng, 1, 30);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(rng, 0, 3) ? uniform(rng, -range, range) : 0;
    const SmithForm s = smith_normal_form(m);
    bool ok = s.diagonal.size() == std::min(rows, cols);
    for (std::size_t i = 0; ok && i < s.diagonal.size(); ++i) {
      ok = s.diagonal[i] >= 0;
      if (i + 1 < s.diagonal.size()) {
        const Integer& a = s.diagonal[i];
        const Integer& b = s.diagonal[i + 1];
        ok = ok && (a == 0 ? b == 0 : b % a == 0);
      }
    }
    // left * m * right is the diagonal matrix, with unimodular transforms.
    const IntegerMatrix prod = s.left * m * s.right;
    for (std::size_t r = 0; ok && r < rows; ++r)
      for (std::size_t c = 0; ok && c < cols; ++c) ok = prod(r, c) == (r == c ? s.diagonal[r] : Integer(0));
    ok = ok && abs_int(determinant(s.left)) == 1 && abs_int(determinant(s.right)) == 1;
    // First elementary divisor is the gcd of all entries.
    Integer g = 0;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) g = boost::multiprecision::gcd(g, abs_int(m(r, c)));
    ok = ok && (s.diagonal.empty() || s.diagonal[0] == g);
    if (!ok) o.fail(std::to_string(rows) + "x" + std::to_string(cols) + " matrix, case " + std::to_string(n));
  }
  return o;
}

// Terminality from the age sums, computed with rationals.
inline bool terminal_by_ages(int r, const std::array<int, 3>& w) {
  for (int k = 1; k < r; ++k) {
    Rational age = 0;
    for (int a : w) {
      const Rational q(Integer(static_cast<long long>(k) * a), Integer(r));
      age += q - Rational(floor_of(q));
    }
    if (age <= 1) return false;
  }
  return true;
}

inline Outcome reid_tai_generator_change(int cases = 1000, std::uint64_t seed = 4) {
  std::mt19937_64 rng(seed);
  Outcome o;
  while (o.cases < cases) {
    const int r = uniform(rng, 2, 60);
    std::array<int, 3> w{};
    bool coprime = true;
    for (int& a : w) {
      a = uniform(rng, 1, r - 1 > 0 ? r - 1 : 1);
      coprime = coprime && std::gcd(a, r) == 1;
    }
    // Bias toward the terminal shape 1/r(1, a, -a) so both outcomes occur.
    if (uniform(rng, 0, 1)) {
      w[0] = 1;
      w[2] = r - w[1];
      coprime = std::gcd(w[1], r) == 1;
    }
    if (!coprime) continue;
    int k = 0;
    do k = uniform(rng, 1, r - 1);
    while (std::gcd(k, r) != 1);
    ++o.cases;
    const QuotientSingularity q(r, w);
    const QuotientSingularity q2(r, {k * w[0], k * w[1], k * w[2]});
    const bool t = reid_tai_terminal(q);
    if (t != reid_tai_terminal(q2) || t != terminal_by_ages(r, w)) o.fail(q.str() + " vs " + q2.str());
  }
  return o;
}

// [pq] = u_p v_q - u_q v_p
inline Rational bracket(const ProjPoint& p, const ProjPoint& q) { return p.u() * q.v() - q.u() * p.v(); }

// Number of permutations of the set preserving every cross-ratio; these are
// exactly the restrictions of projective maps when there are >= 3 points.
inline std::size_t cross_ratio_symmetries(const std::vector<ProjPoint>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto cr = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return std::pair(bracket(pts[a], pts[c]) * bracket(pts[b], pts[d]), bracket(pts[a], pts[d]) * bracket(pts[b], pts[c]));
  };
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t a = 0; ok && a < n; ++a)
      for (std::size_t b = a + 1; ok && b < n; ++b)
        for (std::size_t c = b + 1; ok && c < n; ++c)
          for (std::size_t d = c + 1; ok && d < n; ++d) {
            const auto [x1, y1] = cr(a, b, c, d);
            const auto [x2, y2] = cr(perm[a], perm[b], perm[c], perm[d]);
            ok = x1 * y2 == x2 * y1;
          }
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

inline Outcome pgl2_group_axioms(int cases = 1000, std::uint64_t seed = 5) {
  static const char* pool[] = {"0", "1", "-1", "2", "1/2", "-2", "-1/2", "3", "1/3", "inf", "-3", "3/2"};
  std::mt19937_64 rng(seed);
  Outcome o;
  for (int n = 0; n < cases; ++n) {
    ++o.cases;
    std::vector<std::string> names(std::begin(pool), std::end(pool));
    std::shuffle(names.begin(), names.end(), rng);
    names.resize(uniform(rng, 3, 6));
    std::vector<ProjPoint> pts;
    for (const auto& s : names) pts.push_back(parse_line_point(s));
    const PointSetOnLine set(pts);
    std::vector<Mobius> g;
    try {
      g = pgl2_set_stabilizer(set);
    } catch (const Error& e) {
      o.fail(std::string("stabilizer threw: ") + e.what());
      continue;
    }
    const std::set<Mobius> gs(g.begin(), g.end());
    bool ok = gs.size() == g.size() && gs.count(Mobius::identity());
    for (const auto& a : g) {
      ok = ok && gs.count(a.inverse());
      for (const auto& p : pts) ok = ok && set.contains(a(p));
      for (const auto& b : g) {
        ok = ok && gs.count(a.after(b));
        for (std::size_t c = 0; c < std::min<std::size_t>(g.size(), 8); ++c)
          ok = ok && a.after(b).after(g[c]) == a.after(b.after(g[c]));
      }
    }
    ok = ok && g.size() == cross_ratio_symmetries(pts);
    if (pts.size() == 3) ok = ok && g.size() == 6;
    if (!ok) {
      std::string s;
      for (const auto& x : names) s += x + " ";
      o.fail("set { " + s + "} stabilizer of order " + std::to_string(g.size()));
    }
  }
  return o;
}

// Coefficient of t^k in prod_i 1/(1 - t^{a_i}), by multiplying truncated
// geometric series.
inline std::uint64_t generating_function_coefficient(const std::array<int, kVars>& a, int k) {
  std::vector<std::uint64_t> series(k + 1, 0);
  series[0] = 1;
  for (int w : a) {
    std::vector<std::uint64_t> next(k + 1, 0);
    for (int i = 0; i <= k; ++i)
      for (int j = 0; i + j * w <= k; ++j) next[i + j * w] += series[i];
    series = std::move(next);
  }
  return series[k];
}

inline Outcome enumeration_vs_generating_function(int cases = 1000, std::uint64_t seed = 6) {
  std::mt19937_64 rng(seed);
  Outcome o;
  for (int n = 0; n < cases; ++n) {
    ++o.cases;
    const WeightSystem ws = random_weights(rng, 12, uniform(rng, 1, 60));
    const int k = ws.degree();
    const auto ms = enumerate_monomials(ws, k);
    bool ok = ms.size() == generating_function_coefficient(ws.weights(), k) && count_monomials(ws, k) == ms.size();
    std::set<Monomial> distinct(ms.begin(), ms.end());
    ok = ok && distinct.size() == ms.size();
    for (const auto& m : ms) ok = ok && m.weighted_degree(ws) == k;
    if (!ok) o.fail(ws.str());
  }
  return o;
}

}  // namespace props
