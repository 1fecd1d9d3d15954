#pragma once

// Diagonal scalings preserving a monomial support up to a common factor,
// involutions among them, stabilizers of point sets on the projective line,
// and certificates that a normalized general member has no automorphisms
// beyond the weighted torus.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wfano/catalog.hpp"
#include "wfano/error.hpp"
#include "wfano/exactmath.hpp"
#include "wfano/normalize.hpp"
#include "wfano/polynomial.hpp"
#include "wfano/wspace.hpp"

namespace wfano {

// x_i -> zeta^exponents[i] x_i with zeta a primitive order-th root of unity.
struct RootOfUnityScaling {
  Integer order;
  std::array<Integer, kVars> exponents;
  friend bool operator==(const RootOfUnityScaling&, const RootOfUnityScaling&) = default;
};

struct DiagonalSymmetryGroup {
  int free_rank = 0;
  std::vector<Integer> torsion;  // elementary divisors >= 2
  bool induced_trivial = false;
  std::vector<RootOfUnityScaling> torsion_generators;
  std::vector<Integer> smith_diagonal;  // full diagonal of the difference matrix
};

namespace detail {
inline const WeightSystem& support_weights(const std::vector<Monomial>& support, const WeightSystem& ws) {
  if (support.empty()) throw UsageError("diagonal symmetry needs a nonempty support");
  const int g = support.front().weighted_degree(ws);
  for (const auto& m : support)
    if (m.weighted_degree(ws) != g) throw UsageError("support mixes degrees " + std::to_string(g) + " and " +
                                                     std::to_string(m.weighted_degree(ws)));
  return ws;
}
}  // namespace detail

// Characters of Z^5 / L, L spanned by the differences of support exponents.
inline DiagonalSymmetryGroup diagonal_symmetry_group(const std::vector<Monomial>& support, const WeightSystem& ws) {
  detail::support_weights(support, ws);
  std::set<Monomial> uniq(support.begin(), support.end());
  std::vector<Monomial> mons(uniq.begin(), uniq.end());
  DiagonalSymmetryGroup g;
  if (mons.size() == 1) {
    g.free_rank = kVars;
    return g;
  }
  IntegerMatrix diff(mons.size() - 1, kVars);
  for (std::size_t r = 1; r < mons.size(); ++r)
    for (int i = 0; i < kVars; ++i) {
      diff(r - 1, static_cast<std::size_t>(i)) = mons[r].e[i] - mons[0].e[i];
    }
  // The weighted torus preserves every support of one degree.
  for (std::size_t r = 0; r < diff.rows(); ++r) {
    Integer pairing = 0;
    for (int i = 0; i < kVars; ++i) pairing += diff(r, static_cast<std::size_t>(i)) * ws.weight(i);
    if (pairing != 0) throw InconsistencyError("weight vector does not annihilate a difference vector");
  }
  SmithForm s = smith_normal_form(diff);
  g.smith_diagonal = s.diagonal;
  g.free_rank = kVars - static_cast<int>(s.rank());
  for (std::size_t k = 0; k < s.diagonal.size(); ++k) {
    const Integer& d = s.diagonal[k];
    if (d < 2) continue;
    g.torsion.push_back(d);
    RootOfUnityScaling gen{d, {}};
    for (int i = 0; i < kVars; ++i) {
      Integer e = s.right(static_cast<std::size_t>(i), k) % d;
      if (e < 0) e += d;
      gen.exponents[static_cast<std::size_t>(i)] = e;
    }
    g.torsion_generators.push_back(gen);
  }
  g.induced_trivial = g.free_rank == 1 && g.torsion.empty();
  return g;
}

inline DiagonalSymmetryGroup diagonal_symmetry_group(const GradedPolynomial& f) {
  return diagonal_symmetry_group(f.support(), f.ws());
}

using SignVector = std::array<int, kVars>;

inline std::string sign_string(const SignVector& s) {
  std::string out = "(";
  for (int i = 0; i < kVars; ++i) out += std::string(i ? "," : "") + (s[static_cast<std::size_t>(i)] > 0 ? "+" : "-");
  return out + ")";
}

namespace detail {
// Whether (s^{a_1}, ..., s^{a_5}) equals the sign vector for some s.
inline bool sign_in_weighted_torus(const SignVector& sg, const WeightSystem& ws) {
  int l = 1;
  for (int a : ws.weights()) l = std::lcm(l, a);
  const int n = 2 * l;  // s = exp(2 pi i k / n)
  for (int k = 0; k < n; ++k) {
    bool ok = true;
    for (int i = 0; i < kVars && ok; ++i) {
      const int twice = 2 * k * ws.weight(i);  // s^{a_i} = exp(pi i * twice / n)
      if (twice % n != 0) ok = false;
      else ok = ((twice / n) % 2 == 0) == (sg[static_cast<std::size_t>(i)] > 0);
    }
    if (ok) return true;
  }
  return false;
}
}  // namespace detail

struct InvolutionResult {
  bool found = false;
  std::optional<SignVector> witness;
};

// Sign vectors are tried in the order of the mask 1..31, bit (4 - i) making
// variable i negative. Every 2-torsion class modulo the weighted torus has a
// sign-vector representative, so the search is complete.
inline InvolutionResult has_diagonal_involution(const std::vector<Monomial>& support, const WeightSystem& ws) {
  detail::support_weights(support, ws);
  for (unsigned mask = 1; mask < (1u << kVars); ++mask) {
    SignVector sg{};
    for (int i = 0; i < kVars; ++i) sg[static_cast<std::size_t>(i)] = (mask >> (kVars - 1 - i)) & 1u ? -1 : 1;
    auto sign_of = [&](const Monomial& m) {
      int odd = 0;
      for (int i = 0; i < kVars; ++i)
        if (sg[static_cast<std::size_t>(i)] < 0) odd += m.e[i];
      return odd % 2 == 0 ? 1 : -1;
    };
    const int s0 = sign_of(support.front());
    if (!std::all_of(support.begin(), support.end(), [&](const Monomial& m) { return sign_of(m) == s0; })) continue;
    if (detail::sign_in_weighted_torus(sg, ws)) continue;
    return {true, sg};
  }
  return {false, std::nullopt};
}

// ---------------------------------------------------------------------------
// Fractional-linear maps

// [u : v] -> [a u + b v : c u + d v], scaled so the first nonzero entry is 1.
class Mobius {
 public:
  Mobius() : m_{1, 0, 0, 1} {}
  Mobius(Rational a, Rational b, Rational c, Rational d) : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    if (m_[0] * m_[3] - m_[1] * m_[2] == 0) throw DomainError("Mobius: singular matrix");
    for (const auto& x : m_)
      if (x != 0) {
        const Rational s = x;
        for (auto& y : m_) y /= s;
        break;
      }
  }
  static Mobius identity() { return {}; }

  const std::array<Rational, 4>& matrix() const { return m_; }

  ProjPoint operator()(const ProjPoint& p) const {
    return ProjPoint(m_[0] * p.u() + m_[1] * p.v(), m_[2] * p.u() + m_[3] * p.v());
  }
  // (this o o)(p) = this(o(p))
  Mobius after(const Mobius& o) const {
    const auto& a = m_;
    const auto& b = o.m_;
    return Mobius(a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                  a[2] * b[1] + a[3] * b[3]);
  }
  Mobius inverse() const { return Mobius(m_[3], -m_[1], -m_[2], m_[0]); }

  // The unique map sending [1:0], [0:1], [1:1] to p, q, r.
  static Mobius frame(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r) {
    // lambda*P + mu*Q = R
    const Rational det = p.u() * q.v() - q.u() * p.v();
    if (det == 0) throw DomainError("Mobius::frame: points coincide");
    const Rational lambda = (r.u() * q.v() - q.u() * r.v()) / det;
    const Rational mu = (p.u() * r.v() - r.u() * p.v()) / det;
    if (lambda == 0 || mu == 0) throw DomainError("Mobius::frame: points coincide");
    return Mobius(lambda * p.u(), mu * q.u(), lambda * p.v(), mu * q.v());
  }
  // The unique map sending p_k to q_k for k = 0, 1, 2.
  static Mobius through(const std::array<ProjPoint, 3>& p, const std::array<ProjPoint, 3>& q) {
    return frame(q[0], q[1], q[2]).after(frame(p[0], p[1], p[2]).inverse());
  }

  std::string str() const {
    return "[" + to_string(m_[0]) + " " + to_string(m_[1]) + "; " + to_string(m_[2]) + " " + to_string(m_[3]) + "]";
  }
  friend bool operator==(const Mobius&, const Mobius&) = default;
  friend bool operator<(const Mobius& a, const Mobius& b) { return a.m_ < b.m_; }

 private:
  std::array<Rational, 4> m_;
};

struct PointSetOnLine {
  std::vector<ProjPoint> points;

  PointSetOnLine() = default;
  explicit PointSetOnLine(std::vector<ProjPoint> p) : points(std::move(p)) {
    std::set<ProjPoint> s(points.begin(), points.end());
    if (s.size() != points.size()) throw UsageError("point set on the line has repeated points");
  }
  bool contains(const ProjPoint& p) const { return std::find(points.begin(), points.end(), p) != points.end(); }
  std::size_t size() const { return points.size(); }
};

// "0", "1/2", "-3", "inf"
inline ProjPoint parse_line_point(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "oo" || text == "infinity") return ProjPoint::infinity();
  const bool negative = !text.empty() && text[0] == '-';
  if (negative) text.remove_prefix(1);
  try {
    const Rational r = detail::parse_rational(text);
    return ProjPoint::affine(negative ? Rational(-r) : r);
  } catch (const Error&) {
    throw UsageError("malformed point '" + std::string(negative ? "-" : "") + std::string(text) +
                     "' (expected a rational or inf)");
  }
}

inline std::string line_point_string(const ProjPoint& p) { return p.is_infinity() ? "inf" : to_string(p.u()); }

// The maps permuting the set, from all ordered triple images of the first
// three points; the result is checked to be a group.
inline std::vector<Mobius> pgl2_set_stabilizer(const PointSetOnLine& s) {
  if (s.size() < 3) throw UsageError("stabilizer of fewer than 3 points is infinite");
  const std::array<ProjPoint, 3> base{s.points[0], s.points[1], s.points[2]};
  std::set<Mobius> found;
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        Mobius m = Mobius::through(base, {s.points[i], s.points[j], s.points[k]});
        if (std::all_of(s.points.begin(), s.points.end(), [&](const ProjPoint& p) { return s.contains(m(p)); }))
          found.insert(m);
      }
  std::vector<Mobius> out(found.begin(), found.end());
  for (const auto& a : out) {
    if (!found.count(a.inverse())) throw InconsistencyError("stabilizer not closed under inverse");
    for (const auto& b : out)
      if (!found.count(a.after(b))) throw InconsistencyError("stabilizer not closed under composition");
  }
  if (!found.count(Mobius::identity())) throw InconsistencyError("stabilizer misses the identity");
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

struct PointStage {
  std::string source;  // how the points arise on the member
  PointSetOnLine points;
  std::size_t stabilizer_order = 0;
};

struct AutomorphismCertificate {
  int number = 0;
  std::uint64_t seed = 0;        // seed actually used
  GradedPolynomial normalized;   // normalized general member
  std::vector<Substitution> applied;
  std::optional<PointStage> line_points;
  DiagonalSymmetryGroup diagonal;
  InvolutionResult involution;

  bool trivial() const {
    return diagonal.induced_trivial && !involution.found && (!line_points || line_points->stabilizer_order == 1);
  }
};

namespace detail {
inline std::optional<std::vector<ProjPoint>> distinct_rational_roots(const EdgeRestriction& r) {
  if (r.form.is_zero() || !distinct_roots(r.form)) return std::nullopt;
  auto roots = rational_projective_roots(r.form);
  if (static_cast<int>(roots.size()) != r.form.degree) return std::nullopt;
  return roots;
}

// Points of the line stage on a normalized member, nullopt if they are not
// distinct and rational.
inline std::optional<PointStage> line_stage(int number, const GradedPolynomial& f) {
  const int z = var_index('z'), t = var_index('t'), y = var_index('y');
  if (number == 19) {
    auto g12 = distinct_rational_roots(edge_restriction(f, z, t));
    auto g6 = distinct_rational_roots(coefficient_restriction(f, Monomial::var(y, 3), z, t));
    if (!g12 || !g6) return std::nullopt;
    std::vector<ProjPoint> all = *g12;
    all.insert(all.end(), g6->begin(), g6->end());
    if (std::set<ProjPoint>(all.begin(), all.end()).size() != all.size()) return std::nullopt;
    return PointStage{"roots of g12(z,t) * g6(z,t) on x = y = w = 0, g6 the coefficient of y^3", PointSetOnLine(all), 0};
  }
  if (number == 28) {
    auto r = distinct_rational_roots(edge_restriction(f, y, z));
    if (!r) return std::nullopt;
    return PointStage{"roots of the restriction to x = t = w = 0", PointSetOnLine(*r), 0};
  }
  return std::nullopt;
}
}  // namespace detail

// Normalizes a general member (seeds seed, seed+1, ...) and records the
// stages that pin its automorphisms down to the weighted torus.
inline AutomorphismCertificate certify_trivial_automorphisms(int number, std::uint64_t seed, int budget = 64) {
  builtin_plan(number);  // rejects unknown numbers
  const bool needs_points = number == 19 || number == 28;
  std::string last;
  std::uint64_t next = seed;
  for (int k = 0; k < budget; ++k) {
    NormalizedMember m = normalized_general_member(number, next, budget);
    const std::uint64_t used = next + static_cast<std::uint64_t>(m.tries - 1);
    next = used + 1;
    AutomorphismCertificate c;
    c.number = number;
    c.seed = used;
    c.normalized = m.result.f;
    c.applied = m.result.applied;
    if (needs_points) {
      c.line_points = detail::line_stage(number, c.normalized);
      if (!c.line_points) {
        last = "line stage: points not distinct and rational";
        continue;
      }
      c.line_points->stabilizer_order = pgl2_set_stabilizer(c.line_points->points).size();
      if (c.line_points->stabilizer_order != 1) {
        last = "line stage: point set has a nontrivial stabilizer";
        continue;
      }
    }
    c.diagonal = diagonal_symmetry_group(c.normalized);
    c.involution = has_diagonal_involution(c.normalized.support(), c.normalized.ws());
    if (!c.diagonal.induced_trivial) {
      last = "diagonal stage: symmetry group larger than the weighted torus";
      continue;
    }
    return c;
  }
  throw GenericityError("certify_trivial_automorphisms(" + std::to_string(number) + "): no certificate within " +
                        std::to_string(budget) + " samples; last failing stage: " + last);
}

}  // namespace wfano
