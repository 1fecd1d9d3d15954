#pragma once

// Coordinate-change normalization of general members: plans made of
// triangular substitutions whose constants are solved exactly, plus the
// binary-cubic normal form for d = 3*a5, a4 = a5.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wfano/catalog.hpp"
#include "wfano/error.hpp"
#include "wfano/exactmath.hpp"
#include "wfano/polynomial.hpp"
#include "wfano/wspace.hpp"

namespace wfano {

struct PassPart {
  int target = 0;
  std::vector<Monomial> templ;  // x_target -> x_target + sum *templ[k]
};

// One or more substitutions x_j -> x_j + (template combination), performed
// simultaneously (templates are in the old coordinates).
struct PlanPass {
  std::string label;
  std::vector<PassPart> parts;
  std::vector<Monomial> pivots;     // must be present before and after the pass
  std::vector<Monomial> eliminate;  // coefficients forced to zero

  std::size_t unknowns() const {
    std::size_t n = 0;
    for (const auto& q : parts) n += q.templ.size();
    return n;
  }
};

struct NormalizationPlan {
  WeightSystem ws;
  std::vector<PlanPass> passes;

  std::vector<Monomial> all_eliminated() const {
    std::vector<Monomial> out;
    for (const auto& p : passes) out.insert(out.end(), p.eliminate.begin(), p.eliminate.end());
    return out;
  }
  std::vector<Monomial> all_pivots() const {
    std::set<Monomial> s;
    for (const auto& p : passes) s.insert(p.pivots.begin(), p.pivots.end());
    return {s.begin(), s.end()};
  }
};

namespace detail {
inline std::vector<Monomial> monomials_of(std::initializer_list<const char*> texts) {
  std::vector<Monomial> out;
  for (const char* t : texts) out.push_back(parse_monomial(t));
  return out;
}

inline PassPart part(char target, std::initializer_list<const char*> templ) {
  return {var_index(target), monomials_of(templ)};
}

inline PlanPass pass(std::string label, char target, std::initializer_list<const char*> templ,
                     std::initializer_list<const char*> pivots, std::initializer_list<const char*> eliminate) {
  return {std::move(label), {part(target, templ)}, monomials_of(pivots), monomials_of(eliminate)};
}

inline PlanPass block(std::string label, std::vector<PassPart> parts, std::initializer_list<const char*> pivots,
                      std::initializer_list<const char*> eliminate) {
  return {std::move(label), std::move(parts), monomials_of(pivots), monomials_of(eliminate)};
}

// w -> w + (1/3) f_{a5}: the template is every degree-a5 monomial without w,
// and the eliminated monomials are w^2 times those.
inline PlanPass w_square_pass(const WeightSystem& ws) {
  PlanPass p;
  p.label = "w -> w + f_" + std::to_string(ws.weight(4)) + "/3";
  PassPart q{4, {}};
  for (const auto& m : enumerate_monomials(ws, ws.weight(4)))
    if (m.e[4] == 0) {
      q.templ.push_back(m);
      p.eliminate.push_back(m * Monomial::var(4, 2));
    }
  p.parts.push_back(std::move(q));
  p.pivots.push_back(Monomial::var(4, 3));
  return p;
}

// Order in which the parts can be applied one after another with the same
// effect as the simultaneous change: a part goes after every part whose
// target its template uses. Throws when the dependencies are cyclic.
inline std::vector<std::size_t> part_order(const PlanPass& p) {
  const std::size_t n = p.parts.size();
  std::vector<std::size_t> order;
  std::vector<bool> done(n, false);
  while (order.size() < n) {
    bool progress = false;
    for (std::size_t q = 0; q < n; ++q) {
      if (done[q]) continue;
      bool ready = true;
      for (std::size_t r = 0; r < n && ready; ++r) {
        if (r == q || done[r]) continue;
        for (const auto& m : p.parts[q].templ)
          if (m.e[p.parts[r].target] > 0) ready = false;
      }
      if (ready) {
        done[q] = true;
        order.push_back(q);
        progress = true;
      }
    }
    if (!progress) throw PlanError("pass " + p.label + ": substitutions depend on each other cyclically");
  }
  return order;
}
}  // namespace detail

// Plans for the seven families treated by coordinate changes. Where the
// published step list does not survive the post-check on its own, mixing
// passes on a pair of equal-weight variables are inserted, and steps that
// keep reintroducing each other's monomials are merged into one simultaneous
// pass.
inline NormalizationPlan builtin_plan(int number) {
  using detail::block;
  using detail::part;
  using detail::pass;
  const WeightSystem ws = weight_system_of(septuple_of_number(number));
  NormalizationPlan plan{ws, {}};
  auto& P = plan.passes;
  switch (number) {
    case 19:
      P.push_back(pass("mix z", 'z', {"t"}, {"z*t^3"}, {"t^4"}));
      P.push_back(pass("mix t", 't', {"z"}, {"z^3*t"}, {"z^4"}));
      P.push_back(block("(1)-(4)",
                        {part('y', {"x^2"}), part('z', {"x*y", "x^3"}), part('t', {"x*y", "x^3"}),
                         part('w', {"y^2", "x^2*y", "x*z", "x*t"})},
                        {"y^4*w", "z*t^3", "z^3*t"},
                        {"y^6", "x^2*y^5", "x*y^4*z", "x*y^4*t", "x^2*y^3*w", "x*y*t^3", "x^3*t^3", "x*y*z^3",
                         "x^3*z^3"}));
      break;
    case 28:
      P.push_back(detail::w_square_pass(ws));
      P.push_back(pass("mix", 'z', {"y"}, {"z*t^3"}, {"y*t^3"}));
      P.push_back(pass("(1)", 'z', {"x^3"}, {"z*t^3"}, {"x^3*t^3"}));
      P.push_back(pass("(2)", 'y', {"x^3"}, {"y^5"}, {"x^3*y^4"}));
      P.push_back(pass("(3)", 't', {"x*z", "x*y", "x^4"}, {"z*t^3"}, {"x*z^2*t^2", "x*y*z*t^2", "x^4*z*t^2"}));
      break;
    case 39:
      P.push_back(detail::w_square_pass(ws));
      P.push_back(pass("row 1", 'y', {"x^3"}, {"y*t^3"}, {"x^3*t^3"}));
      P.push_back(block("rows 2-3", {part('t', {"x*z", "x^2*y", "x^5"}), part('z', {"x*y", "x^4"})},
                        {"y*t^3", "z^3*w"},
                        {"x*y*z*t^2", "x^2*y^2*t^2", "x^5*y*t^2", "x*y*z^2*w", "x^4*z^2*w"}));
      break;
    case 49:
      P.push_back(detail::w_square_pass(ws));
      P.push_back(pass("row 1", 'y', {"x^3"}, {"y*t^3"}, {"x^3*t^3"}));
      P.push_back(pass("row 2", 't', {"x*z", "x^3*y", "x^6", "y^2"}, {"y^5*t"},
                       {"x*y^5*z", "x^6*y^5", "x^3*y^6", "y^7"}));
      P.push_back(pass("row 3", 'z', {"x^2*y", "x^5"}, {"x*z^4"}, {"x^3*y*z^3", "x^6*z^3"}));
      break;
    case 59:
      P.push_back(detail::w_square_pass(ws));
      P.push_back(pass("row 1", 'y', {"x^3"}, {"y*t^3"}, {"x^3*t^3"}));
      P.push_back(pass("row 2", 't', {"x*y^2", "x*z", "x^7"}, {"y*t^3"},
                       {"x*y^3*t^2", "x*y*z*t^2", "x^7*y*t^2"}));
      P.push_back(pass("row 3", 'z', {"y^2", "x^3*y", "x^6"}, {"y^6*z"}, {"x^6*y^6", "x^3*y^7", "y^8"}));
      break;
    case 66:
      P.push_back(detail::w_square_pass(ws));
      P.push_back(pass("row 1", 'z', {"x*y", "x^6"}, {"z*t^3"}, {"x*y*t^3", "x^6*t^3"}));
      P.push_back(pass("row 2", 't', {"x*z", "x^2*y", "x^7"}, {"y^4*t"}, {"x*y^4*z", "x^7*y^4", "x^2*y^5"}));
      P.push_back(pass("row 3", 'y', {"x^5"}, {"y^4*t"}, {"x^5*y^3*t"}));
      break;
    case 84:
      P.push_back(detail::w_square_pass(ws));
      P.push_back(pass("row 1", 'z', {"x*y", "x^8"}, {"y^4*z"}, {"x^8*y^4", "x*y^5"}));
      P.push_back(pass("row 2", 'y', {"x^7"}, {"y^4*z"}, {"x^7*y^3*z"}));
      P.push_back(pass("row 3", 't', {"x*z", "x^2*y", "x^9"}, {"t^4"}, {"x*z*t^3", "x^2*y*t^3", "x^9*t^3"}));
      break;
    default:
      throw UsageError("no normalization plan for family " + std::to_string(number));
  }
  for (const auto& p : P) {
    std::set<int> targets;
    for (const auto& q : p.parts) {
      if (!targets.insert(q.target).second) throw InconsistencyError("plan pass " + p.label + " repeats a target");
      for (const auto& m : q.templ)
        if (m.weighted_degree(ws) != ws.weight(q.target) || m.e[q.target] != 0)
          throw InconsistencyError("plan template " + format_monomial(m) + " does not fit its target");
    }
    detail::part_order(p);
    for (const auto& m : p.eliminate)
      if (m.weighted_degree(ws) != ws.degree()) throw InconsistencyError("plan monomial of wrong degree");
  }
  return plan;
}

// Families for which sampling forces rational splitting on lines where a
// pass must solve a nonlinear equation (or where roots feed a certificate).
inline std::vector<SplitStratum> plan_split_strata(int number) {
  switch (number) {
    case 19: return {{1, 4}, {2, 3}};
    case 28: return {{1, 2}};
    case 49: return {{1, 3}};
    case 59: return {{1, 2}};
    default: return {};
  }
}

// ---------------------------------------------------------------------------
// Solving one pass

namespace detail {
// Polynomial in the template constants c_0..c_{k-1}.
using ParamPoly = std::map<std::vector<int>, Rational>;

inline void param_add(ParamPoly& p, const std::vector<int>& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

inline Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// Coefficient of each eliminated monomial after the simultaneous change;
// unknown k numbers the template monomials of all parts in order.
inline std::vector<ParamPoly> pass_equations(const GradedPolynomial& f, const PlanPass& p) {
  const std::size_t k = p.unknowns();
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < p.eliminate.size(); ++i) index[p.eliminate[i]] = i;
  std::vector<ParamPoly> eqs(p.eliminate.size());
  std::vector<std::pair<std::size_t, std::size_t>> slot;  // unknown -> (part, template)
  for (std::size_t q = 0; q < p.parts.size(); ++q)
    for (std::size_t t = 0; t < p.parts[q].templ.size(); ++t) slot.emplace_back(q, t);

  for (const auto& [m, c] : f.terms()) {
    Monomial rest = m;
    std::vector<int> power(p.parts.size());
    for (std::size_t q = 0; q < p.parts.size(); ++q) {
      power[q] = m.e[p.parts[q].target];
      rest.e[p.parts[q].target] = 0;
    }
    std::vector<int> uses(k, 0);
    std::vector<int> left(power);
    // Distribute each part's power among x_target itself and its templates.
    auto rec = [&](auto&& self, std::size_t u, Monomial acc) -> void {
      if (u == k) {
        Monomial full = acc;
        for (std::size_t q = 0; q < p.parts.size(); ++q) full.e[p.parts[q].target] += left[q];
        auto it = index.find(full);
        if (it == index.end()) return;
        Integer multi = 1;
        for (std::size_t q = 0; q < p.parts.size(); ++q) multi *= factorial(power[q]) / factorial(left[q]);
        for (int v : uses) multi /= factorial(v);
        param_add(eqs[it->second], uses, c * Rational(multi));
        return;
      }
      const auto [q, t] = slot[u];
      const Monomial& T = p.parts[q].templ[t];
      const int budget = left[q];
      for (int use = 0; use <= budget; ++use) {
        uses[u] = use;
        left[q] = budget - use;
        Monomial next = acc;
        for (int v = 0; v < kVars; ++v) next.e[v] += use * T.e[v];
        self(self, u + 1, next);
      }
      uses[u] = 0;
      left[q] = budget;
    };
    rec(rec, 0, rest);
  }
  return eqs;
}

inline Rational pow_r(const Rational& b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline ParamPoly param_eval(const ParamPoly& p, const std::vector<std::optional<Rational>>& values) {
  ParamPoly out;
  for (const auto& [e, c] : p) {
    std::vector<int> left = e;
    Rational coeff = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (values[i] && e[i] > 0) {
        coeff *= pow_r(*values[i], e[i]);
        left[i] = 0;
      }
    param_add(out, left, coeff);
  }
  return out;
}

inline std::set<std::size_t> unknowns_of(const ParamPoly& p) {
  std::set<std::size_t> s;
  for (const auto& [e, c] : p)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) s.insert(i);
  return s;
}

// Smallest |r|, ties to the smaller value; nullopt when no rational root.
inline std::optional<Rational> preferred_root(const UniPoly& u) {
  auto roots = rational_roots(u);
  if (roots.empty()) return std::nullopt;
  return *std::min_element(roots.begin(), roots.end(), [](const Rational& a, const Rational& b) {
    Rational aa = a < 0 ? Rational(-a) : a, bb = b < 0 ? Rational(-b) : b;
    return aa != bb ? aa < bb : a < b;
  });
}

inline std::string pass_name(const PlanPass& p) {
  std::string t;
  for (const auto& q : p.parts) t += kVarNames[q.target];
  return "pass " + p.label + " (" + t + ")";
}

// Gauss-Jordan on the equations that are currently affine in the unknowns.
// Assigns every unknown the system determines on its own; returns how many.
inline std::size_t solve_affine(const std::vector<ParamPoly>& eqs, std::vector<std::optional<Rational>>& value,
                                const PlanPass& p) {
  const std::size_t k = value.size();
  std::vector<std::vector<Rational>> rows;  // k coefficients, then the constant
  for (const auto& e : eqs) {
    std::vector<Rational> row(k + 1);
    bool affine = !unknowns_of(e).empty();
    for (const auto& [ex, c] : e) {
      int deg = 0;
      std::size_t at = k;
      for (std::size_t i = 0; i < k; ++i)
        if (ex[i] > 0) {
          deg += ex[i];
          at = i;
        }
      if (deg > 1) affine = false;
      row[at] += c;
    }
    if (affine) rows.push_back(std::move(row));
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < k && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const Rational inv = Rational(1) / rows[r][col];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Rational f = rows[i][col];
      for (std::size_t j = 0; j <= k; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i][k] != 0)
      throw GenericityError(pass_name(p) + ": linear conditions on the substitution constants are inconsistent "
                                           "(degenerate member)");
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < r; ++i) {
    bool alone = true;
    for (std::size_t j = 0; j < k && alone; ++j) alone = j == pivot_col[i] || rows[i][j] == 0;
    if (!alone) continue;
    value[pivot_col[i]] = -rows[i][k];
    ++assigned;
  }
  return assigned;
}

// Constants of the substitutions of one pass. Equations are solved as they
// become determined: affine ones jointly, otherwise any equation in a single
// unknown (nonlinear ones take the preferred rational root).
inline std::vector<Substitution> solve_pass(const GradedPolynomial& f, const PlanPass& p) {
  const std::vector<ParamPoly> eqs = pass_equations(f, p);
  const std::size_t k = p.unknowns();
  std::vector<std::optional<Rational>> value(k);
  std::vector<const Monomial*> templ;
  for (const auto& q : p.parts)
    for (const auto& m : q.templ) templ.push_back(&m);
  for (;;) {
    std::vector<ParamPoly> cur;
    bool open = false;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      cur.push_back(param_eval(eqs[i], value));
      if (!unknowns_of(cur.back()).empty()) {
        open = true;
        continue;
      }
      if (cur.back().empty()) continue;
      if (unknowns_of(eqs[i]).empty())
        throw PlanError(pass_name(p) + ": coefficient of " + format_monomial(p.eliminate[i]) +
                        " does not depend on the substitution constants");
      throw GenericityError(pass_name(p) + ": coefficient of " + format_monomial(p.eliminate[i]) +
                            " cannot be eliminated (degenerate member)");
    }
    if (!open) break;
    if (solve_affine(cur, value, p) > 0) continue;
    bool progress = false;
    for (std::size_t i = 0; i < cur.size() && !progress; ++i) {
      auto unk = unknowns_of(cur[i]);
      if (unk.size() != 1) continue;
      const std::size_t u = *unk.begin();
      std::vector<Rational> coeffs;
      for (const auto& [e, c] : cur[i]) {
        const auto deg = static_cast<std::size_t>(e[u]);
        if (coeffs.size() <= deg) coeffs.resize(deg + 1);
        coeffs[deg] += c;
      }
      UniPoly poly(std::move(coeffs));
      auto r = preferred_root(poly);
      if (!r)
        throw GenericityError(pass_name(p) + ": no rational constant for " + format_monomial(*templ[u]) + " kills " +
                              format_monomial(p.eliminate[i]) + " (degree-" + std::to_string(poly.degree()) +
                              " equation without rational root)");
      value[u] = *r;
      progress = true;
    }
    if (!progress) throw PlanError(pass_name(p) + ": equations are not triangular in the substitution constants");
  }
  std::vector<Substitution> out;
  std::size_t base = 0;
  std::vector<std::size_t> first(p.parts.size());
  for (std::size_t q = 0; q < p.parts.size(); ++q) {
    first[q] = base;
    base += p.parts[q].templ.size();
  }
  for (std::size_t q : part_order(p)) {
    const PassPart& part = p.parts[q];
    GradedPolynomial rest(f.ws(), f.ws().weight(part.target));
    for (std::size_t t = 0; t < part.templ.size(); ++t)
      if (value[first[q] + t]) rest.add_term(part.templ[t], *value[first[q] + t]);
    if (!rest.is_zero()) out.emplace_back(part.target, rest);
  }
  return out;
}
}  // namespace detail

struct NormalizationResult {
  GradedPolynomial f;
  // Non-identity substitutions; applying them to the input one after another
  // reproduces f.
  std::vector<Substitution> applied;
  int sweeps = 0;
};

inline constexpr int kMaxSweeps = 16;

// Runs the passes in order, repeating whole sweeps until one sweep changes
// nothing: a later pass may reintroduce a monomial an earlier pass removed,
// and the next sweep removes it again with a change of the same type.
inline NormalizationResult normalize(const GradedPolynomial& f, const NormalizationPlan& plan) {
  if (f.ws().weights() != plan.ws.weights() || f.grade() != plan.ws.degree())
    throw UsageError("normalize: polynomial does not belong to the plan's family " + plan.ws.str());
  NormalizationResult out{f, {}, 0};
  bool settled = false;
  while (!settled && out.sweeps < kMaxSweeps) {
    ++out.sweeps;
    settled = true;
    for (const auto& p : plan.passes) {
      for (const auto& m : p.pivots)
        if (!out.f.has(m))
          throw GenericityError(detail::pass_name(p) + ": pivot " + format_monomial(m) + " is absent");
      std::vector<Substitution> subs = detail::solve_pass(out.f, p);
      if (subs.empty()) continue;
      settled = false;
      for (auto& s : subs) {
        out.f = substitute(out.f, s);
        out.applied.push_back(std::move(s));
      }
      for (const auto& m : p.eliminate)
        if (out.f.has(m))
          throw PlanError(detail::pass_name(p) + ": " + format_monomial(m) + " survived its own pass");
      for (const auto& m : p.pivots)
        if (!out.f.has(m))
          throw GenericityError(detail::pass_name(p) + ": pivot " + format_monomial(m) + " vanished");
    }
  }
  for (const auto& p : plan.passes)
    for (const auto& m : p.eliminate)
      if (out.f.has(m))
        throw PlanError("plan-order: " + format_monomial(m) + " from " + detail::pass_name(p) + " still present after " +
                        std::to_string(kMaxSweeps) + " sweeps");
  return out;
}

// Seeded general member of a planned family, drawn with the plan's split lines
// and distinct roots on every coordinate line.
inline SampledMember sample_for_plan(int number, std::uint64_t seed, int budget = 1000) {
  const NormalizationPlan plan = builtin_plan(number);
  SamplingOptions opt = SamplingOptions::defaults(plan.ws);
  opt.split = plan_split_strata(number);
  opt.budget = budget;
  return sample_general_member(plan.ws, seed, opt);
}

// Every monomial of degree d that the plan does not eliminate.
inline std::vector<Monomial> expected_normal_support(const NormalizationPlan& plan) {
  std::set<Monomial> gone;
  for (const auto& p : plan.passes) gone.insert(p.eliminate.begin(), p.eliminate.end());
  std::vector<Monomial> out;
  for (const auto& m : enumerate_monomials(plan.ws, plan.ws.degree()))
    if (!gone.count(m)) out.push_back(m);
  return out;
}

struct NormalizedMember {
  SampledMember sample;
  NormalizationResult result;
  int tries = 0;  // seeds consumed: seed, seed+1, ...
};

// Samples with seed, seed+1, ... until the member normalizes and no
// coefficient outside the eliminated set cancels by accident.
inline NormalizedMember normalized_general_member(int number, std::uint64_t seed, int budget = 64) {
  if (budget < 1) throw UsageError("budget must be positive");
  const NormalizationPlan plan = builtin_plan(number);
  const std::vector<Monomial> want = expected_normal_support(plan);
  std::string last;
  for (int k = 0; k < budget; ++k) {
    try {
      SampledMember s = sample_for_plan(number, seed + static_cast<std::uint64_t>(k));
      NormalizationResult r = normalize(s.f, plan);
      auto missing = std::find_if(want.begin(), want.end(), [&](const Monomial& m) { return !r.f.has(m); });
      if (missing == want.end()) return {std::move(s), std::move(r), k + 1};
      last = "coefficient of " + format_monomial(*missing) + " cancelled";
    } catch (const GenericityError& e) {
      last = e.what();
    }
  }
  throw GenericityError("no general member of family " + std::to_string(number) + " normalized within " +
                        std::to_string(budget) + " seeds; last: " + last);
}

// ---------------------------------------------------------------------------
// Cubic normal form for d = 3*a5, a4 = a5

struct CubicNormalForm {
  GradedPolynomial f;      // pure (t, w) part equals w^2*t - w*t^2
  LinearChange2 change;    // applied to the input, then divided by scale
  Rational scale;
};

inline CubicNormalForm cubic_normal_form(const GradedPolynomial& f) {
  const WeightSystem& ws = f.ws();
  if (f.grade() != 3 * ws.weight(4) || ws.weight(3) != ws.weight(4))
    throw PreconditionError("cubic_normal_form needs d = 3*a5 and a4 = a5");
  // coefficients[k] multiplies t^(3-k) w^k
  BinaryForm c = edge_restriction(f, 3, 4).form;
  if (c.is_zero()) throw GenericityError("cubic_normal_form: the (t,w) cubic vanishes");
  if (!detail::distinct_roots(c)) throw GenericityError("cubic_normal_form: the (t,w) cubic has a repeated root");
  auto roots = rational_projective_roots(c);
  if (roots.size() != 3) throw GenericityError("cubic_normal_form: the (t,w) cubic does not split over Q");

  // l = w0*t - t0*w vanishes at [t0 : w0]
  std::array<std::array<Rational, 2>, 3> l;
  for (int k = 0; k < 3; ++k) l[k] = {roots[k].v(), -roots[k].u()};
  // l3 = alpha*l1 + beta*l2
  Rational det = l[0][0] * l[1][1] - l[0][1] * l[1][0];
  Rational alpha = (l[2][0] * l[1][1] - l[2][1] * l[1][0]) / det;
  Rational beta = (l[0][0] * l[2][1] - l[0][1] * l[2][0]) / det;
  // product l1*l2*l3 as t^3, t^2w, tw^2, w^3 coefficients
  std::vector<Rational> prod{1};
  for (int k = 0; k < 3; ++k) {
    std::vector<Rational> next(prod.size() + 1);
    for (std::size_t i = 0; i < prod.size(); ++i) {
      next[i] += prod[i] * l[k][0];
      next[i + 1] += prod[i] * l[k][1];
    }
    prod = std::move(next);
  }
  Rational lead;
  for (int k = 0; k <= 3; ++k)
    if (prod[k] != 0) {
      lead = c.coefficients[k] / prod[k];
      break;
    }
  const Rational kappa = -lead / (alpha * beta);
  // new T = -beta*l2, new W = alpha*l1; the substitution expresses old (t, w)
  // through the new coordinates.
  LinearChange2 forward{3, 4, {-beta * l[1][0], -beta * l[1][1], alpha * l[0][0], alpha * l[0][1]}};
  LinearChange2 change = forward.inverse();
  GradedPolynomial g = substitute(f, change) * (Rational(1) / kappa);
  return {std::move(g), change, kappa};
}

// Inverse of cubic_normal_form: recovers the input polynomial.
inline GradedPolynomial undo_cubic_normal_form(const CubicNormalForm& n) {
  return substitute(n.f, n.change.inverse()) * n.scale;
}

// Coefficients of w^2, t^2, wt, w, t, 1 (polynomials in x, y, z) of a normal form.
inline std::map<std::string, GradedPolynomial> cubic_form_parts(const GradedPolynomial& g) {
  const WeightSystem& ws = g.ws();
  const int a5 = ws.weight(4);
  const std::array<std::tuple<const char*, int, int>, 6> slots{{
      {"f_a5", 0, 2}, {"g_a5", 2, 0}, {"h_a5", 1, 1}, {"f_2a5", 0, 1}, {"g_2a5", 1, 0}, {"h_d", 0, 0}}};
  std::map<std::string, GradedPolynomial> out;
  for (const auto& [name, et, ew] : slots) out.emplace(name, GradedPolynomial(ws, g.grade() - a5 * (et + ew)));
  for (const auto& [m, c] : g.terms()) {
    const int et = m.e[3], ew = m.e[4];
    if (et + ew == 3) continue;
    for (const auto& [name, st, sw] : slots)
      if (st == et && sw == ew) {
        Monomial rest = m;
        rest.e[3] = rest.e[4] = 0;
        out.at(name).add_term(rest, c);
      }
  }
  return out;
}

// Support of the involution-invariant quartic shape
// h4(x,y,z) + t^2 a2 + t w b2 + w^2 c2 + g4(t,w).
inline std::vector<Monomial> tau_template_support() {
  const WeightSystem ws({1, 1, 1, 1, 1}, 4);
  std::vector<Monomial> out;
  for (const auto& m : enumerate_monomials(ws, 4)) {
    const int tw = m.e[3] + m.e[4];
    if (tw % 2 == 0) out.push_back(m);
  }
  return out;
}

}  // namespace wfano
