#pragma once

// Defining predicates of a family X_d in P(a1,...,a5), evaluated for a general
// member, i.e. for the support "all monomials of degree d".

#include <string>
#include <vector>

#include "wfano/wspace.hpp"

namespace wfano {

struct StratumFailure {
  Stratum stratum;
  std::string reason;
  friend bool operator==(const StratumFailure&, const StratumFailure&) = default;
};

struct MembershipReport {
  bool wps_well_formed = false;
  bool hypersurface_well_formed = false;
  bool linear_cone = false;
  bool quasismooth_general = false;
  std::vector<StratumFailure> failing_strata;

  bool accepted() const {
    return wps_well_formed && hypersurface_well_formed && !linear_cone && quasismooth_general;
  }
  friend bool operator==(const MembershipReport&, const MembershipReport&) = default;
};

inline bool is_linear_cone(const WeightSystem& ws) {
  for (int a : ws.weights())
    if (a == ws.degree()) return true;
  return false;
}

// Outside variables x_j (j not in s) admitting a degree-d monomial
// (monomial in s) * x_j. Each outside variable counts once.
inline int outside_partners(const WeightSystem& ws, const DegreeReach& reach, Stratum s) {
  int n = 0;
  for (int j = 0; j < kVars; ++j)
    if (!s.contains(j) && reach.has_pure_monomial(s, ws.degree() - ws.weight(j))) ++n;
  return n;
}

// Combinatorial quasismoothness test for the general member: every nonempty
// stratum S either carries a degree-d monomial in its own variables, or has
// |S| distinct outside variables x_j with a monomial (monomial in S) * x_j.
inline std::vector<StratumFailure> quasismooth_failures(const WeightSystem& ws, const DegreeReach& reach) {
  std::vector<StratumFailure> out;
  for (Stratum s : all_strata()) {
    if (reach.has_pure_monomial(s, ws.degree())) continue;
    int partners = outside_partners(ws, reach, s);
    if (partners >= s.size()) continue;
    out.push_back({s, "no degree-" + std::to_string(ws.degree()) + " monomial in " + s.name() + " and only " +
                          std::to_string(partners) + " outside partner(s)"});
  }
  return out;
}

inline std::pair<bool, std::vector<StratumFailure>> quasismooth_general(const WeightSystem& ws) {
  if (is_linear_cone(ws)) throw PreconditionError("quasismooth_general: " + ws.str() + " is a linear cone");
  DegreeReach reach(ws.weights());
  auto failures = quasismooth_failures(ws, reach);
  return {failures.empty(), std::move(failures)};
}

// Ambient well-formedness plus: no 2-dimensional singular stratum of the
// ambient space (three weights with common factor q > 1) lies inside X.
inline bool hypersurface_well_formed(const WeightSystem& ws, const DegreeReach& reach) {
  if (!wps_well_formed(ws)) return false;
  for (Stratum s : all_strata()) {
    if (s.size() != 3 || stratum_gcd(ws, s) == 1) continue;
    if (!reach.has_pure_monomial(s, ws.degree())) return false;
  }
  return true;
}

inline bool hypersurface_well_formed(const WeightSystem& ws) {
  return hypersurface_well_formed(ws, DegreeReach(ws.weights()));
}

inline MembershipReport membership_report(const WeightSystem& ws, const DegreeReach& reach) {
  MembershipReport r;
  r.wps_well_formed = wps_well_formed(ws);
  r.hypersurface_well_formed = hypersurface_well_formed(ws, reach);
  r.linear_cone = is_linear_cone(ws);
  if (!r.linear_cone) {
    r.failing_strata = quasismooth_failures(ws, reach);
    r.quasismooth_general = r.failing_strata.empty();
  }
  return r;
}

inline MembershipReport membership_report(const WeightSystem& ws) {
  return membership_report(ws, DegreeReach(ws.weights()));
}

}  // namespace wfano
