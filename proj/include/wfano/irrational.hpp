#pragma once

// Degree of irrationality of the general member of a catalog family, with a
// justification chain of rule tags, each backed by a citation or by a
// computation in this library.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wfano/catalog.hpp"
#include "wfano/error.hpp"
#include "wfano/wspace.hpp"

namespace wfano {

struct JustificationStep {
  std::string tag;
  std::string citation;
  std::string detail;
  friend bool operator==(const JustificationStep&, const JustificationStep&) = default;
};

struct IrrationalityVerdict {
  std::set<int> values;
  bool general_only = false;
  std::vector<JustificationStep> justification;
  friend bool operator==(const IrrationalityVerdict&, const IrrationalityVerdict&) = default;
};

inline const std::map<std::string, std::string>& rule_citations() {
  static const std::map<std::string, std::string> table{
      {"projection-degree-le-2",
       "computed: the projection eliminating w is generically finite of degree equal to the w-degree of f "
       "(degree of irrationality as defined by Moh-Heinzer 1982)"},
      {"irrational-cited",
       "Iskovskikh-Manin 1971 (quartic threefolds); Iskovskikh 1980; Corti-Pukhlikov-Reid 2000 "
       "(birational rigidity of the index-one hypersurfaces)"},
      {"projection-two-to-one", "computed: d < 3*a5, so f has w-degree 2 and the projection eliminating w is 2:1"},
      {"normal-form-projection",
       "computed: d = 3*a5, a4 = a5; after the cubic normal form in (t, w) the projection forgetting w is 2:1"},
      {"projection-degree-3", "computed: projection giving the upper bound 3"},
      {"super-rigid-bir-aut",
       "Iskovskikh-Manin 1971; Corti-Pukhlikov-Reid 2000 and the cited rigidity literature: a general member is "
       "birationally super-rigid, so every birational self-map is biregular"},
      {"aut-trivial-certificate",
       "computed: certify_trivial_automorphisms (normalization, diagonal symmetry group, line stabilizer)"},
      {"aut-trivial-cited", "Matsumura-Monsky 1964: a general hypersurface of degree >= 3 has trivial automorphism group"},
  };
  return table;
}

namespace detail {
inline JustificationStep step(const std::string& tag, std::string detail = {}) {
  return {tag, rule_citations().at(tag), std::move(detail)};
}
}  // namespace detail

// Largest e with a degree-d monomial w^e * (monomial in x, y, z, t).
inline int max_w_exponent(const WeightSystem& ws) {
  DegreeReach reach(ws.weights());
  for (int e = ws.degree() / ws.weight(4); e >= 0; --e)
    if (reach.reachable(Stratum::of({0, 1, 2, 3}), ws.degree() - e * ws.weight(4))) return e;
  return 0;
}

struct ProjectionDegree {
  std::optional<int> degree;  // nullopt: unresolved
  int w_degree = 0;
  bool via_normal_form = false;
  std::string reason;
};

// Degree of the projection eliminating w on a general member.
inline ProjectionDegree projection_degree(const FamilyRecord& r) {
  const WeightSystem& ws = r.ws;
  if (ws.weight(0) != 1) throw PreconditionError("projection_degree needs a1 = 1, got " + ws.str());
  ProjectionDegree p;
  p.w_degree = max_w_exponent(ws);
  if (p.w_degree <= 2) {
    p.degree = p.w_degree;
    p.reason = "f has w-degree " + std::to_string(p.w_degree);
  } else if (p.w_degree == 3 && ws.degree() == 3 * ws.weight(4) && ws.weight(3) == ws.weight(4) &&
             !is_exceptional_eight(ws)) {
    p.degree = 2;
    p.via_normal_form = true;
    p.reason = "cubic normal form in (t, w) leaves w-degree 2";
  } else {
    p.reason = "f has w-degree " + std::to_string(p.w_degree) + "; no reduction to a 2:1 projection";
  }
  return p;
}

inline IrrationalityVerdict decide(const FamilyRecord& record) {
  const WeightSystem& ws = record.ws;
  if (!evaluate_family(ws)) throw PreconditionError("decide: " + ws.str() + " is not a catalog family");
  IrrationalityVerdict v;
  const int d = ws.degree(), a5 = ws.weight(4);

  if (ws.fano_index() >= 2) {
    const int k = max_w_exponent(ws);
    std::string how = "w-degree " + std::to_string(k);
    if (k == 3 && d == 3 * a5 && ws.weight(3) == a5)
      // Move a point of X on the (t, w) line to the w-vertex: w^3 drops out.
      how = "w-degree 3; projecting from a point of X on the (t,w) line gives degree 2";
    else if (k > 2)
      throw InconsistencyError("index >= 2 family " + ws.str() + " has w-degree " + std::to_string(k));
    v.values = {1, 2};
    v.justification.push_back(detail::step("projection-degree-le-2", how));
    return v;
  }

  v.justification.push_back(detail::step("irrational-cited"));
  if (!is_exceptional_eight(ws)) {
    ProjectionDegree p = projection_degree(record);
    if (p.degree != 2)
      throw InconsistencyError("index-one family " + ws.str() + " outside the exceptional eight: " + p.reason);
    v.values = {2};
    v.justification.push_back(detail::step(p.via_normal_form ? "normal-form-projection" : "projection-two-to-one",
                                           p.reason));
    return v;
  }

  v.values = {3};
  v.general_only = true;
  const int number = *paper_number(ws.septuple());
  if (number == 1) {
    v.justification.push_back(detail::step("projection-degree-3", "projection from a point of the quartic"));
    v.justification.push_back(detail::step("super-rigid-bir-aut"));
    v.justification.push_back(detail::step("aut-trivial-cited"));
  } else {
    v.justification.push_back(
        detail::step("projection-degree-3", "f has w-degree " + std::to_string(max_w_exponent(ws))));
    v.justification.push_back(detail::step("super-rigid-bir-aut"));
    v.justification.push_back(detail::step("aut-trivial-certificate", "family " + std::to_string(number)));
  }
  return v;
}

inline std::string values_string(const std::set<int>& values) {
  std::string s = "{";
  for (int x : values) s += (s.size() > 1 ? "," : "") + std::to_string(x);
  return s + "}";
}

}  // namespace wfano
