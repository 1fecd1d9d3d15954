#pragma once

// JSON catalog files, JSON renderings of the other results, and markdown
// tables. Integers are written as decimal strings.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wfano/catalog.hpp"
#include "wfano/error.hpp"
#include "wfano/irrational.hpp"
#include "wfano/symmetry.hpp"

namespace wfano {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

namespace detail {
inline std::string dec(long long v) { return std::to_string(v); }

inline long long parse_dec(const Json& j, const std::string& what) {
  if (!j.is_string()) throw SchemaError(what + ": expected a decimal string");
  const std::string s = j.get<std::string>();
  std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
  if (s.size() == start || s.size() > start + 12 ||
      s.find_first_not_of("0123456789", start) != std::string::npos || (s.size() > start + 1 && s[start] == '0'))
    throw SchemaError(what + ": malformed decimal string '" + s + "'");
  return std::stoll(s);
}

inline const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw SchemaError(std::string("missing field '") + name + "'");
  return j.at(name);
}
}  // namespace detail

inline Json verdict_json(const IrrationalityVerdict& v) {
  Json j;
  j["values"] = Json::array();
  for (int x : v.values) j["values"].push_back(detail::dec(x));
  j["generalOnly"] = v.general_only;
  j["justification"] = Json::array();
  for (const auto& s : v.justification) j["justification"].push_back({{"tag", s.tag}, {"citation", s.citation}, {"detail", s.detail}});
  return j;
}

inline Json record_json(const FamilyRecord& r) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["septuple"] = Json::array();
  for (int v : r.septuple()) j["septuple"].push_back(detail::dec(v));
  j["index"] = detail::dec(r.index());
  j["basket"] = r.basket.summary();
  j["basketLoci"] = Json::array();
  for (const auto& p : r.basket.points)
    j["basketLoci"].push_back({{"stratum", p.locus.name()}, {"count", detail::dec(p.count)}, {"type", p.type.str()}});
  j["nonIsolatedLoci"] = Json::array();
  for (const auto& s : r.basket.non_isolated) j["nonIsolatedLoci"].push_back(s.name());
  j["flags"] = {{"wpsWellFormed", r.membership.wps_well_formed},
                {"hypersurfaceWellFormed", r.membership.hypersurface_well_formed},
                {"linearCone", r.membership.linear_cone},
                {"quasismoothGeneral", r.membership.quasismooth_general},
                {"terminal", terminal_basket(r.basket)}};
  j["paperNumber"] = r.paper_number ? Json(detail::dec(*r.paper_number)) : Json(nullptr);
  j["verdict"] = verdict_json(decide(r));
  return j;
}

// Rebuilds a record and checks it against a fresh evaluation of its septuple.
inline FamilyRecord record_from_json(const Json& j) {
  const Json& version = detail::field(j, "schemaVersion");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
    throw SchemaError("unsupported schemaVersion " + version.dump() + " (expected \"" + kSchemaVersion + "\")");
  const Json& sep = detail::field(j, "septuple");
  if (!sep.is_array() || sep.size() != 7) throw SchemaError("septuple must list a1..a5, d, I");
  Septuple s{};
  for (std::size_t k = 0; k < 7; ++k) {
    const long long v = detail::parse_dec(sep[k], "septuple");
    if (v < 1 || v > kMaxDegree) throw SchemaError("septuple entry out of range");
    s[k] = static_cast<int>(v);
  }
  if (detail::parse_dec(detail::field(j, "index"), "index") != s[6]) throw SchemaError("index disagrees with septuple");
  WeightSystem ws = [&] {
    try {
      return weight_system_of(s);
    } catch (const Error& e) {
      throw SchemaError(std::string("septuple: ") + e.what());
    }
  }();

  FamilyRecord r{ws, {}, {}, std::nullopt};
  const Json& flags = detail::field(j, "flags");
  auto flag = [&](const char* name) {
    const Json& f = detail::field(flags, name);
    if (!f.is_boolean()) throw SchemaError(std::string("flag ") + name + " must be boolean");
    return f.get<bool>();
  };
  r.membership.wps_well_formed = flag("wpsWellFormed");
  r.membership.hypersurface_well_formed = flag("hypersurfaceWellFormed");
  r.membership.linear_cone = flag("linearCone");
  r.membership.quasismooth_general = flag("quasismoothGeneral");
  const bool terminal = flag("terminal");
  for (const Json& p : detail::field(j, "basketLoci")) {
    BasketPoint b;
    b.locus = [&] {
      try {
        return Stratum::parse(detail::field(p, "stratum").get<std::string>());
      } catch (const Error&) {
        throw SchemaError("malformed basket locus");
      }
    }();
    b.count = static_cast<int>(detail::parse_dec(detail::field(p, "count"), "basket count"));
    b.type = QuotientSingularity::parse(detail::field(p, "type").get<std::string>());
    r.basket.points.push_back(b);
  }
  for (const Json& n : detail::field(j, "nonIsolatedLoci")) {
    if (!n.is_string()) throw SchemaError("malformed non-isolated locus");
    try {
      r.basket.non_isolated.push_back(Stratum::parse(n.get<std::string>()));
    } catch (const Error&) {
      throw SchemaError("malformed non-isolated locus");
    }
  }
  const Json& num = detail::field(j, "paperNumber");
  if (!num.is_null()) r.paper_number = static_cast<int>(detail::parse_dec(num, "paperNumber"));

  auto fresh = evaluate_family(ws);
  if (!fresh) throw SchemaError(ws.str() + " is not an accepted family");
  if (!(r.membership.wps_well_formed == fresh->membership.wps_well_formed &&
        r.membership.hypersurface_well_formed == fresh->membership.hypersurface_well_formed &&
        r.membership.linear_cone == fresh->membership.linear_cone &&
        r.membership.quasismooth_general == fresh->membership.quasismooth_general))
    throw SchemaError(ws.str() + ": stored flags disagree with the criteria");
  r.membership.failing_strata = fresh->membership.failing_strata;
  if (!(r.basket == fresh->basket) || terminal != terminal_basket(fresh->basket))
    throw SchemaError(ws.str() + ": stored basket disagrees with the computed one");
  if (r.paper_number != fresh->paper_number) throw SchemaError(ws.str() + ": paperNumber disagrees with the lookup table");
  if (detail::field(j, "basket") != Json(r.basket.summary())) throw SchemaError(ws.str() + ": basket summary is stale");
  if (detail::field(j, "verdict") != verdict_json(decide(r)))
    throw SchemaError(ws.str() + ": stored verdict differs from decide()");
  return r;
}

inline std::string catalog_json(const std::vector<FamilyRecord>& records) {
  Json arr = Json::array();
  for (const auto& r : records) arr.push_back(record_json(r));
  return arr.dump(2) + "\n";
}

inline std::vector<FamilyRecord> parse_catalog(const std::string& text) {
  Json arr;
  try {
    arr = Json::parse(text);
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("catalog is not valid JSON: ") + e.what());
  }
  if (!arr.is_array()) throw SchemaError("catalog must be a JSON array of records");
  std::vector<FamilyRecord> out;
  try {
    for (const auto& j : arr) out.push_back(record_from_json(j));
  } catch (const Json::exception& e) {
    throw SchemaError(std::string("malformed record: ") + e.what());
  }
  return out;
}

inline void save_catalog(const std::vector<FamilyRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << catalog_json(records);
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::vector<FamilyRecord> load_catalog(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

// ---------------------------------------------------------------------------
// Markdown

inline std::string markdown_table(const std::vector<FamilyRecord>& records) {
  std::string s = "| № | a1 | a2 | a3 | a4 | a5 | d | I |\n|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : records) {
    s += "| " + (r.paper_number ? std::to_string(*r.paper_number) : std::string()) + " |";
    for (int v : r.septuple()) s += " " + std::to_string(v) + " |";
    s += "\n";
  }
  return s;
}

inline std::string markdown_report(const std::vector<FamilyRecord>& records) {
  std::string s = "## Families\n\n" + markdown_table(records);
  s += "\n## Baskets and degree of irrationality\n\n| a1 | a2 | a3 | a4 | a5 | d | I | basket | d(X) |\n"
       "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : records) {
    s += "|";
    for (int v : r.septuple()) s += " " + std::to_string(v) + " |";
    std::string b;
    for (const auto& line : r.basket.summary()) b += (b.empty() ? "" : ", ") + line;
    const IrrationalityVerdict v = decide(r);
    s += " " + (b.empty() ? std::string("smooth") : b) + " | " + values_string(v.values) +
         (v.general_only ? " (general)" : "") + " |\n";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Other results

inline Json monomials_json(const std::vector<Monomial>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(format_monomial(m));
  return a;
}

inline Json integers_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json group_json(const DiagonalSymmetryGroup& g) {
  Json j;
  j["freeRank"] = detail::dec(g.free_rank);
  j["torsion"] = integers_json(g.torsion);
  j["inducedTrivial"] = g.induced_trivial;
  j["smithDiagonal"] = integers_json(g.smith_diagonal);
  j["torsionGenerators"] = Json::array();
  for (const auto& t : g.torsion_generators) {
    Json e = Json::array();
    for (const auto& x : t.exponents) e.push_back(to_string(x));
    j["torsionGenerators"].push_back({{"order", to_string(t.order)}, {"exponents", e}});
  }
  return j;
}

inline Json involution_json(const InvolutionResult& r) {
  return {{"found", r.found}, {"witness", r.witness ? Json(sign_string(*r.witness)) : Json(nullptr)}};
}

inline Json mobius_json(const Mobius& m) {
  Json a = Json::array();
  for (const auto& x : m.matrix()) a.push_back(to_string(x));
  return a;
}

inline Json points_json(const PointSetOnLine& s) {
  Json a = Json::array();
  for (const auto& p : s.points) a.push_back(line_point_string(p));
  return a;
}

inline Json certificate_json(const AutomorphismCertificate& c) {
  Json j;
  j["family"] = detail::dec(c.number);
  j["seed"] = std::to_string(c.seed);
  j["normalizedSupport"] = monomials_json(c.normalized.support());
  j["normalized"] = c.normalized.str();
  j["substitutions"] = Json::array();
  for (const auto& s : c.applied) j["substitutions"].push_back(s.str());
  if (c.line_points)
    j["linePoints"] = {{"source", c.line_points->source},
                       {"points", points_json(c.line_points->points)},
                       {"stabilizerOrder", detail::dec(static_cast<long long>(c.line_points->stabilizer_order))}};
  else
    j["linePoints"] = nullptr;
  j["diagonalGroup"] = group_json(c.diagonal);
  j["involution"] = involution_json(c.involution);
  j["trivial"] = c.trivial();
  return j;
}

}  // namespace wfano
