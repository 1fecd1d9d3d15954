#pragma once

// Command-line front end. run() is the whole program; tools/wfano.cpp only
// forwards argv so that tests can drive the same code with string streams.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wfano/catalog.hpp"
#include "wfano/catalog_io.hpp"
#include "wfano/error.hpp"
#include "wfano/irrational.hpp"
#include "wfano/membership.hpp"
#include "wfano/normalize.hpp"
#include "wfano/singular.hpp"
#include "wfano/symmetry.hpp"
#include "wfano/wspace.hpp"

namespace wfano::cli {

enum class Format { json, markdown };

struct CommandConfig {
  std::string subcommand;
  SearchBounds bounds;
  std::optional<int> index;
  std::uint64_t seed = 0;
  int jobs = 1;
  Format format = Format::json;
  std::string out;  // empty: stdout

  std::string weights, degree, septuple, points;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::vector<int> parse_int_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t(trim(item));
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size()) throw UsageError(std::string(flag) + ": '" + t + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

inline std::array<int, kVars> parse_weights(const std::string& text) {
  const auto v = parse_int_list(text, "--weights");
  if (v.size() != kVars) throw UsageError("--weights needs five comma-separated integers");
  std::array<int, kVars> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

// From --weights/--degree or --septuple (a1..a5,d or a1..a5,d,I).
inline WeightSystem weight_system(const CommandConfig& c) {
  if (!c.septuple.empty()) {
    if (!c.weights.empty() || !c.degree.empty()) throw UsageError("give either --septuple or --weights/--degree");
    const auto v = parse_int_list(c.septuple, "--septuple");
    if (v.size() != 6 && v.size() != 7) throw UsageError("--septuple needs a1,...,a5,d or a1,...,a5,d,I");
    WeightSystem ws({v[0], v[1], v[2], v[3], v[4]}, v[5]);
    if (v.size() == 7 && v[6] != ws.fano_index())
      throw UsageError("--septuple: index " + std::to_string(v[6]) + " but the weights give " +
                       std::to_string(ws.fano_index()));
    return ws;
  }
  if (c.weights.empty() || c.degree.empty()) throw UsageError("this command needs --septuple or --weights and --degree");
  const auto d = parse_int_list(c.degree, "--degree");
  if (d.size() != 1) throw UsageError("--degree takes one integer");
  return WeightSystem(parse_weights(c.weights), d[0]);
}

inline FamilyRecord catalog_record(const WeightSystem& ws) {
  auto r = evaluate_family(ws);
  if (!r) throw PreconditionError(ws.str() + " is not a quasismooth terminal well-formed family");
  return *r;
}

inline int family_number(const WeightSystem& ws) {
  const auto n = paper_number(ws.septuple());
  if (!n || !is_exceptional_eight(ws) || *n == 1)
    throw PreconditionError(ws.str() + " has no normalization plan (families 19, 28, 39, 49, 59, 66, 84 do)");
  return *n;
}

inline Json ws_json(const WeightSystem& ws) {
  Json a = Json::array();
  for (int v : ws.septuple()) a.push_back(std::to_string(v));
  return a;
}

inline std::string joined(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

inline std::vector<FamilyRecord> report_records(const CommandConfig& c) {
  if (const char* path = std::getenv("WFANO_CATALOG"); path && *path) return load_catalog(path);
  return classify(c.bounds, c.jobs);
}

inline std::string cmd_monomials(const CommandConfig& c) {
  const WeightSystem ws = weight_system(c);
  const auto ms = enumerate_monomials(ws, ws.degree());
  if (c.format == Format::markdown) {
    std::string s = "Degree " + std::to_string(ws.degree()) + " monomials of P" + ws.str().substr(0, ws.str().find(')') + 1) +
                    ": " + std::to_string(ms.size()) + "\n\n";
    for (const auto& m : ms) s += "- " + format_monomial(m) + "\n";
    return s;
  }
  return json_text({{"septuple", ws_json(ws)}, {"count", std::to_string(ms.size())}, {"monomials", monomials_json(ms)}});
}

inline Json membership_json(const MembershipReport& m) {
  Json fails = Json::array();
  for (const auto& f : m.failing_strata) fails.push_back({{"stratum", f.stratum.name()}, {"reason", f.reason}});
  return {{"wpsWellFormed", m.wps_well_formed},
          {"hypersurfaceWellFormed", m.hypersurface_well_formed},
          {"linearCone", m.linear_cone},
          {"quasismoothGeneral", m.quasismooth_general},
          {"failingStrata", fails},
          {"accepted", m.accepted()}};
}

inline Json basket_json(const SingularityBasket& b) {
  Json loci = Json::array();
  for (const auto& p : b.points)
    loci.push_back({{"stratum", p.locus.name()}, {"count", std::to_string(p.count)}, {"type", p.type.str()},
                    {"terminal", reid_tai_terminal(p.type)}});
  Json non = Json::array();
  for (const auto& s : b.non_isolated) non.push_back(s.name());
  return {{"basket", b.summary()}, {"loci", loci}, {"nonIsolatedLoci", non}, {"terminal", terminal_basket(b)}};
}

inline std::string cmd_check(const CommandConfig& c) {
  const WeightSystem ws = weight_system(c);
  const MembershipReport m = membership_report(ws);
  const SingularityBasket b = singular_points_general(ws);
  const bool member = m.accepted() && terminal_basket(b);
  if (c.format == Format::markdown) {
    auto yn = [](bool v) { return v ? std::string("yes") : std::string("no"); };
    std::string s = "| property | value |\n|---|---|\n";
    s += "| weighted projective space well-formed | " + yn(m.wps_well_formed) + " |\n";
    s += "| hypersurface well-formed | " + yn(m.hypersurface_well_formed) + " |\n";
    s += "| linear cone | " + yn(m.linear_cone) + " |\n";
    s += "| quasismooth (general member) | " + yn(m.quasismooth_general) + " |\n";
    s += "| terminal | " + yn(terminal_basket(b)) + " |\n";
    s += "| in catalog | " + yn(member) + " |\n";
    for (const auto& f : m.failing_strata) s += "\nquasismoothness fails on " + f.stratum.name() + ": " + f.reason + "\n";
    return s;
  }
  return json_text({{"septuple", ws_json(ws)},
                    {"membership", membership_json(m)},
                    {"singularities", basket_json(b)},
                    {"member", member},
                    {"paperNumber", paper_number(ws.septuple()) ? Json(std::to_string(*paper_number(ws.septuple())))
                                                                : Json(nullptr)}});
}

inline std::string cmd_classify(const CommandConfig& c) {
  auto records = classify(c.bounds, c.jobs);
  if (c.index) records = with_index(records, *c.index);
  return c.format == Format::markdown ? markdown_table(records) : catalog_json(records);
}

inline std::string cmd_basket(const CommandConfig& c) {
  const WeightSystem ws = weight_system(c);
  const SingularityBasket b = singular_points_general(ws);
  if (c.format == Format::markdown) {
    std::string s = "| locus | count | type | terminal |\n|---|---|---|---|\n";
    for (const auto& p : b.points)
      s += "| " + p.locus.name() + " | " + std::to_string(p.count) + " | " + p.type.str() + " | " +
           (reid_tai_terminal(p.type) ? "yes" : "no") + " |\n";
    for (const auto& n : b.non_isolated) s += "\nnon-isolated singular locus along " + n.name() + "\n";
    return s;
  }
  Json j = basket_json(b);
  j["septuple"] = ws_json(ws);
  return json_text(j);
}

inline std::string cmd_normalize(const CommandConfig& c) {
  const WeightSystem ws = weight_system(c);
  const int number = family_number(ws);
  const NormalizedMember nm = normalized_general_member(number, c.seed);
  std::vector<std::string> subs;
  for (const auto& s : nm.result.applied) subs.push_back(s.str());
  const auto support = nm.result.f.support();
  if (c.format == Format::markdown) {
    std::string s = "Family " + std::to_string(number) + ", seed " + std::to_string(nm.sample.seed) + "\n\n";
    s += "Sampled: " + nm.sample.f.str() + "\n\nSubstitutions:\n";
    for (const auto& x : subs) s += "- " + x + "\n";
    s += "\nNormal form: " + nm.result.f.str() + "\n\n| monomial |\n|---|\n";
    for (const auto& m : support) s += "| " + format_monomial(m) + " |\n";
    return s;
  }
  return json_text({{"family", std::to_string(number)},
                    {"septuple", ws_json(ws)},
                    {"seed", std::to_string(c.seed)},
                    {"sampleSeed", std::to_string(nm.sample.seed)},
                    {"sampled", nm.sample.f.str()},
                    {"substitutions", subs},
                    {"sweeps", std::to_string(nm.result.sweeps)},
                    {"normalized", nm.result.f.str()},
                    {"support", monomials_json(support)}});
}

inline std::string group_markdown(const DiagonalSymmetryGroup& g) {
  std::vector<std::string> t;
  for (const auto& x : g.torsion) t.push_back(to_string(x));
  return "free rank " + std::to_string(g.free_rank) + ", torsion [" + joined(t, ", ") + "], " +
         (g.induced_trivial ? "acts on X through the weighted torus only" : "acts nontrivially on X");
}

inline std::string cmd_autgroup(const CommandConfig& c) {
  const WeightSystem ws = weight_system(c);
  const auto n = paper_number(ws.septuple());
  if (n && is_exceptional_eight(ws) && *n != 1) {
    const AutomorphismCertificate cert = certify_trivial_automorphisms(*n, c.seed);
    if (c.format == Format::markdown) {
      std::string s = "Family " + std::to_string(*n) + " (seed " + std::to_string(cert.seed) + ")\n\n";
      s += "- normal form: " + cert.normalized.str() + "\n";
      s += "- diagonal group: " + group_markdown(cert.diagonal) + "\n";
      s += std::string("- diagonal involution: ") +
           (cert.involution.found ? sign_string(*cert.involution.witness) : std::string("none")) + "\n";
      if (cert.line_points) {
        std::vector<std::string> pts;
        for (const auto& p : cert.line_points->points.points) pts.push_back(line_point_string(p));
        s += "- points on " + cert.line_points->source + ": {" + joined(pts, ", ") + "}, stabilizer order " +
             std::to_string(cert.line_points->stabilizer_order) + "\n";
      }
      s += std::string("- automorphism group trivial: ") + (cert.trivial() ? "yes" : "no") + "\n";
      return s;
    }
    return json_text(certificate_json(cert));
  }
  // Any other weights: the group of the full degree-d support.
  const auto support = enumerate_monomials(ws, ws.degree());
  if (support.empty()) throw PreconditionError(ws.str() + " has no monomials of degree " + std::to_string(ws.degree()));
  const DiagonalSymmetryGroup g = diagonal_symmetry_group(support, ws);
  const InvolutionResult inv = has_diagonal_involution(support, ws);
  if (c.format == Format::markdown)
    return "Full support of " + ws.str() + ": " + group_markdown(g) + "; diagonal involution: " +
           (inv.found ? sign_string(*inv.witness) : std::string("none")) + "\n";
  return json_text({{"septuple", ws_json(ws)}, {"diagonalGroup", group_json(g)}, {"involution", involution_json(inv)}});
}

inline std::string cmd_stabilizer(const CommandConfig& c) {
  if (c.points.empty()) throw UsageError("stabilizer needs --points, e.g. --points 0,1,inf");
  std::vector<ProjPoint> pts;
  std::stringstream ss(c.points);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      pts.push_back(parse_line_point(item));
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("--points: cannot parse '" + item + "'");
    }
  }
  const PointSetOnLine set(pts);
  const auto group = pgl2_set_stabilizer(set);
  if (c.format == Format::markdown) {
    std::string s = "Stabilizer order " + std::to_string(group.size()) + "\n\n";
    for (const auto& m : group) s += "- " + m.str() + "\n";
    return s;
  }
  Json elems = Json::array();
  for (const auto& m : group) elems.push_back(mobius_json(m));
  return json_text({{"points", points_json(set)}, {"order", std::to_string(group.size())}, {"elements", elems}});
}

inline std::string cmd_verdict(const CommandConfig& c) {
  const FamilyRecord r = catalog_record(weight_system(c));
  const IrrationalityVerdict v = decide(r);
  if (c.format == Format::markdown) {
    std::string s = "d(X) in " + values_string(v.values) + (v.general_only ? " for a general member" : "") + "\n\n";
    for (const auto& st : v.justification)
      s += "- " + st.tag + (st.detail.empty() ? "" : " (" + st.detail + ")") + ": " + st.citation + "\n";
    return s;
  }
  Json j = verdict_json(v);
  j["septuple"] = ws_json(r.ws);
  return json_text(j);
}

inline std::string cmd_report(const CommandConfig& c) {
  auto records = report_records(c);
  if (c.index) records = with_index(records, *c.index);
  return c.format == Format::markdown ? markdown_report(records) : catalog_json(records);
}

inline std::string dispatch(const CommandConfig& c) {
  if (c.subcommand == "monomials") return cmd_monomials(c);
  if (c.subcommand == "check") return cmd_check(c);
  if (c.subcommand == "classify") return cmd_classify(c);
  if (c.subcommand == "basket") return cmd_basket(c);
  if (c.subcommand == "normalize") return cmd_normalize(c);
  if (c.subcommand == "autgroup") return cmd_autgroup(c);
  if (c.subcommand == "stabilizer") return cmd_stabilizer(c);
  if (c.subcommand == "verdict") return cmd_verdict(c);
  if (c.subcommand == "report") return cmd_report(c);
  throw UsageError("unknown subcommand '" + c.subcommand + "'");
}

inline std::string error_kind(const Error& e) {
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  if (dynamic_cast<const GenericityError*>(&e)) return "GenericityError";
  if (dynamic_cast<const PlanError*>(&e)) return "PlanError";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  if (dynamic_cast<const SchemaError*>(&e)) return "SchemaError";
  if (dynamic_cast<const InconsistencyError*>(&e)) return "InconsistencyError";
  return "DomainError";
}

}  // namespace detail

struct Invocation {
  CLI::App app{"Weighted Fano 3-fold hypersurfaces: catalog, normal forms, symmetry and degree of irrationality",
               "wfano"};
  CommandConfig config;
  std::string format = "json";

  Invocation() {
    app.require_subcommand(1);
    struct Spec {
      const char* name;
      const char* help;
    };
    const Spec specs[] = {
        {"monomials", "list the monomials of degree d"},
        {"check", "well-formedness, quasismoothness and terminality of a general member"},
        {"classify", "search for all families within the bounds"},
        {"basket", "singular points of a general member"},
        {"normalize", "normal form of a seeded general member (families 19, 28, 39, 49, 59, 66, 84)"},
        {"autgroup", "diagonal symmetry group, involutions and automorphism certificate"},
        {"stabilizer", "projective transformations of the line preserving a finite point set"},
        {"verdict", "degree of irrationality of a general member"},
        {"report", "markdown or JSON report over the catalog (WFANO_CATALOG or a fresh search)"},
    };
    for (const auto& s : specs) {
      CLI::App* sub = app.add_subcommand(s.name, s.help);
      const std::string name = s.name;
      sub->callback([this, name] { config.subcommand = name; });
      sub->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "markdown"}));
      sub->add_option("--out", config.out, "write output to this file instead of stdout");
      if (name == "monomials" || name == "check" || name == "basket" || name == "normalize" || name == "autgroup" ||
          name == "verdict") {
        sub->add_option("--weights", config.weights, "a1,a2,a3,a4,a5 (ascending)");
        sub->add_option("--degree", config.degree, "degree d");
        sub->add_option("--septuple", config.septuple, "a1,a2,a3,a4,a5,d[,I]");
      }
      if (name == "normalize" || name == "autgroup") sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
      if (name == "classify" || name == "report") {
        sub->add_option("--index", config.index, "keep only records with this Fano index");
        sub->add_option("--max-weight", config.bounds.max_weight, "largest weight searched")->capture_default_str();
        sub->add_option("--max-degree", config.bounds.max_degree, "largest degree searched")->capture_default_str();
        sub->add_option("--jobs", config.jobs, "parallel search partitions")->capture_default_str();
      }
      if (name == "stabilizer") sub->add_option("--points", config.points, "comma-separated points, e.g. 0,1,-1,inf");
    }
  }
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv.app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << inv.app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << inv.app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << inv.app.help();
    return kExitUsage;
  }
  CommandConfig& c = inv.config;
  c.format = inv.format == "markdown" ? Format::markdown : Format::json;
  try {
    if (c.jobs < 1) throw UsageError("--jobs must be at least 1");
    c.bounds.validate();
    const std::string text = detail::dispatch(c);
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw IoError("cannot open '" + c.out + "' for writing");
      f << text;
      if (!f) throw IoError("write to '" + c.out + "' failed");
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << inv.app.get_subcommand(c.subcommand)->help();
    return kExitUsage;
  } catch (const DomainError& e) {
    err << Json{{"error", {{"kind", detail::error_kind(e)}, {"message", e.what()}}}}.dump() << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    err << Json{{"error", {{"kind", "Error"}, {"message", e.what()}}}}.dump() << "\n";
    return kExitDomain;
  }
}

}  // namespace wfano::cli
