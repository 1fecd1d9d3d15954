#pragma once

// Singular points of a general quasismooth member: coordinate vertices and
// points on 1-dimensional coordinate strata whose weights share a factor.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "wfano/error.hpp"
#include "wfano/membership.hpp"
#include "wfano/wspace.hpp"

namespace wfano {

class QuotientSingularity {
 public:
  QuotientSingularity() = default;
  // Weights are reduced mod r and sorted; each must be coprime to r.
  QuotientSingularity(int r, std::array<int, 3> weights) : r_(r) {
    if (r < 2) throw UsageError("quotient singularity order must be at least 2");
    for (int& w : weights) {
      w = ((w % r) + r) % r;
      if (std::gcd(w, r) != 1) throw UsageError("local weight not coprime to the order");
    }
    std::sort(weights.begin(), weights.end());
    w_ = weights;
  }

  int order() const { return r_; }
  const std::array<int, 3>& weights() const { return w_; }

  std::string str() const {
    return "1/" + std::to_string(r_) + "(" + std::to_string(w_[0]) + "," + std::to_string(w_[1]) + "," +
           std::to_string(w_[2]) + ")";
  }
  static QuotientSingularity parse(std::string_view text);

  friend bool operator==(const QuotientSingularity&, const QuotientSingularity&) = default;
  friend auto operator<=>(const QuotientSingularity&, const QuotientSingularity&) = default;

 private:
  int r_ = 2;
  std::array<int, 3> w_{1, 1, 1};
};

// "1/r(a,b,c)"
inline QuotientSingularity QuotientSingularity::parse(std::string_view text) {
  text = trim(text);
  auto bad = [&] { return SchemaError("malformed singularity '" + std::string(text) + "'"); };
  if (text.size() < 4 || text.substr(0, 2) != "1/" || text.back() != ')') throw bad();
  std::size_t open = text.find('(');
  if (open == std::string_view::npos) throw bad();
  auto number = [&](std::string_view s) {
    s = trim(s);
    if (s.empty() || s.size() > 6) throw bad();
    int v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw bad();
      v = v * 10 + (c - '0');
    }
    return v;
  };
  int r = number(text.substr(2, open - 2));
  std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  std::array<int, 3> w{};
  for (int k = 0; k < 3; ++k) {
    std::size_t comma = inner.find(',');
    if ((k < 2) == (comma == std::string_view::npos)) throw bad();
    w[k] = number(inner.substr(0, comma));
    if (k < 2) inner.remove_prefix(comma + 1);
  }
  try {
    QuotientSingularity q(r, w);
    if (q.weights() != w) throw bad();  // only the canonical form is accepted
    return q;
  } catch (const UsageError&) {
    throw bad();
  }
}

// Reid-Tai: sum_i (k*w_i mod r) > r for every k = 1..r-1.
inline bool reid_tai_terminal(const QuotientSingularity& q) {
  const int r = q.order();
  for (int k = 1; k < r; ++k) {
    int s = 0;
    for (int w : q.weights()) s += (k * w) % r;
    if (s <= r) return false;
  }
  return true;
}

struct BasketPoint {
  Stratum locus;  // vertex (one variable) or edge (two variables)
  int count = 1;
  QuotientSingularity type;
  friend bool operator==(const BasketPoint&, const BasketPoint&) = default;
};

struct SingularityBasket {
  std::vector<BasketPoint> points;
  std::vector<Stratum> non_isolated;

  bool empty() const { return points.empty() && non_isolated.empty(); }
  int total_points() const {
    int n = 0;
    for (const auto& p : points) n += p.count;
    return n;
  }
  // Aggregated "k × 1/r(a,b,c)" lines, sorted by type.
  std::vector<std::string> summary() const {
    std::map<QuotientSingularity, int> agg;
    for (const auto& p : points) agg[p.type] += p.count;
    std::vector<std::string> out;
    for (const auto& [q, k] : agg) out.push_back(std::to_string(k) + " × " + q.str());
    return out;
  }
  friend bool operator==(const SingularityBasket&, const SingularityBasket&) = default;
};

namespace detail {
// Local weights at a point whose stabilizer has order r and where the
// variables in `drop` are not local coordinates; nullopt when some weight is
// not coprime to r.
inline std::optional<QuotientSingularity> local_type(const WeightSystem& ws, int r, unsigned drop) {
  std::array<int, 3> w{};
  int n = 0;
  for (int k = 0; k < kVars; ++k) {
    if ((drop >> k) & 1u) continue;
    int v = ws.weight(k) % r;
    if (std::gcd(v, r) != 1) return std::nullopt;
    w[n++] = v;
  }
  return QuotientSingularity(r, w);
}
}  // namespace detail

inline SingularityBasket singular_points_general(const WeightSystem& ws, const DegreeReach& reach) {
  if (is_linear_cone(ws) || !quasismooth_failures(ws, reach).empty())
    throw PreconditionError("singular_points_general: " + ws.str() + " is not quasismooth");
  const int d = ws.degree();
  SingularityBasket b;

  // 2-dimensional strata with a common factor meet X in a curve of singular points.
  for (Stratum s : all_strata())
    if (s.size() == 3 && stratum_gcd(ws, s) > 1) b.non_isolated.push_back(s);

  for (int i = 0; i < kVars; ++i) {
    const int r = ws.weight(i);
    if (r < 2 || d % r == 0) continue;
    std::optional<QuotientSingularity> chosen;
    bool found = false, bad = false;
    for (int j = 0; j < kVars; ++j) {
      if (j == i || d - ws.weight(j) <= 0 || (d - ws.weight(j)) % r != 0) continue;
      auto q = detail::local_type(ws, r, (1u << i) | (1u << j));
      if (!found) {
        chosen = q;
        bad = !q.has_value();
        found = true;
      } else if (q != chosen) {
        throw InconsistencyError("vertex " + std::string(1, kVarNames[i]) + " of " + ws.str() +
                                 ": local type depends on the eliminated variable");
      }
    }
    if (!found) throw InconsistencyError("vertex " + std::string(1, kVarNames[i]) + " of " + ws.str() +
                                         " has no eliminating variable");
    if (bad)
      b.non_isolated.push_back(Stratum::of({i}));
    else
      b.points.push_back({Stratum::of({i}), 1, *chosen});
  }

  for (int i = 0; i < kVars; ++i)
    for (int j = i + 1; j < kVars; ++j) {
      const int q = std::gcd(ws.weight(i), ws.weight(j));
      if (q < 2) continue;
      Stratum edge = Stratum::of({i, j});
      if (!reach.has_pure_monomial(edge, d)) {
        b.non_isolated.push_back(edge);
        continue;
      }
      // Monomials x_i^p x_j^r of degree d form an arithmetic progression; the
      // restriction is a monomial times a binary form with that many terms.
      int terms = 0;
      for (int p = 0; p * ws.weight(i) <= d; ++p)
        if ((d - p * ws.weight(i)) % ws.weight(j) == 0) ++terms;
      const int interior = terms - 1;
      if (interior == 0) continue;
      auto t = detail::local_type(ws, q, (1u << i) | (1u << j));
      if (!t)
        b.non_isolated.push_back(edge);
      else
        b.points.push_back({edge, interior, *t});
    }

  std::sort(b.non_isolated.begin(), b.non_isolated.end());
  b.non_isolated.erase(std::unique(b.non_isolated.begin(), b.non_isolated.end()), b.non_isolated.end());
  return b;
}

inline SingularityBasket singular_points_general(const WeightSystem& ws) {
  return singular_points_general(ws, DegreeReach(ws.weights()));
}

inline bool terminal_basket(const SingularityBasket& b) {
  if (!b.non_isolated.empty()) return false;
  return std::all_of(b.points.begin(), b.points.end(), [](const BasketPoint& p) { return reid_tai_terminal(p.type); });
}

inline bool terminal_general(const WeightSystem& ws) { return terminal_basket(singular_points_general(ws)); }

}  // namespace wfano
