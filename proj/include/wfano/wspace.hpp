#pragma once

// Weighted projective 4-space P(a1,...,a5) with coordinates x, y, z, t, w:
// weight systems, monomials and their text form, coordinate strata, and
// enumeration/counting of monomials of a given weighted degree.

#include <algorithm>
#include <array>
#include <bit>
#include <bitset>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "wfano/error.hpp"

namespace wfano {

inline constexpr int kVars = 5;
inline constexpr std::array<char, kVars> kVarNames{'x', 'y', 'z', 't', 'w'};
// Largest weighted degree the reachability tables support.
inline constexpr int kMaxDegree = 511;

inline int var_index(char c) {
  for (int i = 0; i < kVars; ++i)
    if (kVarNames[i] == c) return i;
  throw UsageError(std::string("unknown variable '") + c + "'");
}

class WeightSystem {
 public:
  WeightSystem() = default;
  WeightSystem(std::array<int, kVars> weights, int degree) : weights_(weights), degree_(degree) {
    for (int a : weights_)
      if (a <= 0) throw UsageError("weights must be positive");
    if (!std::is_sorted(weights_.begin(), weights_.end()))
      throw UsageError("weights must be sorted ascending");
    if (degree_ <= 0) throw UsageError("degree must be positive");
    if (degree_ > kMaxDegree) throw UsageError("degree exceeds supported maximum");
  }

  const std::array<int, kVars>& weights() const { return weights_; }
  int weight(int i) const { return weights_[i]; }
  int degree() const { return degree_; }
  int weight_sum() const { return std::accumulate(weights_.begin(), weights_.end(), 0); }
  int fano_index() const { return weight_sum() - degree_; }

  // (a1, ..., a5, d, I)
  std::array<int, 7> septuple() const {
    return {weights_[0], weights_[1], weights_[2], weights_[3], weights_[4], degree_, fano_index()};
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < kVars; ++i) s += std::to_string(weights_[i]) + ",";
    return s + std::to_string(degree_) + "," + std::to_string(fano_index()) + ")";
  }

  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
  friend auto operator<=>(const WeightSystem&, const WeightSystem&) = default;

 private:
  std::array<int, kVars> weights_{1, 1, 1, 1, 1};
  int degree_ = 1;
};

struct Monomial {
  std::array<int, kVars> e{};

  static Monomial var(int i, int power = 1) {
    Monomial m;
    m.e[i] = power;
    return m;
  }

  int total() const { return std::accumulate(e.begin(), e.end(), 0); }
  int weighted_degree(const WeightSystem& ws) const {
    int d = 0;
    for (int i = 0; i < kVars; ++i) d += e[i] * ws.weight(i);
    return d;
  }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < kVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  // Bitmask of the variables that occur.
  std::uint8_t support() const {
    std::uint8_t s = 0;
    for (int i = 0; i < kVars; ++i)
      if (e[i] > 0) s |= static_cast<std::uint8_t>(1u << i);
    return s;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (int i = 0; i < kVars; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Graded-lexicographic order: lower total degree first, then larger exponent
// of x, then of y, and so on (x^4 before x^3*y before ... before w^4).
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a.e > b.e;
  }
};

// "x^2*y*w"; the empty monomial prints as "1".
inline std::string format_monomial(const Monomial& m) {
  std::string s;
  for (int i = 0; i < kVars; ++i) {
    if (m.e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += kVarNames[i];
    if (m.e[i] > 1) s += '^' + std::to_string(m.e[i]);
  }
  return s.empty() ? "1" : s;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline Monomial parse_monomial(std::string_view text) {
  text = trim(text);
  Monomial m;
  if (text == "1") return m;
  if (text.empty()) throw UsageError("empty monomial");
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t star = text.find('*', pos);
    std::string_view factor = trim(text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos));
    if (factor.empty()) throw UsageError("malformed monomial '" + std::string(text) + "'");
    int v = var_index(factor[0]);
    int power = 1;
    if (factor.size() > 1) {
      if (factor[1] != '^' || factor.size() == 2)
        throw UsageError("malformed factor '" + std::string(factor) + "'");
      power = 0;
      for (char c : factor.substr(2)) {
        if (c < '0' || c > '9') throw UsageError("malformed exponent in '" + std::string(factor) + "'");
        power = power * 10 + (c - '0');
        if (power > 100000) throw UsageError("exponent too large");
      }
    }
    m.e[v] += power;
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return m;
}

// A coordinate stratum, named by the variables allowed to be nonzero.
struct Stratum {
  std::uint8_t mask = 0;

  static Stratum of(std::initializer_list<int> vars) {
    Stratum s;
    for (int v : vars) s.mask |= static_cast<std::uint8_t>(1u << v);
    return s;
  }
  static Stratum parse(std::string_view text) {
    Stratum s;
    for (char c : text) {
      if (c == ',' || c == ' ') continue;
      s.mask |= static_cast<std::uint8_t>(1u << var_index(c));
    }
    if (s.mask == 0) throw UsageError("empty stratum");
    return s;
  }

  bool contains(int v) const { return (mask >> v) & 1u; }
  int size() const { return std::popcount(static_cast<unsigned>(mask)); }
  std::vector<int> vars() const {
    std::vector<int> out;
    for (int i = 0; i < kVars; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }
  std::string name() const {
    std::string s;
    for (int v : vars()) s += kVarNames[v];
    return s;
  }
  friend bool operator==(const Stratum&, const Stratum&) = default;
  friend auto operator<=>(const Stratum&, const Stratum&) = default;
};

// Nonempty strata ordered by size, then by mask.
inline std::vector<Stratum> all_strata() {
  std::vector<Stratum> out;
  for (unsigned m = 1; m < (1u << kVars); ++m) out.push_back(Stratum{static_cast<std::uint8_t>(m)});
  std::stable_sort(out.begin(), out.end(), [](Stratum a, Stratum b) { return a.size() < b.size(); });
  return out;
}

inline int stratum_gcd(const WeightSystem& ws, Stratum s) {
  int g = 0;
  for (int v : s.vars()) g = std::gcd(g, ws.weight(v));
  return g;
}

// For every subset S of variables, the set of weighted degrees <= kMaxDegree
// realised by some monomial in the variables of S (the empty monomial gives 0).
class DegreeReach {
 public:
  using Bits = std::bitset<kMaxDegree + 1>;

  explicit DegreeReach(const std::array<int, kVars>& weights) {
    reach_[0].set(0);
    for (unsigned m = 1; m < (1u << kVars); ++m) {
      int top = 31 - std::countl_zero(m);
      Bits r = reach_[m & ~(1u << top)];
      const int a = weights[top];
      for (int step = a; step <= kMaxDegree; step *= 2) r |= r << static_cast<std::size_t>(step);
      reach_[m] = r;
    }
  }

  bool reachable(Stratum s, int degree) const {
    return degree >= 0 && degree <= kMaxDegree && reach_[s.mask].test(static_cast<std::size_t>(degree));
  }
  // Some nonconstant monomial of this degree uses only variables of s.
  bool has_pure_monomial(Stratum s, int degree) const { return degree > 0 && reachable(s, degree); }

 private:
  std::array<Bits, 1u << kVars> reach_{};
};

namespace detail {
inline void enumerate_rec(const WeightSystem& ws, int var, int remaining, Monomial& cur,
                          std::vector<Monomial>& out) {
  if (var == kVars - 1) {
    if (remaining % ws.weight(var) == 0) {
      cur.e[var] = remaining / ws.weight(var);
      out.push_back(cur);
      cur.e[var] = 0;
    }
    return;
  }
  for (int p = 0; p * ws.weight(var) <= remaining; ++p) {
    cur.e[var] = p;
    enumerate_rec(ws, var + 1, remaining - p * ws.weight(var), cur, out);
  }
  cur.e[var] = 0;
}
}  // namespace detail

// All monomials of weighted degree k, in grlex order.
inline std::vector<Monomial> enumerate_monomials(const WeightSystem& ws, int k) {
  if (k < 0) throw UsageError("enumerate_monomials: negative degree");
  std::vector<Monomial> out;
  Monomial cur;
  detail::enumerate_rec(ws, 0, k, cur, out);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

// Number of monomials of weighted degree k (coin-change recurrence).
inline std::uint64_t count_monomials(const WeightSystem& ws, int k) {
  if (k < 0) throw UsageError("count_monomials: negative degree");
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(k) + 1, 0);
  ways[0] = 1;
  for (int a : ws.weights())
    for (int n = a; n <= k; ++n) ways[n] += ways[n - a];
  return ways[k];
}

// No four weights share a common factor.
inline bool wps_well_formed(const WeightSystem& ws) {
  for (int skip = 0; skip < kVars; ++skip) {
    int g = 0;
    for (int i = 0; i < kVars; ++i)
      if (i != skip) g = std::gcd(g, ws.weight(i));
    if (g != 1) return false;
  }
  return true;
}

}  // namespace wfano
