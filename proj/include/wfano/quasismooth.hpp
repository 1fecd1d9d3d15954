#pragma once

// Quasismoothness of one explicit member: the affine cone over f = 0 must be
// smooth away from the origin. Vertices and coordinate lines are decided
// exactly; the remaining strata through a Groebner basis of the Jacobian
// ideal over a prime field (a pure power of every variable among the leading
// monomials means the ideal is primary to the origin, hence so is the
// rational one).

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wfano/error.hpp"
#include "wfano/exactmath.hpp"
#include "wfano/polynomial.hpp"
#include "wfano/wspace.hpp"

namespace wfano {

enum class QuasismoothStatus { quasismooth, singular, indeterminate };

inline const char* to_string(QuasismoothStatus s) {
  switch (s) {
    case QuasismoothStatus::quasismooth: return "quasismooth";
    case QuasismoothStatus::singular: return "singular";
    default: return "indeterminate";
  }
}

struct QuasismoothVerdict {
  QuasismoothStatus status = QuasismoothStatus::indeterminate;
  std::optional<Stratum> stratum;  // where a singular point was found
  std::string witness;             // e.g. "[0:0:0:0:1]" or the defining relation on a line
  std::optional<std::uint64_t> prime;
  std::string detail;

  bool quasismooth() const { return status == QuasismoothStatus::quasismooth; }
};

// Partial derivative d f / d x_k; nullopt when its degree would be negative.
inline std::optional<GradedPolynomial> partial(const GradedPolynomial& f, int k) {
  const int g = f.grade() - f.ws().weight(k);
  if (g < 0) return std::nullopt;
  GradedPolynomial out(f.ws(), g);
  for (const auto& [m, c] : f.terms()) {
    if (m.e[k] == 0) continue;
    Monomial r = m;
    --r.e[k];
    out.add_term(r, c * m.e[k]);
  }
  return out;
}

namespace detail {
inline std::string vertex_point(int i) {
  std::string s = "[";
  for (int k = 0; k < kVars; ++k) s += std::string(k ? ":" : "") + (k == i ? "1" : "0");
  return s + "]";
}

inline std::string format_in_s(const UniPoly& u) {
  std::string out;
  for (int k = u.degree(); k >= 0; --k) {
    if (u.coeff(k) == 0) continue;
    std::string c = to_string(u.coeff(k));
    if (!out.empty()) out += c[0] == '-' ? " - " : " + ";
    else if (c[0] == '-') out += "-";
    if (c[0] == '-') c.erase(0, 1);
    if (k == 0 || c != "1") out += c + (k ? "*" : "");
    if (k) out += "s" + (k > 1 ? "^" + std::to_string(k) : std::string());
  }
  return out;
}

inline bool line_has_degree(const WeightSystem& ws, int i, int j, int k) {
  for (int p = 0; p * ws.weight(i) <= k; ++p)
    if ((k - p * ws.weight(i)) % ws.weight(j) == 0) return true;
  return false;
}

// Polynomial in s = x_i^beta / x_j^alpha whose roots in C^* are the points
// of the open line where g vanishes; nullopt when g vanishes identically there.
inline std::optional<UniPoly> line_polynomial(const GradedPolynomial& g, int i, int j) {
  if (!line_has_degree(g.ws(), i, j, g.grade())) return std::nullopt;
  UniPoly u = edge_restriction(g, i, j).form.dehomogenized();
  if (u.is_zero()) return std::nullopt;
  std::size_t low = 0;
  while (u.coeff(static_cast<int>(low)) == 0) ++low;
  std::vector<Rational> c;
  for (int k = static_cast<int>(low); k <= u.degree(); ++k) c.push_back(u.coeff(k));
  return UniPoly(std::move(c));
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Jacobian ideal over F_p

namespace detail {
// Monomials packed 12 bits per exponent, x in the top field.
using PackedMonomial = std::uint64_t;

inline std::uint32_t packed_exp(PackedMonomial m, int i) {
  return static_cast<std::uint32_t>((m >> (12 * (kVars - 1 - i))) & 0xfffu);
}

inline bool packed_divides(PackedMonomial a, PackedMonomial b) {
  for (int i = 0; i < kVars; ++i)
    if (packed_exp(a, i) > packed_exp(b, i)) return false;
  return true;
}

inline PackedMonomial packed_lcm(PackedMonomial a, PackedMonomial b) {
  PackedMonomial r = 0;
  for (int i = 0; i < kVars; ++i)
    r |= static_cast<PackedMonomial>(std::max(packed_exp(a, i), packed_exp(b, i))) << (12 * (kVars - 1 - i));
  return r;
}

class PrimeFieldIdeal {
 public:
  using Key = unsigned __int128;
  struct Term {
    Key key;  // weighted degree, then reverse lexicographic
    PackedMonomial m;
    std::uint64_t c;
  };
  using Poly = std::vector<Term>;  // descending keys

  PrimeFieldIdeal(std::array<int, kVars> w, std::uint64_t p) : w_(w), p_(p) {}

  Key key(PackedMonomial m) const {
    std::uint64_t rev = 0;
    for (int i = 0; i < kVars; ++i) rev |= static_cast<std::uint64_t>(4095 - packed_exp(m, i)) << (12 * i);
    return (static_cast<Key>(degree(m)) << 64) | rev;
  }
  std::uint64_t degree(PackedMonomial m) const {
    std::uint64_t deg = 0;
    for (int i = 0; i < kVars; ++i) deg += static_cast<std::uint64_t>(w_[static_cast<std::size_t>(i)]) * packed_exp(m, i);
    return deg;
  }

  Term term(PackedMonomial m, std::uint64_t c) const { return {key(m), m, c % p_}; }

  std::uint64_t inv(std::uint64_t a) const {
    std::uint64_t r = 1, e = p_ - 2;
    a %= p_;
    while (e) {
      if (e & 1) r = r * a % p_;
      a = a * a % p_;
      e >>= 1;
    }
    return r;
  }

  void make_monic(Poly& f) const {
    const std::uint64_t s = inv(f.front().c);
    for (auto& t : f) t.c = t.c * s % p_;
  }

  // Full reduction modulo basis_ of sum_k c_k * (poly_k shifted by s_k),
  // skipping the first `from` terms of each. All terms share one degree, so
  // the work is done in a dense vector over the monomials of that degree.
  struct Part {
    const Poly* f;
    PackedMonomial shift;
    std::uint64_t c;
    std::size_t from;
  };

  Poly reduce_combination(std::initializer_list<Part> parts, std::uint64_t deg) {
    Table& T = table(deg);
    std::vector<std::uint64_t> dense(T.mons.size(), 0);
    for (const Part& q : parts)
      for (std::size_t k = q.from; k < q.f->size(); ++k) {
        const std::size_t at = T.pos.at((*q.f)[k].m + q.shift);
        dense[at] = (dense[at] + (*q.f)[k].c * q.c) % p_;
      }
    Poly out;
    for (std::size_t at = 0; at < dense.size(); ++at) {
      if (dense[at] == 0) continue;
      const PackedMonomial m = T.mons[at];
      int& div = T.divisor[at];
      if (div < 0) {
        for (std::size_t g = T.checked[at]; g < basis_.size(); ++g)
          if (packed_divides(basis_[g].front().m, m)) {
            div = static_cast<int>(g);
            break;
          }
        T.checked[at] = basis_.size();
      }
      if (div < 0) {
        out.push_back({key(m), m, dense[at]});
        continue;
      }
      const Poly& g = basis_[static_cast<std::size_t>(div)];
      const PackedMonomial shift = m - g.front().m;  // fields do not borrow
      const std::uint64_t factor = p_ - dense[at];    // divisor is monic
      dense[at] = 0;
      for (std::size_t k = 1; k < g.size(); ++k) {
        const std::size_t to = T.pos.at(g[k].m + shift);
        dense[to] = (dense[to] + g[k].c * factor) % p_;
      }
    }
    return out;
  }

  Poly reduce(const Poly& f) {
    if (f.empty()) return {};
    return reduce_combination({{&f, 0, 1, 0}}, degree(f.front().m));
  }

  Poly spoly_reduced(const Poly& a, const Poly& b) {
    const PackedMonomial l = packed_lcm(a.front().m, b.front().m);
    return reduce_combination({{&a, l - a.front().m, 1, 1}, {&b, l - b.front().m, p_ - 1, 1}}, degree(l));
  }

  // Adds generators and runs Buchberger on pairs whose lcm has degree at most
  // max_degree, stopping once every variable has a pure power among the
  // leading monomials. Returns true in that case.
  bool primary_to_origin(std::vector<Poly> gens, std::uint64_t max_degree) {
    struct Pair {
      std::size_t i, j;
      std::uint64_t deg;
      PackedMonomial lcm;
    };
    std::vector<Pair> pairs;
    auto covered = [&] {
      std::array<bool, kVars> pure{};
      for (const auto& g : basis_) {
        const PackedMonomial m = g.front().m;
        int support = 0, var = 0;
        for (int i = 0; i < kVars; ++i)
          if (packed_exp(m, i)) {
            ++support;
            var = i;
          }
        if (support == 1) pure[static_cast<std::size_t>(var)] = true;
      }
      return std::all_of(pure.begin(), pure.end(), [](bool b) { return b; });
    };
    auto insert = [&](Poly h) {
      make_monic(h);
      const std::size_t n = basis_.size();
      const PackedMonomial lh = h.front().m;
      // Buchberger's chain criterion against the new leading monomial.
      std::erase_if(pairs, [&](const Pair& q) {
        return packed_divides(lh, q.lcm) && packed_lcm(basis_[q.i].front().m, lh) != q.lcm &&
               packed_lcm(basis_[q.j].front().m, lh) != q.lcm;
      });
      basis_.push_back(std::move(h));
      // Gebauer-Moeller: among the new pairs drop those whose lcm is a proper
      // multiple of another new lcm, keep one per lcm, and drop an lcm
      // entirely when some pair realizing it has coprime leading monomials.
      std::vector<Pair> fresh;
      std::vector<bool> coprime;
      for (std::size_t i = 0; i < n; ++i) {
        const PackedMonomial li = basis_[i].front().m;
        const PackedMonomial l = packed_lcm(li, lh);
        fresh.push_back({i, n, degree(l), l});
        coprime.push_back(l == li + lh);
      }
      std::vector<Pair> kept;
      for (std::size_t a = 0; a < fresh.size(); ++a) {
        bool drop = false;
        for (std::size_t b = 0; b < fresh.size() && !drop; ++b)
          drop = b != a && fresh[b].lcm != fresh[a].lcm && packed_divides(fresh[b].lcm, fresh[a].lcm);
        if (drop) continue;
        bool first = true, any_coprime = false;
        for (std::size_t b = 0; b < fresh.size(); ++b)
          if (fresh[b].lcm == fresh[a].lcm) {
            any_coprime = any_coprime || coprime[b];
            if (b < a) first = false;
          }
        if (first && !any_coprime && fresh[a].deg <= max_degree) kept.push_back(fresh[a]);
      }
      pairs.insert(pairs.end(), kept.begin(), kept.end());
    };
    std::sort(gens.begin(), gens.end(), [](const Poly& a, const Poly& b) { return a.front().key < b.front().key; });
    for (auto& g : gens) {
      Poly r = reduce(g);
      if (!r.empty()) insert(std::move(r));
    }
    while (!covered()) {
      if (pairs.empty()) return false;
      auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return a.deg != b.deg ? a.deg < b.deg : a.lcm < b.lcm;
      });
      Pair q = *best;
      pairs.erase(best);
      Poly r = spoly_reduced(basis_[q.i], basis_[q.j]);
      if (!r.empty()) insert(std::move(r));
    }
    return true;
  }

 private:
  // Monomials of one degree in descending order, with reducer lookups.
  struct Table {
    std::vector<PackedMonomial> mons;
    std::unordered_map<PackedMonomial, std::size_t> pos;
    std::vector<int> divisor;          // basis index, or -1
    std::vector<std::size_t> checked;  // basis elements already tried
  };

  Table& table(std::uint64_t deg) {
    auto [it, inserted] = tables_.try_emplace(deg);
    Table& T = it->second;
    if (!inserted) return T;
    auto rec = [&](auto&& self, int i, std::uint64_t left, PackedMonomial acc) -> void {
      if (i == kVars - 1) {
        const auto a = static_cast<std::uint64_t>(w_[kVars - 1]);
        if (left % a == 0) T.mons.push_back(acc | (left / a));
        return;
      }
      const auto a = static_cast<std::uint64_t>(w_[static_cast<std::size_t>(i)]);
      for (std::uint64_t e = 0; e * a <= left; ++e)
        self(self, i + 1, left - e * a, acc | (e << (12 * (kVars - 1 - i))));
    };
    rec(rec, 0, deg, 0);
    std::sort(T.mons.begin(), T.mons.end(), [&](PackedMonomial x, PackedMonomial y) { return key(x) > key(y); });
    for (std::size_t k = 0; k < T.mons.size(); ++k) T.pos.emplace(T.mons[k], k);
    T.divisor.assign(T.mons.size(), -1);
    T.checked.assign(T.mons.size(), 0);
    return T;
  }

  std::map<std::uint64_t, Table> tables_;
  std::array<int, kVars> w_;
  std::uint64_t p_;
  std::vector<Poly> basis_;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

inline std::uint64_t first_prime_above(std::uint64_t n) {
  std::uint64_t p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

// f reduced mod p, or nullopt when p divides a denominator.
inline std::optional<PrimeFieldIdeal::Poly> to_prime_field(const PrimeFieldIdeal& F, const GradedPolynomial& f,
                                                           std::uint64_t p) {
  PrimeFieldIdeal::Poly out;
  for (const auto& [m, c] : f.terms()) {
    Integer num = boost::multiprecision::numerator(c), den = boost::multiprecision::denominator(c);
    Integer pp = p;
    Integer dr = den % pp;
    if (dr == 0) return std::nullopt;
    Integer nr = ((num % pp) + pp) % pp;
    const auto n64 = static_cast<std::uint64_t>(nr), d64 = static_cast<std::uint64_t>(dr);
    const std::uint64_t v = n64 * F.inv(d64) % p;
    if (v == 0) continue;
    PackedMonomial pm = 0;
    for (int i = 0; i < kVars; ++i) pm |= static_cast<PackedMonomial>(m.e[i]) << (12 * (kVars - 1 - i));
    out.push_back(F.term(pm, v));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key > b.key; });
  return out;
}
}  // namespace detail

inline constexpr std::array<std::uint64_t, 2> kQuasismoothPrimeFloors{10000, 100000};

inline QuasismoothVerdict quasismooth_member(const GradedPolynomial& f) {
  const WeightSystem& ws = f.ws();
  if (f.grade() != ws.degree()) throw UsageError("quasismooth_member: polynomial grade differs from the family degree");
  if (f.is_zero()) return {QuasismoothStatus::singular, std::nullopt, "f = 0", std::nullopt, "zero polynomial"};
  std::array<std::optional<GradedPolynomial>, kVars> df;
  for (int k = 0; k < kVars; ++k) df[static_cast<std::size_t>(k)] = partial(f, k);

  // Vertices: f and every partial at P_i are coefficients of x_i^k and x_i^k x_j.
  for (int i = 0; i < kVars; ++i) {
    bool smooth = false;
    for (int k = 0; k < kVars && !smooth; ++k) {
      const auto& g = df[static_cast<std::size_t>(k)];
      if (g && g->grade() % ws.weight(i) == 0) smooth = g->has(Monomial::var(i, g->grade() / ws.weight(i)));
    }
    if (!smooth)
      return {QuasismoothStatus::singular, Stratum::of({i}), detail::vertex_point(i), std::nullopt,
              "every partial derivative vanishes at the vertex"};
  }

  // Lines: common roots in C^* of the restricted partials.
  for (int i = 0; i < kVars; ++i)
    for (int j = i + 1; j < kVars; ++j) {
      std::optional<UniPoly> common;
      bool constrained = false;
      for (int k = 0; k < kVars; ++k) {
        const auto& g = df[static_cast<std::size_t>(k)];
        if (!g) continue;
        auto u = detail::line_polynomial(*g, i, j);
        if (!u) continue;
        constrained = true;
        common = common ? gcd(*common, *u) : *u;
      }
      const Stratum line = Stratum::of({i, j});
      const int g = std::gcd(ws.weight(i), ws.weight(j));
      auto power = [](char v, int e) { return std::string(1, v) + (e > 1 ? "^" + std::to_string(e) : std::string()); };
      const std::string rel = power(kVarNames[i], ws.weight(j) / g) + "/" + power(kVarNames[j], ws.weight(i) / g);
      if (!constrained)
        return {QuasismoothStatus::singular, line, "every point with " + rel + " != 0", std::nullopt,
                "all partial derivatives vanish on the line"};
      if (common->degree() >= 1) {
        std::string w = "s = " + rel + " a root of " + detail::format_in_s(*common);
        auto roots = rational_roots(*common);
        if (!roots.empty()) w = "s = " + rel + " = " + to_string(roots.front());
        return {QuasismoothStatus::singular, line, w, std::nullopt, "partial derivatives share a root on the line"};
      }
    }

  // Remaining strata: the Jacobian ideal over F_p.
  int sum = 0, amax = 0;
  for (int a : ws.weights()) {
    sum += a;
    amax = std::max(amax, a);
  }
  const int socle = std::max(0, 5 * ws.degree() - 2 * sum);
  const std::uint64_t max_degree = static_cast<std::uint64_t>(socle + 2 * amax);
  // Exponents are packed into 12-bit fields.
  if (max_degree > 4095)
    return {QuasismoothStatus::indeterminate, std::nullopt, "", std::nullopt,
            "degree bound " + std::to_string(max_degree) + " exceeds the packed exponent range"};
  std::string why = "no pure power of some variable among the leading monomials up to degree " + std::to_string(max_degree);
  for (std::uint64_t floor : kQuasismoothPrimeFloors) {
    const std::uint64_t p = detail::first_prime_above(floor);
    detail::PrimeFieldIdeal F(ws.weights(), p);
    std::vector<detail::PrimeFieldIdeal::Poly> gens;
    bool usable = true;
    for (const auto& g : df) {
      if (!g || g->is_zero()) continue;
      auto r = detail::to_prime_field(F, *g, p);
      if (!r) usable = false;
      else if (!r->empty()) gens.push_back(std::move(*r));
    }
    if (!usable) continue;
    if (F.primary_to_origin(std::move(gens), max_degree))
      return {QuasismoothStatus::quasismooth, std::nullopt, "", p,
              "vertices and lines exact; Jacobian ideal primary to the origin mod " + std::to_string(p)};
  }
  return {QuasismoothStatus::indeterminate, std::nullopt, "", std::nullopt, why};
}

}  // namespace wfano
