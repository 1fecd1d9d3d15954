#pragma once

// Bounded search for quasismooth, well-formed, terminal Fano hypersurfaces
// X_d in P(a1,...,a5).

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "wfano/error.hpp"
#include "wfano/membership.hpp"
#include "wfano/singular.hpp"
#include "wfano/wspace.hpp"

namespace wfano {

using Septuple = std::array<int, 7>;

struct SearchBounds {
  int max_weight = 40;
  int max_degree = 120;
  int min_index = 1;
  int max_index = 20;

  void validate() const {
    if (max_weight < 1 || max_degree < 1) throw UsageError("search bounds must be positive");
    if (min_index < 1 || max_index < min_index) throw UsageError("index range must satisfy 1 <= min <= max");
    if (max_degree > kMaxDegree) throw UsageError("max degree exceeds " + std::to_string(kMaxDegree));
  }
};

// Families that carry a number in the literature labelling. Only the
// septuples named explicitly are listed.
inline std::optional<int> paper_number(const Septuple& s) {
  static const std::array<std::pair<Septuple, int>, 15> table{{
      {{1, 1, 1, 1, 1, 4, 1}, 1},
      {{1, 1, 1, 1, 3, 6, 1}, 3},
      {{1, 1, 2, 3, 3, 9, 1}, 9},
      {{1, 1, 3, 4, 4, 12, 1}, 17},
      {{1, 2, 3, 3, 4, 12, 1}, 19},
      {{1, 2, 3, 5, 5, 15, 1}, 27},
      {{1, 3, 3, 4, 5, 15, 1}, 28},
      {{1, 3, 4, 5, 6, 18, 1}, 39},
      {{1, 3, 5, 6, 7, 21, 1}, 49},
      {{1, 3, 6, 7, 8, 24, 1}, 59},
      {{1, 5, 6, 7, 9, 27, 1}, 66},
      {{1, 7, 8, 9, 12, 36, 1}, 84},
      {{1, 1, 1, 1, 1, 3, 2}, 96},
      {{1, 1, 1, 2, 3, 6, 2}, 98},
      {{1, 1, 1, 1, 1, 2, 3}, 104},
  }};
  for (const auto& [sep, n] : table)
    if (sep == s) return n;
  return std::nullopt;
}

inline Septuple septuple_of_number(int number) {
  static const std::array<std::pair<int, Septuple>, 15> table{{
      {1, {1, 1, 1, 1, 1, 4, 1}},     {3, {1, 1, 1, 1, 3, 6, 1}},     {9, {1, 1, 2, 3, 3, 9, 1}},
      {17, {1, 1, 3, 4, 4, 12, 1}},   {19, {1, 2, 3, 3, 4, 12, 1}},   {27, {1, 2, 3, 5, 5, 15, 1}},
      {28, {1, 3, 3, 4, 5, 15, 1}},   {39, {1, 3, 4, 5, 6, 18, 1}},   {49, {1, 3, 5, 6, 7, 21, 1}},
      {59, {1, 3, 6, 7, 8, 24, 1}},   {66, {1, 5, 6, 7, 9, 27, 1}},   {84, {1, 7, 8, 9, 12, 36, 1}},
      {96, {1, 1, 1, 1, 1, 3, 2}},    {98, {1, 1, 1, 2, 3, 6, 2}},    {104, {1, 1, 1, 1, 1, 2, 3}},
  }};
  for (const auto& [n, sep] : table)
    if (n == number) return sep;
  throw UsageError("no septuple is known for family number " + std::to_string(number));
}

inline WeightSystem weight_system_of(const Septuple& s) {
  WeightSystem ws({s[0], s[1], s[2], s[3], s[4]}, s[5]);
  if (ws.fano_index() != s[6])
    throw UsageError("septuple index " + std::to_string(s[6]) + " does not match sum of weights minus degree");
  return ws;
}

// The eight families whose general member has degree of irrationality 3.
inline bool is_exceptional_eight(const WeightSystem& ws) {
  auto n = paper_number(ws.septuple());
  if (!n) return false;
  switch (*n) {
    case 1: case 19: case 28: case 39: case 49: case 59: case 66: case 84: return true;
    default: return false;
  }
}

struct FamilyRecord {
  WeightSystem ws;
  MembershipReport membership;
  SingularityBasket basket;
  std::optional<int> paper_number;

  Septuple septuple() const { return ws.septuple(); }
  int index() const { return ws.fano_index(); }
  friend bool operator==(const FamilyRecord&, const FamilyRecord&) = default;
};

// Canonical order: index, then degree, then weights lexicographically.
inline bool record_less(const FamilyRecord& a, const FamilyRecord& b) {
  auto key = [](const FamilyRecord& r) {
    const auto& w = r.ws.weights();
    return std::array<int, 7>{r.index(), r.ws.degree(), w[0], w[1], w[2], w[3], w[4]};
  };
  return key(a) < key(b);
}

// Full evaluation of one weight system; nullopt unless it is accepted.
inline std::optional<FamilyRecord> evaluate_family(const WeightSystem& ws) {
  if (ws.fano_index() < 1 || is_linear_cone(ws)) return std::nullopt;
  DegreeReach reach(ws.weights());
  MembershipReport m = membership_report(ws, reach);
  if (!m.accepted()) return std::nullopt;
  SingularityBasket b = singular_points_general(ws, reach);
  if (!terminal_basket(b)) return std::nullopt;
  return FamilyRecord{ws, std::move(m), std::move(b), paper_number(ws.septuple())};
}

namespace detail {
// Necessary conditions checked before the bitset machinery: every vertex is
// either off X or has an eliminating variable, and no four weights share a factor.
inline bool cheap_prefilter(const std::array<int, kVars>& a, int d) {
  for (int i = 0; i < kVars; ++i) {
    if (a[i] == 1 || d % a[i] == 0) continue;
    bool ok = false;
    for (int j = 0; j < kVars && !ok; ++j)
      ok = j != i && d > a[j] && (d - a[j]) % a[i] == 0;
    if (!ok) return false;
  }
  for (int skip = 0; skip < kVars; ++skip) {
    int g = 0;
    for (int i = 0; i < kVars; ++i)
      if (i != skip) g = std::gcd(g, a[i]);
    if (g != 1) return false;
  }
  return true;
}

inline void classify_slice(const SearchBounds& b, int a5_lo, int a5_step, std::vector<FamilyRecord>& out) {
  const int max_sum = b.max_degree + b.max_index;
  std::array<int, kVars> a{};
  for (a[4] = a5_lo; a[4] <= b.max_weight; a[4] += a5_step)
    for (a[0] = 1; a[0] <= a[4]; ++a[0])
      for (a[1] = a[0]; a[1] <= a[4]; ++a[1])
        for (a[2] = a[1]; a[2] <= a[4]; ++a[2])
          for (a[3] = a[2]; a[3] <= a[4]; ++a[3]) {
            const int sum = a[0] + a[1] + a[2] + a[3] + a[4];
            if (sum - b.max_index > max_sum) continue;
            for (int idx = b.min_index; idx <= b.max_index; ++idx) {
              const int d = sum - idx;
              // d <= a5 is either a linear cone or misses the w-vertex.
              if (d <= a[4] || d > b.max_degree) continue;
              if (!cheap_prefilter(a, d)) continue;
              if (auto r = evaluate_family(WeightSystem(a, d))) out.push_back(std::move(*r));
            }
          }
}
}  // namespace detail

inline std::vector<FamilyRecord> classify(const SearchBounds& bounds, int jobs = 1) {
  bounds.validate();
  if (jobs < 1) throw UsageError("jobs must be positive");
  std::vector<FamilyRecord> all;
  if (jobs == 1) {
    detail::classify_slice(bounds, 1, 1, all);
  } else {
    std::vector<std::vector<FamilyRecord>> parts(static_cast<std::size_t>(jobs));
    std::vector<std::thread> workers;
    for (int k = 0; k < jobs; ++k)
      workers.emplace_back([&, k] { detail::classify_slice(bounds, 1 + k, jobs, parts[static_cast<std::size_t>(k)]); });
    for (auto& t : workers) t.join();
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(all));
  }
  std::sort(all.begin(), all.end(), record_less);
  return all;
}

inline std::vector<FamilyRecord> with_index(const std::vector<FamilyRecord>& records, int index) {
  std::vector<FamilyRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const FamilyRecord& r) { return r.index() == index; });
  return out;
}

// Index-1 records outside the eight exceptional families with d >= 3*a5:
// the families handled by the cubic normal form.
inline std::vector<FamilyRecord> projection_exceptional(const std::vector<FamilyRecord>& records) {
  std::vector<FamilyRecord> out;
  for (const auto& r : records)
    if (r.index() == 1 && !is_exceptional_eight(r.ws) && r.ws.degree() >= 3 * r.ws.weight(4)) out.push_back(r);
  return out;
}

}  // namespace wfano
