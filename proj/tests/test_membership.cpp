#include <catch2/catch_amalgamated.hpp>

#include <optional>

#include "wfano/membership.hpp"

using namespace wfano;

namespace {

// All 31 subsets checked directly on the enumerated monomials.
bool quasismooth_oracle(const WeightSystem& ws) {
  const auto ms = enumerate_monomials(ws, ws.degree());
  for (unsigned s = 1; s < 32; ++s) {
    bool pure = false;
    std::set<int> partners;
    for (const auto& m : ms) {
      int outside = 0, outside_var = -1;
      for (int i = 0; i < kVars; ++i)
        if (!((s >> i) & 1u) && m.e[i] > 0) {
          outside += m.e[i];
          outside_var = i;
        }
      if (outside == 0) pure = true;
      if (outside == 1) partners.insert(outside_var);
    }
    if (!pure && static_cast<int>(partners.size()) < std::popcount(s)) return false;
  }
  return true;
}

template <class F>
void for_each_index_one(F f) {
  for (int a = 1; a <= 6; ++a)
    for (int b = a; b <= 6; ++b)
      for (int c = b; c <= 6; ++c)
        for (int d = c; d <= 6; ++d)
          for (int e = d; e <= 6; ++e) {
            const WeightSystem ws({a, b, c, d, e}, a + b + c + d + e - 1);
            if (!is_linear_cone(ws)) f(ws);
          }
}

}  // namespace

TEST_CASE("quasismoothness agrees with the subset oracle for weights up to 6") {
  std::optional<WeightSystem> first_oracle, first_library;
  int compared = 0;
  for_each_index_one([&](const WeightSystem& ws) {
    const bool oracle = quasismooth_oracle(ws);
    const bool library = quasismooth_general(ws).first;
    CHECK(oracle == library);
    if (!oracle && !first_oracle) first_oracle = ws;
    if (!library && !first_library) first_library = ws;
    ++compared;
  });
  CHECK(compared > 200);
  REQUIRE(first_oracle);
  REQUIRE(first_library);
  CHECK(*first_oracle == *first_library);
}

TEST_CASE("membership report of known weight systems") {
  const MembershipReport m = membership_report(WeightSystem({1, 2, 3, 3, 4}, 12));
  CHECK(m.accepted());
  CHECK(m.failing_strata.empty());

  CHECK(is_linear_cone(WeightSystem({1, 1, 1, 2, 5}, 5)));
  CHECK_THROWS_AS(quasismooth_general(WeightSystem({1, 1, 1, 2, 5}, 5)), PreconditionError);

  // P(1,1,1,1,4), d=7: the w vertex has no eliminating partner.
  const auto [ok, fails] = quasismooth_general(WeightSystem({1, 1, 1, 1, 4}, 7));
  CHECK_FALSE(ok);
  REQUIRE_FALSE(fails.empty());
  CHECK(fails.front().stratum.name() == "w");

  // Three weights divisible by 2 with no pure monomial: not well-formed.
  CHECK_FALSE(hypersurface_well_formed(WeightSystem({1, 2, 2, 2, 3}, 9)));
}
