#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "wfano/wspace.hpp"

using namespace wfano;

TEST_CASE("monomials parse and format canonically") {
  CHECK(format_monomial(parse_monomial("x^2*y*w")) == "x^2*y*w");
  CHECK(format_monomial(parse_monomial(" w * x^2 * y ")) == "x^2*y*w");
  CHECK(format_monomial(Monomial{}) == "1");
  CHECK_THROWS_AS(parse_monomial("q^2"), UsageError);
  CHECK_THROWS_AS(parse_monomial(""), UsageError);
  CHECK_THROWS_AS(parse_monomial("x2yw"), UsageError);
}

TEST_CASE("weight systems reject malformed input") {
  CHECK_THROWS_AS(WeightSystem({1, 2, 0, 3, 4}, 5), UsageError);
  CHECK_THROWS_AS(WeightSystem({2, 1, 1, 1, 1}, 5), UsageError);
  CHECK_THROWS_AS(WeightSystem({1, 1, 1, 1, 1}, 0), UsageError);
  const WeightSystem ws({1, 2, 3, 3, 4}, 12);
  CHECK(ws.fano_index() == 1);
  CHECK(ws.septuple() == std::array<int, 7>{1, 2, 3, 3, 4, 12, 1});
}

TEST_CASE("degree-12 monomials of P(1,2,3,3,4) against a brute-force oracle") {
  const WeightSystem ws({1, 2, 3, 3, 4}, 12);
  std::set<Monomial> oracle;
  for (int a = 0; a <= 12; ++a)
    for (int b = 0; 2 * b <= 12; ++b)
      for (int c = 0; 3 * c <= 12; ++c)
        for (int d = 0; 3 * d <= 12; ++d)
          for (int e = 0; 4 * e <= 12; ++e)
            if (a + 2 * b + 3 * c + 3 * d + 4 * e == 12) oracle.insert(Monomial{{a, b, c, d, e}});
  const auto ms = enumerate_monomials(ws, 12);
  CHECK(std::set<Monomial>(ms.begin(), ms.end()) == oracle);
  CHECK(ms.size() == 65);
  CHECK(count_monomials(ws, 12) == 65);
  // grlex: w^3 (total degree 3) comes first, x^12 last
  CHECK(format_monomial(ms.front()) == "w^3");
  CHECK(format_monomial(ms.back()) == "x^12");
}

TEST_CASE("strata and reachability") {
  CHECK(Stratum::parse("zt").name() == "zt");
  CHECK(Stratum::of({2, 3}) == Stratum::parse("tz"));
  CHECK(all_strata().size() == 31);
  const WeightSystem ws({1, 2, 3, 3, 4}, 12);
  CHECK(stratum_gcd(ws, Stratum::parse("zt")) == 3);
  DegreeReach reach(ws.weights());
  CHECK(reach.has_pure_monomial(Stratum::parse("w"), 12));
  CHECK_FALSE(reach.has_pure_monomial(Stratum::parse("w"), 10));
  CHECK(reach.has_pure_monomial(Stratum::parse("yw"), 10));
  CHECK_FALSE(reach.has_pure_monomial(Stratum::parse("zt"), 10));
}

TEST_CASE("well-formedness of the ambient space") {
  CHECK(wps_well_formed(WeightSystem({1, 2, 3, 3, 4}, 12)));
  CHECK_FALSE(wps_well_formed(WeightSystem({2, 2, 2, 2, 3}, 12)));
}
