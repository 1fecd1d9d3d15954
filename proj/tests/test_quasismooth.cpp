#include <catch2/catch_amalgamated.hpp>

#include "wfano/normalize.hpp"
#include "wfano/quasismooth.hpp"

using namespace wfano;

namespace {
const WeightSystem kQuartic({1, 1, 1, 1, 1}, 4);
}

TEST_CASE("smooth and singular quartics") {
  const auto fermat = quasismooth_member(GradedPolynomial::parse(kQuartic, "x^4+y^4+z^4+t^4+w^4"));
  CHECK(fermat.quasismooth());
  CHECK(fermat.prime == 10007u);

  const auto cone = quasismooth_member(GradedPolynomial::parse(kQuartic, "x^4+y^4+z^4+t^4"));
  CHECK(cone.status == QuasismoothStatus::singular);
  REQUIRE(cone.stratum);
  CHECK(cone.stratum->name() == "w");
  CHECK(cone.witness == "[0:0:0:0:1]");

  // (t^2 - w^2)^2 is singular along t = +-w on the tw line
  const auto line = quasismooth_member(GradedPolynomial::parse(kQuartic, "x^4+y^4+z^4+t^4-2*t^2*w^2+w^4"));
  CHECK(line.status == QuasismoothStatus::singular);
  REQUIRE(line.stratum);
  CHECK(line.stratum->name() == "tw");
}

TEST_CASE("a singular point off the coordinate lines is never reported quasismooth") {
  // singular at [1:1:1:1:0]
  const auto v = quasismooth_member(GradedPolynomial::parse(kQuartic, "x^4+y^4+z^4+t^4+w^4-4*x*y*z*t"));
  CHECK_FALSE(v.quasismooth());
}

TEST_CASE("partial derivatives") {
  const WeightSystem ws({1, 2, 3, 3, 4}, 12);
  const auto d = partial(GradedPolynomial::parse(ws, "w^3 + x^2*y*w^2"), 4);
  REQUIRE(d);
  CHECK(*d == GradedPolynomial::parse(ws, "3*w^2 + 2*x^2*y*w"));
}

TEST_CASE("sampled members of small families are quasismooth") {
  for (int number : {19, 28}) {
    INFO("family " << number);
    const NormalizedMember nm = normalized_general_member(number, 0);
    CHECK(quasismooth_member(nm.sample.f).quasismooth());
    CHECK(quasismooth_member(nm.result.f).quasismooth());
  }
  const auto s = sample_general_member(WeightSystem({1, 1, 1, 2, 2}, 6), 0);
  CHECK(quasismooth_member(s.f).quasismooth());
}
