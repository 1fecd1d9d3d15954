#include <catch2/catch_amalgamated.hpp>

#include "properties.hpp"

namespace {
void check(const props::Outcome& o) {
  INFO(o.first);
  CHECK(o.cases >= 1000);
  CHECK(o.failures == 0);
}
}  // namespace

TEST_CASE("substitution invertibility") { check(props::substitution_invertibility()); }
TEST_CASE("grade preservation") { check(props::grade_preservation()); }
TEST_CASE("smith normal form divisor chain") { check(props::snf_divisor_chain()); }
TEST_CASE("Reid-Tai invariance under change of generator") { check(props::reid_tai_generator_change()); }
TEST_CASE("stabilizers satisfy the group axioms") { check(props::pgl2_group_axioms()); }
TEST_CASE("enumeration agrees with the generating function") { check(props::enumeration_vs_generating_function()); }
