#include <catch2/catch_amalgamated.hpp>

#include "wfano/catalog.hpp"
#include "wfano/irrational.hpp"

using namespace wfano;

namespace {
FamilyRecord record(const Septuple& s) { return *evaluate_family(weight_system_of(s)); }
}  // namespace

TEST_CASE("verdict partition over the catalog") {
  const auto records = classify(SearchBounds{}, 4);
  int exceptional = 0, two = 0, one_or_two = 0;
  for (const auto& r : records) {
    const IrrationalityVerdict v = decide(r);
    CHECK_FALSE(v.justification.empty());
    for (const auto& st : v.justification) CHECK(rule_citations().at(st.tag) == st.citation);
    if (r.index() >= 2) {
      CHECK(v.values == std::set<int>{1, 2});
      CHECK_FALSE(v.general_only);
      ++one_or_two;
    } else if (is_exceptional_eight(r.ws)) {
      CHECK(v.values == std::set<int>{3});
      CHECK(v.general_only);
      ++exceptional;
    } else {
      CHECK(v.values == std::set<int>{2});
      ++two;
    }
  }
  CHECK(exceptional == 8);
  CHECK(two == 87);
  CHECK(one_or_two == 35);
}

TEST_CASE("verdict of X_36 in P(1,7,8,9,12)") {
  const IrrationalityVerdict v = decide(record({1, 7, 8, 9, 12, 36, 1}));
  CHECK(values_string(v.values) == "{3}");
  std::vector<std::string> tags;
  for (const auto& s : v.justification) tags.push_back(s.tag);
  CHECK(tags == std::vector<std::string>{"irrational-cited", "projection-degree-3", "super-rigid-bir-aut",
                                         "aut-trivial-certificate"});
  const IrrationalityVerdict quartic = decide(record({1, 1, 1, 1, 1, 4, 1}));
  CHECK(quartic.justification.back().tag == "aut-trivial-cited");
}

TEST_CASE("projection degree") {
  CHECK(max_w_exponent(WeightSystem({1, 1, 1, 1, 2}, 5)) == 2);
  CHECK(max_w_exponent(WeightSystem({1, 3, 4, 5, 6}, 18)) == 3);

  const ProjectionDegree sextic = projection_degree(record({1, 1, 1, 1, 3, 6, 1}));
  CHECK(sextic.degree == 2);
  CHECK_FALSE(sextic.via_normal_form);

  const ProjectionDegree nine = projection_degree(record({1, 1, 2, 3, 3, 9, 1}));
  CHECK(nine.degree == 2);
  CHECK(nine.via_normal_form);

  CHECK_FALSE(projection_degree(record({1, 3, 4, 5, 6, 18, 1})).degree);
  CHECK_FALSE(projection_degree(record({1, 1, 1, 1, 1, 4, 1})).degree);

  const auto cubic = record({1, 1, 1, 1, 1, 3, 2});
  CHECK(decide(cubic).values == std::set<int>{1, 2});
}

TEST_CASE("decide rejects weight systems outside the catalog") {
  const WeightSystem bad({1, 1, 1, 1, 4}, 7);
  FamilyRecord r{bad, membership_report(bad), {}, std::nullopt};
  CHECK_THROWS_AS(decide(r), PreconditionError);
}
