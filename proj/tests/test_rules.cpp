#include "aoi/classic.hpp"
#include "aoi/error.hpp"
#include "aoi/generalized.hpp"
#include "aoi/rules.hpp"
#include "aoi/star.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aoi;

TEST_SUITE("rules") {

TEST_CASE("three-tuple result becomes a three-disjunct rule") {
  auto g = testing::load_graduate();
  auto r = star_generalize(g.inputs.data, g.inputs.dims, testing::graduate_star());
  auto rule = to_rule(r, "graduate", 6);
  REQUIRE(rule.disjuncts.size() == 3);
  const double expect[] = {300.0 / 6, 200.0 / 6, 100.0 / 6};
  const std::int64_t votes[] = {3, 2, 1};
  for (int i = 0; i < 3; ++i) {
    CHECK(rule.disjuncts[i].vote == votes[i]);
    CHECK(std::abs(rule.disjuncts[i].percent() - expect[i]) <= 0.05);
    CHECK(rule.disjuncts[i].conjuncts.size() == 3);
  }
  CHECK(rule.to_text() ==
        "graduate(x) → (StudyProg=Science ∧ Country=Foreign ∧ GPA=Good) [3, 50.0%] ∨ "
        "(StudyProg=Science ∧ Country=Canada ∧ GPA=Excellent) [2, 33.3%] ∨ "
        "(StudyProg=Art ∧ Country=Canada ∧ GPA=Excellent) [1, 16.7%]");
}

TEST_CASE("all-ANY result is the degenerate rule") {
  auto g = testing::load_graduate();
  auto r = classic_generalize(g.inputs.data, g.inputs.trees, testing::graduate_classic(1));
  auto rule = to_rule(r, "graduate", 6);
  REQUIRE(rule.disjuncts.size() == 1);
  CHECK(rule.disjuncts[0].conjuncts.empty());
  CHECK(rule.to_text() == "graduate(x) → true [6, 100%]");
}

TEST_CASE("value sets render as inner disjunctions") {
  auto g = testing::load_graduate();
  auto r = union_on(star_generalize(g.inputs.data, g.inputs.dims, testing::graduate_star()), "Major",
                    UnionMode::MergeSet);
  auto rule = to_rule(r, "graduate", 6);
  CHECK(rule.to_text().find("(StudyProg=Art ∨ StudyProg=Science) ∧ Country=Canada") != std::string::npos);
  CHECK(rule.to_records().find("(StudyProg=Art OR StudyProg=Science) AND Country=Canada AND GPA=Excellent,vote=3,"
                               "percent=50.0") != std::string::npos);
}

TEST_CASE("percent rounding and totals") {
  CHECK(format_percent(1000) == "100");
  CHECK(format_percent(500) == "50.0");
  CHECK(format_percent(167) == "16.7");
  auto g = testing::load_graduate();
  auto r = star_generalize(g.inputs.data, g.inputs.dims, testing::graduate_star());
  CHECK_THROWS_AS(to_rule(r, "graduate", 5), Error);
  CHECK_THROWS_AS(to_rule(r, "graduate", 0), Error);
  auto wider = to_rule(r, "graduate", 8);
  CHECK(wider.disjuncts[0].percent_tenths == 375);
}

}
