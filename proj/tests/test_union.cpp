#include "aoi/classic.hpp"
#include "aoi/error.hpp"
#include "aoi/generalized.hpp"
#include "aoi/star.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aoi;
using testing::Tuple;

TEST_SUITE("union") {

TEST_CASE("merge-set on Major folds three tuples into two") {
  auto g = testing::load_graduate();
  auto base = star_generalize(g.inputs.data, g.inputs.dims, testing::graduate_star());
  auto u = union_on(base, "Major", UnionMode::MergeSet);
  CHECK(testing::tuples_of(u) == std::vector<Tuple>{{{"{Art, Science}", "Canada", "Excellent"}, 3},
                                                     {{"{Science}", "Foreign", "Good"}, 3}});
  CHECK(u.relation.schema()[0].kind == AttributeKind::Text);
  CHECK(u.count_steps(StepKind::Union) == 1);
  CHECK(testing::vote_sum(u) == 6);
  CHECK_THROWS_AS(further_generalize(u, "Major", g.inputs.trees), Error);
}

TEST_CASE("drop on Birthplace and on GPA give the same vote multiset") {
  auto g = testing::load_graduate();
  auto base = star_generalize(g.inputs.data, g.inputs.dims, testing::graduate_star());
  for (const char* attr : {"Birthplace", "GPA"}) {
    CAPTURE(attr);
    auto u = union_on(base, attr, UnionMode::Drop);
    CHECK(u.relation.size() == 3);
    CHECK(u.relation.arity() == 2);
    CHECK(testing::votes_of(u) == std::vector<long long>{1, 2, 3});
    CHECK(u.labels.size() == 2);
  }
}

TEST_CASE("union on ANY-bearing classic output keeps ANY and votes") {
  auto g = testing::load_graduate();
  auto two = classic_generalize(g.inputs.data, g.inputs.trees, testing::graduate_classic(2));
  auto f = further_generalize(two, "Birthplace", g.inputs.trees);
  auto u = union_on(f, "Major", UnionMode::MergeSet);
  CHECK(testing::vote_sum(u) == 6);
  CHECK(u.contains_any());
  CHECK(u.relation.size() == 2);
  CHECK(u.threshold_satisfied);
}

TEST_CASE("union errors and mode names") {
  auto g = testing::load_graduate();
  auto base = star_generalize(g.inputs.data, g.inputs.dims, testing::graduate_star());
  CHECK_THROWS_AS(union_on(base, "Colour", UnionMode::Drop), Error);
  CHECK(parse_union_mode("drop") == UnionMode::Drop);
  CHECK(parse_union_mode("merge-set") == UnionMode::MergeSet);
  CHECK_FALSE(parse_union_mode("both"));
  CHECK(union_mode_name(UnionMode::MergeSet) == "merge-set");
}

}
