#include "aoi/error.hpp"
#include "aoi/star.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aoi;
using testing::Tuple;

TEST_SUITE("star") {

TEST_CASE("top levels match the hand-mapped oracle") {
  auto g = testing::load_graduate();
  auto r = star_generalize(g.inputs.data, g.inputs.dims, testing::graduate_star());
  CHECK(testing::tuples_of(r) == std::vector<Tuple>{{{"Science", "Foreign", "Good"}, 3},
                                                     {{"Science", "Canada", "Excellent"}, 2},
                                                     {{"Art", "Canada", "Excellent"}, 1}});
  CHECK(testing::sorted(testing::tuples_of(r)) == testing::oracle::group({1, 2, 1}));
  CHECK_FALSE(r.contains_any());
  CHECK(r.count_steps(StepKind::Group) == 1);
  CHECK(r.target_count == 6);
}

TEST_CASE("every level selection matches the oracle") {
  auto g = testing::load_graduate();
  for (std::size_t major = 0; major < 2; ++major)
    for (std::size_t birth = 0; birth < 3; ++birth) {
      auto task = testing::graduate_star();
      task.level_selection["Major"] = major;
      task.level_selection["Birthplace"] = birth;
      auto r = star_generalize(g.inputs.data, g.inputs.dims, task);
      CHECK(testing::sorted(testing::tuples_of(r)) == testing::oracle::group({major, birth, 1}));
    }
}

TEST_CASE("drill down on Birthplace to City") {
  auto g = testing::load_graduate();
  auto r = drill_down(g.inputs.data, g.inputs.dims, testing::graduate_star(), "Birthplace", 1);
  CHECK(r.relation.size() == 5);
  CHECK(testing::tuples_of(r).front() == Tuple{{"Science", "China", "Good"}, 2});
  CHECK(testing::vote_sum(r) == 6);
  auto task = testing::graduate_star();
  task.level_selection["Birthplace"] = 1;
  CHECK_THROWS_AS(drill_down(g.inputs.data, g.inputs.dims, task, "Birthplace", 2), Error);
}

TEST_CASE("star error cases") {
  auto g = testing::load_graduate();
  auto task = testing::graduate_star();
  task.target_concept = "undergraduate";
  try {
    star_generalize(g.inputs.data, g.inputs.dims, task);
    FAIL("expected empty target");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyTarget);
  }
  task = testing::graduate_star();
  task.level_selection["Birthplace"] = 3;
  CHECK_THROWS_AS(star_generalize(g.inputs.data, g.inputs.dims, task), Error);
  task = testing::graduate_star();
  task.level_selection["Colour"] = 1;
  CHECK_THROWS_AS(star_generalize(g.inputs.data, g.inputs.dims, task), Error);
  task = testing::graduate_star();
  task.target_concept = "Sophomore";
  CHECK_THROWS_AS(star_generalize(g.inputs.data, g.inputs.dims, task), Error);

  auto rows = g.inputs.data.rows();
  rows[0][2] = Value("Alchemy");
  try {
    star_generalize(Relation(g.inputs.data.schema(), rows), g.inputs.dims, testing::graduate_star());
    FAIL("expected unmappable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unmappable);
  }
}

TEST_CASE("emitted SQL joins every dimension and groups by selected levels") {
  auto g = testing::load_graduate();
  std::string sql = emit_sql(g.inputs.data.schema(), g.inputs.dims, testing::graduate_star());
  CHECK(sql.find("from student, hierarchy_category, hierarchy_major, hierarchy_birthplace, hierarchy_gpa") !=
        std::string::npos);
  CHECK(sql.find("hierarchy_category.Study = 'graduate'") != std::string::npos);
  CHECK(sql.find("student.GPA >= hierarchy_gpa.GPA_start") != std::string::npos);
  CHECK(sql.find("group by hierarchy_major.StudyProg, hierarchy_birthplace.Country, hierarchy_gpa.range") !=
        std::string::npos);
  CHECK(sql.find("count(*) as vote") != std::string::npos);
}

}
