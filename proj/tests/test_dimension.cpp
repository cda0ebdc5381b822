#include <fstream>
#include <sstream>

#include "aoi/dimension.hpp"
#include "aoi/error.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aoi;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("dimension") {

TEST_CASE("dimension tables match the hand-typed goldens") {
  auto g = testing::load_graduate();
  const std::pair<const char*, std::size_t> expected[] = {
      {"Major", 10}, {"Category", 7}, {"Birthplace", 11}, {"GPA", 4}};
  for (auto [attr, rows] : expected) {
    const DimensionTable* dim = find_dimension(g.inputs.dims, attr);
    REQUIRE(dim);
    CHECK(dim->rows().size() == rows);
    std::string name = attr;
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    CHECK(export_delimited(*dim) == slurp(testing::golden_dir() / ("hierarchy_" + name + ".csv")));
  }
  CHECK(dimension_count(g.inputs.dims) == 4);
}

TEST_CASE("lookup agrees with repeated ascension for every leaf and level") {
  auto g = testing::load_graduate();
  for (const auto& tree : g.inputs.trees) {
    const DimensionTable* dim = find_dimension(g.inputs.dims, tree.attribute());
    REQUIRE(dim);
    if (tree.is_numeric()) {
      for (const auto& r : tree.ranges()) {
        for (const Decimal& x : {r.start, r.fin}) {
          Value v = x;
          for (std::size_t level = 1; level < tree.depth(); ++level) {
            v = ascend(v, tree, level - 1);
            CHECK(lookup(*dim, x, level) == v);
          }
        }
      }
      continue;
    }
    for (const auto& leaf : tree.leaves()) {
      Value v = leaf;
      CHECK(lookup(*dim, leaf, 0) == v);
      for (std::size_t level = 1; level < tree.depth(); ++level) {
        v = ascend(v, tree, level - 1);
        CHECK(lookup(*dim, leaf, level) == v);
      }
    }
  }
}

TEST_CASE("lookup errors") {
  auto g = testing::load_graduate();
  const DimensionTable& birth = *find_dimension(g.inputs.dims, "Birthplace");
  const DimensionTable& gpa = *find_dimension(g.inputs.dims, "GPA");
  try {
    lookup(birth, "Atlantis", 2);
    FAIL("expected unmappable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Unmappable);
  }
  CHECK_THROWS_AS(birth.column_of_level(3), Error);
  CHECK_THROWS_AS(gpa.column_of_level(0), Error);
  CHECK(gpa.column_of_level(1) == 2);
  CHECK_THROWS_AS(lookup(gpa, *Decimal::parse("4.01"), 1), Error);
  CHECK(lookup(*find_dimension(g.inputs.dims, "Category"), "M.A.", 1) == Value("graduate"));
}

TEST_CASE("column layout") {
  auto g = testing::load_graduate();
  CHECK(find_dimension(g.inputs.dims, "GPA")->columns() == std::vector<std::string>{"GPA_start", "GPA_fin", "range"});
  CHECK(find_dimension(g.inputs.dims, "Birthplace")->columns() ==
        std::vector<std::string>{"Birthplace", "City", "Country"});
  CHECK(find_dimension(g.inputs.dims, "Birthplace")->level_of("Alberta") == 1u);
}

}
