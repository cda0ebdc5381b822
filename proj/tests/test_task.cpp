#include <fstream>
#include <sstream>

#include "aoi/error.hpp"
#include "aoi/task.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aoi;

namespace {

const char* kSchema = "schema Name text, Category text, Major text, Birthplace text, GPA numeric\n";

TaskFile graduate_task(const std::string& extra) {
  std::string text = std::string("data students.csv\n") + kSchema +
                     "hierarchy hierarchy.txt\ntarget Category = graduate\n" + extra;
  return parse_task(text, testing::data_dir() / "graduate");
}

ErrorKind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::State;
}

}  // namespace

TEST_SUITE("task") {

TEST_CASE("task file directives") {
  auto t = graduate_task(
      "path classic\nthreshold 2\nattr-threshold 3\nfurther Birthplace\nunion Major\nunion-mode drop\n"
      "format records\ndelimiter tab\nfact-table facts\nunknown Birthplace = Foreign\n");
  CHECK(t.path == PathChoice::Classic);
  CHECK(t.threshold == 2u);
  CHECK(t.attribute_threshold == 3u);
  CHECK(t.further == std::vector<std::string>{"Birthplace"});
  CHECK(t.unions == std::vector<std::string>{"Major"});
  CHECK(t.union_mode == UnionMode::Drop);
  CHECK(t.format == OutputFormat::Records);
  CHECK(t.delimiter == '\t');
  CHECK(t.fact_table == "facts");
  CHECK(t.schema.size() == 5);
  CHECK(t.schema[4].kind == AttributeKind::Numeric);
  CHECK(t.data_path == testing::data_dir() / "graduate" / "students.csv");
  CHECK(t.unknown_parents.size() == 1);

  auto s = graduate_task("path star\nlevel Birthplace = 1\n");
  CHECK(s.levels == std::vector<std::pair<std::string, std::size_t>>{{"Birthplace", 1}});
}

TEST_CASE("task validation") {
  CHECK(error_kind([] { validate_task(graduate_task("threshold 3\nlevel Colour = 1\n")); }) == ErrorKind::Schema);
  CHECK(error_kind([] { validate_task(graduate_task("path star\nthreshold 3\n")); }) == ErrorKind::Schema);
  CHECK(error_kind([] { validate_task(graduate_task("path classic\n")); }) == ErrorKind::Schema);
  CHECK(error_kind([] { validate_task(graduate_task("path classic\nthreshold 3\nlevel Major = 0\n")); }) ==
        ErrorKind::Schema);
  CHECK(error_kind([] { graduate_task("threshold many\n"); }) == ErrorKind::Parse);
  CHECK(error_kind([] { graduate_task("bogus 1\n"); }) == ErrorKind::Parse);
  CHECK(error_kind([] { graduate_task("path sideways\n"); }) == ErrorKind::Parse);
  CHECK(exit_code(ErrorKind::Parse) == 2);
  CHECK(exit_code(ErrorKind::Schema) == 2);
  CHECK(exit_code(ErrorKind::Unmappable) == 3);
  CHECK(exit_code(ErrorKind::EmptyTarget) == 4);
}

TEST_CASE("both paths at threshold 3 report identical output") {
  auto report = run_task(graduate_task("threshold 3\n"));
  REQUIRE(report.identical);
  CHECK(*report.identical);
  CHECK(report.classic->relation.size() == 3);
  CHECK(report.star->relation.size() == 3);
  CHECK(report.rendered.find("classic and star outputs identical: yes") != std::string::npos);
}

TEST_CASE("threshold 1 report flags ANY") {
  auto report = run_task(graduate_task("path classic\nthreshold 1\n"));
  CHECK(report.classic->contains_any());
  CHECK(report.rendered.find("contains ANY") != std::string::npos);
  CHECK_FALSE(report.identical);
}

TEST_CASE("threshold 6 report flags no generalization") {
  auto report = run_task(graduate_task("path classic\nthreshold 6\n"));
  CHECK(report.rendered.find("no generalization") != std::string::npos);
}

TEST_CASE("reports are deterministic and match the stored golden") {
  auto task = load_task(testing::graduate_task_path());
  std::string first = run_task(task).rendered;
  std::string second = run_task(task).rendered;
  CHECK(first == second);
  std::ifstream in(testing::golden_dir() / "graduate_report.txt", std::ios::binary);
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(first == golden.str());
}

TEST_CASE("unknown parent keeps unlisted values in play") {
  std::string dir = (std::filesystem::temp_directory_path() / "aoi_unknown_test").string();
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir + "/students.csv") << "Name,Category,Major,Birthplace,GPA\nZed,MS,Math,Atlantis,3.1\n"
                                            "Yan,PhD,Math,Bombay,3.2\n";
    std::ofstream(dir + "/hierarchy.txt") << read_file(testing::data_dir() / "graduate" / "hierarchy.txt");
  }
  std::string text = std::string("data students.csv\n") + kSchema +
                     "hierarchy hierarchy.txt\ntarget Category = graduate\npath star\n";
  CHECK(error_kind([&] { run_task(parse_task(text, dir)); }) == ErrorKind::Unmappable);
  auto report = run_task(parse_task(text + "unknown Birthplace = China\n", dir));
  REQUIRE(report.star);
  CHECK(report.star->relation.size() == 1);
  CHECK(report.star->relation.vote(0) == 2);
  std::filesystem::remove_all(dir);
}

}
