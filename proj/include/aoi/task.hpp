#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aoi/classic.hpp"
#include "aoi/dimension.hpp"
#include "aoi/generalized.hpp"
#include "aoi/hierarchy.hpp"
#include "aoi/relation.hpp"
#include "aoi/rules.hpp"
#include "aoi/star.hpp"

namespace aoi {

enum class PathChoice { Classic, Star, Both };
enum class OutputFormat { Text, Records };

// Induction task read from a line-oriented task file:
//
//   data students.csv
//   delimiter ,                      (or "tab")
//   schema Name text, GPA numeric, ...
//   hierarchy hierarchy.txt
//   target Category = graduate
//   path classic|star|both
//   threshold 3
//   attr-threshold 3
//   level Birthplace = 1             (repeatable)
//   further Birthplace               (repeatable, classic path)
//   union Major                      (repeatable)
//   union-mode drop|merge-set
//   unknown Birthplace = Foreign     (map unlisted values to UNKNOWN under a parent)
//   format text|records
//   fact-table student
//
// Relative paths resolve against the task file's directory.
struct TaskFile {
  std::filesystem::path data_path;
  std::filesystem::path hierarchy_path;
  char delimiter = ',';
  Schema schema;
  std::string target_attribute;
  std::string target_concept;
  PathChoice path = PathChoice::Both;
  std::optional<std::size_t> threshold;
  std::optional<std::size_t> attribute_threshold;
  std::vector<std::pair<std::string, std::size_t>> levels;
  std::vector<std::string> further;
  std::vector<std::string> unions;
  UnionMode union_mode = UnionMode::MergeSet;
  std::vector<std::pair<std::string, std::string>> unknown_parents;
  OutputFormat format = OutputFormat::Text;
  std::string fact_table = "student";

  bool runs_classic() const { return path != PathChoice::Star; }
  bool runs_star() const { return path != PathChoice::Classic; }
};

TaskFile parse_task(std::string_view text, const std::filesystem::path& base_dir = {});
TaskFile load_task(const std::filesystem::path& file);

// Checks attribute references and that directives suit the chosen path.
void validate_task(const TaskFile& task);

std::optional<PathChoice> parse_path_choice(std::string_view text);
std::optional<OutputFormat> parse_output_format(std::string_view text);
std::string read_file(const std::filesystem::path& file);

struct TaskInputs {
  Relation data;
  std::vector<ConceptTree> trees;
  std::vector<DimensionTable> dims;
};

TaskInputs load_inputs(const TaskFile& task);

ClassicTask classic_task_of(const TaskFile& task);
StarTask star_task_of(const TaskFile& task);

struct TaskReport {
  std::optional<GeneralizedRelation> classic;
  std::optional<GeneralizedRelation> star;
  std::optional<CharacteristicRule> classic_rule;
  std::optional<CharacteristicRule> star_rule;
  // Set when both paths ran.
  std::optional<bool> identical;
  std::string rendered;
};

// Runs the selected path(s) on already loaded inputs.
TaskReport run_task(const TaskFile& task, const TaskInputs& inputs);
// Loads the inputs, then runs.
TaskReport run_task(const TaskFile& task);

// Same schema, rows and votes.
bool same_result(const GeneralizedRelation& a, const GeneralizedRelation& b);

}  // namespace aoi
