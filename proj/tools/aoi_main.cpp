// Command-line front end: run induction tasks, export dimension tables,
// print the equivalent SQL, and benchmark both induction paths.

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "aoi/bench.hpp"
#include "aoi/error.hpp"
#include "aoi/task.hpp"

namespace {

struct RunOptions {
  std::string task_file;
  std::optional<std::size_t> threshold;
  std::optional<std::size_t> attr_threshold;
  std::vector<std::string> levels;
  std::vector<std::string> further;
  std::vector<std::string> unions;
  std::string union_mode;
  std::string format;
  std::string path;
};

void apply_overrides(aoi::TaskFile& task, const RunOptions& opt) {
  using aoi::Error;
  using aoi::ErrorKind;
  if (!opt.path.empty()) {
    task.path = *aoi::parse_path_choice(opt.path);
    if (task.path == aoi::PathChoice::Star) {
      task.threshold.reset();
      task.attribute_threshold.reset();
      task.further.clear();
    }
  }
  if (opt.threshold) task.threshold = opt.threshold;
  if (opt.attr_threshold) task.attribute_threshold = opt.attr_threshold;
  for (const auto& item : opt.levels) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw Error(ErrorKind::Parse, "--level expects <attribute>=<level>, got '" + item + "'");
    std::string attr = item.substr(0, eq);
    std::string digits = item.substr(eq + 1);
    if (digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9)
      throw Error(ErrorKind::Parse, "--level " + item + ": level must be a non-negative integer");
    std::erase_if(task.levels, [&](const auto& kv) { return aoi::iequals(kv.first, attr); });
    task.levels.emplace_back(attr, std::stoul(digits));
  }
  if (!opt.further.empty()) task.further = opt.further;
  if (!opt.unions.empty()) task.unions = opt.unions;
  if (!opt.union_mode.empty()) task.union_mode = *aoi::parse_union_mode(opt.union_mode);
  if (!opt.format.empty()) task.format = *aoi::parse_output_format(opt.format);
}

std::string dimension_file_name(const aoi::DimensionTable& dim) {
  std::string name = "hierarchy_";
  for (char c : dim.attribute()) name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return name + ".csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attribute-oriented induction: classic threshold path and star-schema path"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an induction task file");
  run_cmd->add_option("taskfile", run.task_file, "Task file")->required();
  run_cmd->add_option("--threshold", run.threshold, "Generalization threshold (relation and attribute)");
  run_cmd->add_option("--attr-threshold", run.attr_threshold, "Attribute threshold");
  run_cmd->add_option("--level", run.levels, "Star level selection <attr>=<k> (repeatable)");
  run_cmd->add_option("--further", run.further, "Further-generalize an attribute (repeatable, classic)");
  run_cmd->add_option("--union", run.unions, "Union on an attribute (repeatable)");
  run_cmd->add_option("--union-mode", run.union_mode, "drop|merge-set")->check(CLI::IsMember({"drop", "merge-set"}));
  run_cmd->add_option("--format", run.format, "text|records")->check(CLI::IsMember({"text", "records"}));
  run_cmd->add_option("--path", run.path, "classic|star|both")->check(CLI::IsMember({"classic", "star", "both"}));

  std::string dims_task;
  std::string out_dir;
  auto* dims_cmd = app.add_subcommand("dims", "Dimension table operations");
  dims_cmd->require_subcommand(1);
  auto* export_cmd = dims_cmd->add_subcommand("export", "Write the dimension tables built from the hierarchy");
  export_cmd->add_option("taskfile", dims_task, "Task file")->required();
  export_cmd->add_option("--out-dir", out_dir, "Write one hierarchy_<attribute>.csv per table here");

  std::string sql_task;
  std::vector<std::string> sql_levels;
  auto* sql_cmd = app.add_subcommand("emit-sql", "Print the equivalent join/group-by statement");
  sql_cmd->add_option("taskfile", sql_task, "Task file")->required();
  sql_cmd->add_option("--level", sql_levels, "Level selection <attr>=<k> (repeatable)");

  std::string bench_file;
  auto* bench_cmd = app.add_subcommand("bench", "Time both paths on generated instances");
  bench_cmd->add_option("benchfile", bench_file, "Benchmark configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) {
      aoi::TaskFile task = aoi::load_task(run.task_file);
      apply_overrides(task, run);
      aoi::TaskReport report = aoi::run_task(task);
      std::cout << report.rendered;
    } else if (*export_cmd) {
      aoi::TaskFile task = aoi::load_task(dims_task);
      aoi::TaskInputs in = aoi::load_inputs(task);
      if (out_dir.empty()) {
        for (std::size_t i = 0; i < in.dims.size(); ++i) {
          if (i) std::cout << '\n';
          std::cout << "# " << dimension_file_name(in.dims[i]) << '\n'
                    << aoi::export_delimited(in.dims[i], task.delimiter);
        }
      } else {
        std::filesystem::create_directories(out_dir);
        for (const auto& dim : in.dims) {
          auto file = std::filesystem::path(out_dir) / dimension_file_name(dim);
          std::ofstream out(file, std::ios::binary);
          out << aoi::export_delimited(dim, task.delimiter);
          if (!out) throw aoi::Error(aoi::ErrorKind::Parse, "cannot write " + file.string());
          std::cout << file.string() << '\n';
        }
      }
    } else if (*sql_cmd) {
      aoi::TaskFile task = aoi::load_task(sql_task);
      RunOptions opt;
      opt.levels = sql_levels;
      apply_overrides(task, opt);
      task.path = aoi::PathChoice::Star;
      task.threshold.reset();
      task.attribute_threshold.reset();
      task.further.clear();
      aoi::TaskInputs in = aoi::load_inputs(task);
      std::cout << aoi::emit_sql(in.data.schema(), in.dims, aoi::star_task_of(task), task.fact_table);
    } else if (*bench_cmd) {
      std::filesystem::path path(bench_file);
      aoi::BenchConfig cfg = aoi::parse_bench(aoi::read_file(path), path.parent_path());
      std::cout << aoi::run_bench(cfg).rendered;
    }
  } catch (const aoi::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return aoi::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
