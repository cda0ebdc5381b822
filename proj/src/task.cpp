#include "aoi/task.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "aoi/error.hpp"

namespace aoi {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  for (auto& field : split_delimited(s, ',')) out.push_back(std::string(trim(field)));
  return out;
}

std::size_t parse_count(std::string_view s, const std::string& where) {
  s = trim(s);
  std::size_t v = 0;
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 9)
    throw Error(ErrorKind::Parse, where + ": '" + std::string(s) + "' is not a non-negative integer");
  for (char c : s) v = v * 10 + static_cast<std::size_t>(c - '0');
  return v;
}

// Splits "lhs = rhs".
std::pair<std::string, std::string> split_assignment(std::string_view s, const std::string& where) {
  auto eq = s.find('=');
  if (eq == std::string_view::npos) throw Error(ErrorKind::Parse, where + ": expected '<name> = <value>'");
  std::string lhs = unquote(s.substr(0, eq));
  std::string rhs = unquote(s.substr(eq + 1));
  if (lhs.empty() || rhs.empty()) throw Error(ErrorKind::Parse, where + ": expected '<name> = <value>'");
  return {lhs, rhs};
}

std::string text_table(const GeneralizedRelation& g) {
  const Relation& r = g.relation;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header;
  for (const auto& a : r.schema()) header.push_back(a.name);
  header.push_back("vote");
  cells.push_back(header);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::vector<std::string> line;
    for (const auto& v : r.rows()[i]) line.push_back(v.str());
    line.push_back(std::to_string(r.vote(i)));
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  std::string out;
  for (const auto& line : cells) {
    out += "  ";
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c) out += " | ";
      out += line[c];
      if (c + 1 < line.size()) out.append(width[c] - line[c].size(), ' ');
    }
    out += '\n';
  }
  return out;
}

std::vector<std::string> flags_of(const GeneralizedRelation& g, bool classic) {
  std::vector<std::string> flags;
  if (g.relation_threshold) {
    flags.push_back(g.threshold_satisfied ? "threshold satisfied"
                                          : "threshold exceeded (" + std::to_string(g.relation.size()) + " > " +
                                                std::to_string(*g.relation_threshold) + ")");
  }
  flags.push_back(g.contains_any() ? "contains ANY" : "no ANY");
  if (classic && g.count_steps(StepKind::Ascend) + g.count_steps(StepKind::Further) == 0)
    flags.push_back("no generalization");
  return flags;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string render_text_section(const std::string& title, const GeneralizedRelation& g,
                                 const CharacteristicRule& rule, bool classic) {
  std::string out = "== " + title + " ==\n";
  out += "provenance:\n";
  for (std::size_t i = 0; i < g.provenance.size(); ++i) {
    std::string name(step_name(g.provenance[i].kind));
    name.resize(8, ' ');
    out += "  " + std::to_string(i + 1) + ". " + name + g.provenance[i].detail + "\n";
  }
  out += "relation (" + std::to_string(g.relation.size()) + " tuples, " + std::to_string(g.relation.total_votes()) +
         " votes):\n";
  out += text_table(g);
  out += "flags: " + join(flags_of(g, classic), ", ") + "\n";
  out += "rule:\n  " + rule.to_text() + "\n";
  return out;
}

std::string render_records_section(const std::string& title, const GeneralizedRelation& g,
                                    const CharacteristicRule& rule, char delimiter, bool classic) {
  std::string out = "# " + title + " provenance\n";
  for (const auto& step : g.provenance)
    out += std::string(step_name(step.kind)) + delimiter + quote_field(step.detail, delimiter) + "\n";
  out += "# " + title + " relation\n";
  out += format_relation(g.relation, delimiter);
  out += "# " + title + " flags\n";
  for (const auto& f : flags_of(g, classic)) out += f + "\n";
  out += "# " + title + " rule\n";
  out += rule.to_records(delimiter);
  return out;
}

}  // namespace

std::optional<PathChoice> parse_path_choice(std::string_view text) {
  if (text == "classic") return PathChoice::Classic;
  if (text == "star") return PathChoice::Star;
  if (text == "both") return PathChoice::Both;
  return std::nullopt;
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "records") return OutputFormat::Records;
  return std::nullopt;
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TaskFile parse_task(std::string_view text, const std::filesystem::path& base_dir) {
  TaskFile task;
  bool have_data = false, have_schema = false, have_hierarchy = false, have_target = false;
  std::size_t line_no = 0;
  auto resolve = [&](std::string_view p) {
    std::filesystem::path path(unquote(p));
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto space = line.find_first_of(" \t");
    std::string key(line.substr(0, space));
    std::string_view arg = space == std::string_view::npos ? std::string_view() : trim(line.substr(space));
    std::string where = "line " + std::to_string(line_no);
    if (arg.empty() && key != "delimiter")
      throw Error(ErrorKind::Parse, where + ": '" + key + "' needs an argument");

    if (key == "data") {
      task.data_path = resolve(arg);
      have_data = true;
    } else if (key == "hierarchy") {
      task.hierarchy_path = resolve(arg);
      have_hierarchy = true;
    } else if (key == "delimiter") {
      std::string d = unquote(arg);
      if (d.empty() || d == "," ) {
        task.delimiter = ',';
      } else if (d == "tab" || d == "\\t") {
        task.delimiter = '\t';
      } else if (d.size() == 1) {
        task.delimiter = d[0];
      } else {
        throw Error(ErrorKind::Parse, where + ": delimiter must be a single character or 'tab'");
      }
    } else if (key == "schema") {
      task.schema.clear();
      for (const auto& item : split_list(arg)) {
        auto sp = item.find_last_of(" \t");
        if (sp == std::string::npos) throw Error(ErrorKind::Parse, where + ": expected '<attribute> text|numeric'");
        std::string name = unquote(std::string_view(item).substr(0, sp));
        std::string kind(trim(std::string_view(item).substr(sp + 1)));
        if (kind != "text" && kind != "numeric")
          throw Error(ErrorKind::Parse, where + ": unknown attribute kind '" + kind + "'");
        task.schema.push_back({name, kind == "numeric" ? AttributeKind::Numeric : AttributeKind::Text});
      }
      have_schema = true;
    } else if (key == "target") {
      std::tie(task.target_attribute, task.target_concept) = split_assignment(arg, where);
      have_target = true;
    } else if (key == "path") {
      auto p = parse_path_choice(arg);
      if (!p) throw Error(ErrorKind::Parse, where + ": path must be classic, star or both");
      task.path = *p;
    } else if (key == "threshold") {
      task.threshold = parse_count(arg, where);
    } else if (key == "attr-threshold") {
      task.attribute_threshold = parse_count(arg, where);
    } else if (key == "level") {
      auto [attr, level] = split_assignment(arg, where);
      task.levels.emplace_back(attr, parse_count(level, where));
    } else if (key == "further") {
      task.further.push_back(unquote(arg));
    } else if (key == "union") {
      task.unions.push_back(unquote(arg));
    } else if (key == "union-mode") {
      auto m = parse_union_mode(arg);
      if (!m) throw Error(ErrorKind::Parse, where + ": union-mode must be drop or merge-set");
      task.union_mode = *m;
    } else if (key == "unknown") {
      task.unknown_parents.push_back(split_assignment(arg, where));
    } else if (key == "format") {
      auto f = parse_output_format(arg);
      if (!f) throw Error(ErrorKind::Parse, where + ": format must be text or records");
      task.format = *f;
    } else if (key == "fact-table") {
      task.fact_table = unquote(arg);
    } else {
      throw Error(ErrorKind::Parse, where + ": unknown directive '" + key + "'");
    }
  }
  if (!have_data) throw Error(ErrorKind::Parse, "task file has no 'data' line");
  if (!have_schema) throw Error(ErrorKind::Parse, "task file has no 'schema' line");
  if (!have_hierarchy) throw Error(ErrorKind::Parse, "task file has no 'hierarchy' line");
  if (!have_target) throw Error(ErrorKind::Parse, "task file has no 'target' line");
  return task;
}

TaskFile load_task(const std::filesystem::path& file) {
  return parse_task(read_file(file), file.parent_path());
}

void validate_task(const TaskFile& task) {
  auto require = [&](const std::string& name, const std::string& what) {
    if (!find_attribute(task.schema, name))
      throw Error(ErrorKind::Schema, what + " names unknown attribute '" + name + "'");
  };
  for (std::size_t i = 0; i < task.schema.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (iequals(task.schema[i].name, task.schema[j].name))
        throw Error(ErrorKind::Schema, "schema declares '" + task.schema[i].name + "' twice");
    }
  }
  require(task.target_attribute, "target");
  for (const auto& [attr, level] : task.levels) require(attr, "level");
  for (const auto& attr : task.further) require(attr, "further");
  for (const auto& attr : task.unions) require(attr, "union");
  for (const auto& [attr, parent] : task.unknown_parents) require(attr, "unknown");

  if (!task.runs_classic()) {
    if (task.threshold || task.attribute_threshold)
      throw Error(ErrorKind::Schema, "thresholds apply to the classic path only");
    if (!task.further.empty()) throw Error(ErrorKind::Schema, "further generalization applies to the classic path only");
  } else {
    if (!task.threshold) throw Error(ErrorKind::Schema, "the classic path needs a threshold");
    if (*task.threshold < 1 || (task.attribute_threshold && *task.attribute_threshold < 1))
      throw Error(ErrorKind::Schema, "thresholds must be >= 1");
  }
  if (!task.runs_star() && !task.levels.empty())
    throw Error(ErrorKind::Schema, "level selection applies to the star path only");
}

TaskInputs load_inputs(const TaskFile& task) {
  validate_task(task);
  TaskInputs in;
  {
    std::ifstream data(task.data_path, std::ios::binary);
    if (!data) throw Error(ErrorKind::Parse, "cannot read " + task.data_path.string());
    in.data = read_delimited(data, task.schema, task.delimiter);
  }
  in.trees = parse_hierarchy(read_file(task.hierarchy_path));
  for (const auto& [attr, parent] : task.unknown_parents) {
    auto it = std::find_if(in.trees.begin(), in.trees.end(),
                           [&](const ConceptTree& t) { return iequals(t.attribute(), attr); });
    if (it == in.trees.end()) throw Error(ErrorKind::Schema, "no concept tree for '" + attr + "'");
    *it = it->with_unknown_leaf(parent);
  }
  for (const auto& t : in.trees) in.dims.push_back(build_dimension_table(t));
  return in;
}

ClassicTask classic_task_of(const TaskFile& task) {
  ClassicTask ct;
  ct.target_attribute = task.target_attribute;
  ct.target_concept = task.target_concept;
  ct.relation_threshold = task.threshold.value_or(1);
  ct.attribute_threshold = task.attribute_threshold;
  return ct;
}

StarTask star_task_of(const TaskFile& task) {
  StarTask st;
  st.target_attribute = task.target_attribute;
  st.target_concept = task.target_concept;
  for (const auto& [attr, level] : task.levels) st.level_selection[attr] = level;
  return st;
}

bool same_result(const GeneralizedRelation& a, const GeneralizedRelation& b) {
  return a.relation == b.relation;
}

TaskReport run_task(const TaskFile& task, const TaskInputs& inputs) {
  validate_task(task);
  TaskReport report;
  std::string target_name = task.target_concept;

  if (task.runs_classic()) {
    GeneralizedRelation g = classic_generalize(inputs.data, inputs.trees, classic_task_of(task));
    for (const auto& attr : task.further) g = further_generalize(g, attr, inputs.trees);
    for (const auto& attr : task.unions) g = union_on(g, attr, task.union_mode);
    report.classic_rule = to_rule(g, target_name, g.target_count);
    report.classic = std::move(g);
  }
  if (task.runs_star()) {
    GeneralizedRelation g = star_generalize(inputs.data, inputs.dims, star_task_of(task));
    for (const auto& attr : task.unions) g = union_on(g, attr, task.union_mode);
    report.star_rule = to_rule(g, target_name, g.target_count);
    report.star = std::move(g);
  }
  if (report.classic && report.star) report.identical = same_result(*report.classic, *report.star);

  std::string classic_title = "classic (threshold " + std::to_string(task.threshold.value_or(0)) +
                              (task.attribute_threshold ? ", attribute threshold " + std::to_string(*task.attribute_threshold) : "") +
                              ")";
  std::string& out = report.rendered;
  if (task.format == OutputFormat::Text) {
    out += "target: " + task.target_attribute + " = " + task.target_concept + "\n";
    if (report.classic) out += render_text_section(classic_title, *report.classic, *report.classic_rule, true);
    if (report.star) out += render_text_section("star", *report.star, *report.star_rule, false);
    if (report.identical)
      out += "== comparison ==\nclassic and star outputs identical: " + std::string(*report.identical ? "yes" : "no") + "\n";
  } else {
    if (report.classic) out += render_records_section("classic", *report.classic, *report.classic_rule, task.delimiter, true);
    if (report.star) out += render_records_section("star", *report.star, *report.star_rule, task.delimiter, false);
    if (report.identical) out += "# comparison\nidentical" + std::string(1, task.delimiter) + (*report.identical ? "yes" : "no") + "\n";
  }
  return report;
}

TaskReport run_task(const TaskFile& task) { return run_task(task, load_inputs(task)); }

}  // namespace aoi
