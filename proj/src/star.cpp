#include "aoi/star.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "aoi/error.hpp"

namespace aoi {

namespace {

const DimensionTable& dimension_for(std::span<const DimensionTable> dims, std::string_view attribute) {
  const DimensionTable* d = find_dimension(dims, attribute);
  if (!d) throw Error(ErrorKind::Schema, "no dimension table for attribute '" + std::string(attribute) + "'");
  return *d;
}

std::string column_label(const DimensionTable& dim, std::size_t level) {
  if (dim.is_numeric() || level == 0) return dim.attribute();
  return dim.level_name(level);
}

struct Plan {
  std::size_t target_col = 0;
  const DimensionTable* target_dim = nullptr;
  std::size_t target_level = 0;
  // Output columns in fact-schema order.
  std::vector<std::size_t> fact_cols;
  std::vector<const DimensionTable*> col_dims;
  std::vector<std::size_t> col_levels;
};

Plan make_plan(const Schema& schema, std::span<const DimensionTable> dims, const StarTask& task) {
  Plan p;
  auto target_col = find_attribute(schema, task.target_attribute);
  if (!target_col) throw Error(ErrorKind::Schema, "unknown attribute '" + task.target_attribute + "'");
  p.target_col = *target_col;
  p.target_dim = &dimension_for(dims, task.target_attribute);
  auto inferred = p.target_dim->level_of(task.target_concept);
  if (!inferred)
    throw Error(ErrorKind::Schema, "target concept '" + task.target_concept + "' is not in dimension " +
                                       p.target_dim->attribute());
  p.target_level = task.target_level.value_or(*inferred);
  if (p.target_level != *inferred)
    throw Error(ErrorKind::Schema, "target concept '" + task.target_concept + "' is not at level " +
                                       std::to_string(p.target_level) + " of " + p.target_dim->attribute());
  if (p.target_level < 1) throw Error(ErrorKind::Schema, "target level must be >= 1");

  std::vector<std::size_t> learn;
  if (task.learn_attributes.empty()) {
    for (std::size_t c = 0; c < schema.size(); ++c) {
      if (c != p.target_col && find_dimension(dims, schema[c].name)) learn.push_back(c);
    }
  } else {
    for (const auto& name : task.learn_attributes) {
      auto c = find_attribute(schema, name);
      if (!c) throw Error(ErrorKind::Schema, "unknown attribute '" + name + "'");
      if (*c == p.target_col) throw Error(ErrorKind::Schema, "target attribute " + name + " cannot be learned");
      dimension_for(dims, name);
      learn.push_back(*c);
    }
  }
  for (const auto& [name, level] : task.level_selection) {
    auto c = find_attribute(schema, name);
    if (!c) throw Error(ErrorKind::Schema, "level selection names unknown attribute '" + name + "'");
    if (std::find(learn.begin(), learn.end(), *c) == learn.end())
      throw Error(ErrorKind::Schema, "level selection for " + name + ", which is not a learn attribute");
  }
  if (task.retain_target_level) learn.push_back(p.target_col);
  std::sort(learn.begin(), learn.end());

  for (auto c : learn) {
    const DimensionTable& dim = dimension_for(dims, schema[c].name);
    if (dim.is_numeric() != (schema[c].kind == AttributeKind::Numeric))
      throw Error(ErrorKind::Schema, "attribute " + schema[c].name + " and its dimension differ in kind");
    std::size_t level = c == p.target_col ? *task.retain_target_level
                                          : task.level_for(schema[c].name).value_or(dim.top_level());
    dim.column_of_level(level);
    p.fact_cols.push_back(c);
    p.col_dims.push_back(&dim);
    p.col_levels.push_back(level);
  }
  return p;
}

}  // namespace

std::optional<std::size_t> StarTask::level_for(const std::string& attribute) const {
  for (const auto& [name, level] : level_selection) {
    if (iequals(name, attribute)) return level;
  }
  return std::nullopt;
}

GeneralizedRelation star_generalize(const Relation& fact, std::span<const DimensionTable> dims,
                                    const StarTask& task) {
  Plan p = make_plan(fact.schema(), dims, task);
  const DimensionTable& tdim = *p.target_dim;
  std::size_t tcol = tdim.column_of_level(p.target_level);

  std::unordered_map<Row, std::size_t, RowHash> slot;
  std::vector<Row> rows;
  std::vector<std::int64_t> votes;
  std::int64_t selected = 0;
  for (std::size_t i = 0; i < fact.size(); ++i) {
    const Row& src = fact.rows()[i];
    auto trow = tdim.match(src[p.target_col]);
    if (!trow)
      throw Error(ErrorKind::Unmappable, "row " + std::to_string(i + 1) + ": no row of dimension " +
                                             tdim.attribute() + " matches '" + src[p.target_col].str() + "'");
    const Value& cell = tdim.rows()[*trow][tcol];
    if (!cell.is_text() || cell.text() != task.target_concept) continue;
    ++selected;

    Row key;
    key.reserve(p.fact_cols.size());
    for (std::size_t k = 0; k < p.fact_cols.size(); ++k) {
      const DimensionTable& dim = *p.col_dims[k];
      auto drow = dim.match(src[p.fact_cols[k]]);
      if (!drow)
        throw Error(ErrorKind::Unmappable, "row " + std::to_string(i + 1) + ": no row of dimension " +
                                               dim.attribute() + " matches '" + src[p.fact_cols[k]].str() + "'");
      key.push_back(dim.rows()[*drow][dim.column_of_level(p.col_levels[k])]);
    }
    auto [it, inserted] = slot.try_emplace(key, rows.size());
    if (inserted) {
      rows.push_back(std::move(key));
      votes.push_back(1);
    } else {
      ++votes[it->second];
    }
  }
  if (selected == 0)
    throw Error(ErrorKind::EmptyTarget, "no tuple of " + fact.schema()[p.target_col].name + " maps to '" +
                                            task.target_concept + "'");

  GeneralizedRelation g;
  Schema schema;
  std::string group_by;
  for (std::size_t k = 0; k < p.fact_cols.size(); ++k) {
    const DimensionTable& dim = *p.col_dims[k];
    schema.push_back({fact.schema()[p.fact_cols[k]].name, AttributeKind::Text});
    g.levels.push_back(p.col_levels[k]);
    g.depths.push_back(dim.depth());
    g.labels.push_back(column_label(dim, p.col_levels[k]));
    if (k) group_by += ", ";
    group_by += dim.attribute() + "." + dim.level_name(p.col_levels[k]);
  }
  g.target_count = selected;
  g.provenance.push_back({StepKind::Select, tdim.attribute() + "." + tdim.level_name(p.target_level) + " = " +
                                                task.target_concept + ": " + std::to_string(selected) + " of " +
                                                std::to_string(fact.size()) + " tuples"});
  g.provenance.push_back({StepKind::Group, "group by " + (group_by.empty() ? std::string("()") : group_by) + ": " +
                                               std::to_string(selected) + " tuples -> " +
                                               std::to_string(rows.size()) + " groups"});
  g.relation = canonical_order(Relation(std::move(schema), std::move(rows), std::move(votes)));
  g.threshold_satisfied = true;
  return g;
}

GeneralizedRelation drill_down(const Relation& fact, std::span<const DimensionTable> dims, const StarTask& task,
                               std::string_view attribute, std::size_t new_level) {
  const DimensionTable& dim = dimension_for(dims, attribute);
  std::size_t current = task.level_for(dim.attribute()).value_or(dim.top_level());
  dim.column_of_level(new_level);
  if (new_level > current)
    throw Error(ErrorKind::Schema, "drill-down on " + dim.attribute() + " must not raise the level (" +
                                       std::to_string(current) + " -> " + std::to_string(new_level) + ")");
  StarTask adjusted = task;
  std::erase_if(adjusted.level_selection, [&](const auto& kv) { return iequals(kv.first, attribute); });
  adjusted.level_selection[dim.attribute()] = new_level;
  return star_generalize(fact, dims, adjusted);
}

std::string emit_sql(const Schema& fact_schema, std::span<const DimensionTable> dims, const StarTask& task,
                     const std::string& fact_table) {
  Plan p = make_plan(fact_schema, dims, task);
  auto table = [](const DimensionTable& d) {
    std::string name = "hierarchy_";
    for (char c : d.attribute()) name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return name;
  };
  std::vector<const DimensionTable*> joined = {p.target_dim};
  std::vector<std::size_t> joined_cols = {p.target_col};
  for (std::size_t k = 0; k < p.fact_cols.size(); ++k) {
    if (p.col_dims[k] != p.target_dim) {
      joined.push_back(p.col_dims[k]);
      joined_cols.push_back(p.fact_cols[k]);
    }
  }

  std::string select;
  for (std::size_t k = 0; k < p.fact_cols.size(); ++k) {
    const DimensionTable& d = *p.col_dims[k];
    if (k) select += ", ";
    select += table(d) + "." + d.columns()[d.column_of_level(p.col_levels[k])];
  }
  std::string sql = "select " + select + (select.empty() ? "" : ",\n       ") + "count(*) as vote\n";
  sql += "from " + fact_table;
  for (const auto* d : joined) sql += ", " + table(*d);
  sql += "\nwhere " + table(*p.target_dim) + "." + p.target_dim->columns()[p.target_dim->column_of_level(p.target_level)] +
         " = '" + task.target_concept + "'\n";
  for (std::size_t j = 0; j < joined.size(); ++j) {
    const DimensionTable& d = *joined[j];
    const std::string& fact_col = fact_schema[joined_cols[j]].name;
    if (d.is_numeric()) {
      sql += "  and " + fact_table + "." + fact_col + " >= " + table(d) + "." + d.columns()[0] + "\n";
      sql += "  and " + fact_table + "." + fact_col + " <= " + table(d) + "." + d.columns()[1] + "\n";
    } else {
      sql += "  and " + fact_table + "." + fact_col + " = " + table(d) + "." + d.columns()[0] + "\n";
    }
  }
  if (!select.empty()) sql += "group by " + select + "\n";
  return sql;
}

}  // namespace aoi
