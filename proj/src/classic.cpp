#include "aoi/classic.hpp"

#include <unordered_set>

#include "aoi/error.hpp"

namespace aoi {

namespace {

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

std::size_t distinct_count(const std::vector<Row>& rows, std::size_t col) {
  std::unordered_set<Value, ValueHash> seen;
  for (const auto& row : rows) seen.insert(row[col]);
  return seen.size();
}

std::string level_label(const ConceptTree& tree, std::size_t level) {
  if (level >= tree.depth()) return std::string(kAnyLabel);
  return tree.level_names()[level];
}

std::string column_label(const ConceptTree& tree, std::size_t level) {
  if (tree.is_numeric() || level == 0 || level >= tree.depth()) return tree.attribute();
  return tree.level_names()[level];
}

const ConceptTree& tree_for(const std::vector<ConceptTree>& trees, std::string_view attribute) {
  const ConceptTree* t = find_tree(trees, attribute);
  if (!t) throw Error(ErrorKind::Schema, "no concept tree for attribute '" + std::string(attribute) + "'");
  return *t;
}

// Canonical level-0 form of a raw value; throws Unmappable.
Value canonical_leaf(const Value& v, const ConceptTree& tree, std::size_t row) {
  if (tree.is_numeric()) {
    if (v.is_number() && tree.find_range(v.number())) return v;
  } else if (v.is_text()) {
    if (auto leaf = tree.resolve_leaf(v.text())) return Value(*leaf);
  }
  throw Error(ErrorKind::Unmappable, "row " + std::to_string(row + 1) + ": '" + v.str() + "' of " +
                                         tree.attribute() + " is not in its concept tree");
}

std::string ascend_detail(const ConceptTree& tree, std::size_t from, std::size_t distinct) {
  return tree.attribute() + ": level " + std::to_string(from) + " (" + level_label(tree, from) + ") -> " +
         (from + 1 >= tree.depth() ? std::string(kAnyLabel)
                                   : "level " + std::to_string(from + 1) + " (" + level_label(tree, from + 1) + ")") +
         ", " + std::to_string(distinct) + " distinct";
}

}  // namespace

std::size_t ClassicTask::threshold_for(const std::string& attribute) const {
  for (const auto& [name, t] : attribute_thresholds) {
    if (iequals(name, attribute)) return t;
  }
  return attribute_threshold.value_or(relation_threshold);
}

GeneralizedRelation classic_generalize(const Relation& data, const std::vector<ConceptTree>& trees,
                                       const ClassicTask& task) {
  if (task.relation_threshold < 1) throw Error(ErrorKind::Schema, "relation threshold must be >= 1");
  if (task.attribute_threshold && *task.attribute_threshold < 1)
    throw Error(ErrorKind::Schema, "attribute threshold must be >= 1");
  for (const auto& [name, t] : task.attribute_thresholds) {
    if (t < 1) throw Error(ErrorKind::Schema, "threshold for " + name + " must be >= 1");
  }

  GeneralizedRelation g;
  std::size_t target_col = data.index_of(task.target_attribute);
  const ConceptTree& target_tree = tree_for(trees, task.target_attribute);
  if (!target_tree.level_of(task.target_concept))
    throw Error(ErrorKind::Schema, "target concept '" + task.target_concept + "' is not in the " +
                                       target_tree.attribute() + " tree");

  // Step 1: target class selection.
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Value& v = data.rows()[i][target_col];
    bool known = v.is_text() ? (target_tree.level_of(v.text()) || target_tree.resolve_leaf(v.text()))
                             : (v.is_number() && target_tree.is_numeric() && target_tree.find_range(v.number()));
    if (!known)
      throw Error(ErrorKind::Unmappable, "row " + std::to_string(i + 1) + ": '" + v.str() + "' of " +
                                             target_tree.attribute() + " is not in its concept tree");
    if (generalizes_to(v, task.target_concept, target_tree)) selected.push_back(i);
  }
  if (selected.empty())
    throw Error(ErrorKind::EmptyTarget, "no tuple of " + data.schema()[target_col].name + " generalizes to '" +
                                            task.target_concept + "'");
  g.target_count = static_cast<std::int64_t>(selected.size());
  g.provenance.push_back({StepKind::Select, data.schema()[target_col].name + " generalizes to " +
                                                task.target_concept + ": " + std::to_string(selected.size()) +
                                                " of " + std::to_string(data.size()) + " tuples"});
  g.provenance.push_back({StepKind::Remove, data.schema()[target_col].name + ": single concept " +
                                                task.target_concept + " in the target class"});

  // Step 2: attribute removal.
  std::vector<std::size_t> learn;
  if (task.learn_attributes.empty()) {
    for (std::size_t c = 0; c < data.arity(); ++c) {
      if (c != target_col) learn.push_back(c);
    }
  } else {
    for (const auto& name : task.learn_attributes) {
      std::size_t c = data.index_of(name);
      if (c == target_col) throw Error(ErrorKind::Schema, "target attribute " + name + " cannot be learned");
      learn.push_back(c);
    }
    for (std::size_t c = 0; c < data.arity(); ++c) {
      if (c != target_col && std::find(learn.begin(), learn.end(), c) == learn.end())
        g.provenance.push_back({StepKind::Remove, data.schema()[c].name + ": not a learn attribute"});
    }
  }
  std::vector<std::size_t> kept;
  std::vector<const ConceptTree*> col_trees;
  for (auto c : learn) {
    const ConceptTree* t = find_tree(trees, data.schema()[c].name);
    if (!t) {
      g.provenance.push_back({StepKind::Remove, data.schema()[c].name + ": no concept tree"});
      continue;
    }
    if ((t->is_numeric()) != (data.schema()[c].kind == AttributeKind::Numeric))
      throw Error(ErrorKind::Schema, "attribute " + data.schema()[c].name + " and its concept tree differ in kind");
    kept.push_back(c);
    col_trees.push_back(t);
  }

  Schema schema;
  for (auto c : kept) schema.push_back(data.schema()[c]);
  std::vector<Row> rows;
  rows.reserve(selected.size());
  for (auto i : selected) {
    Row row;
    row.reserve(kept.size());
    for (std::size_t k = 0; k < kept.size(); ++k) row.push_back(canonical_leaf(data.rows()[i][kept[k]], *col_trees[k], i));
    rows.push_back(std::move(row));
  }

  // Steps 3 and 5: uniform ascension under the attribute threshold.
  g.levels.assign(kept.size(), 0);
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const ConceptTree& tree = *col_trees[k];
    std::size_t limit = task.threshold_for(schema[k].name);
    for (std::size_t distinct = distinct_count(rows, k); distinct > limit; distinct = distinct_count(rows, k)) {
      g.provenance.push_back({StepKind::Ascend, ascend_detail(tree, g.levels[k], distinct)});
      for (auto& row : rows) row[k] = ascend(row[k], tree, g.levels[k]);
      ++g.levels[k];
      schema[k].kind = AttributeKind::Text;
    }
    g.depths.push_back(tree.depth());
    g.labels.push_back(column_label(tree, g.levels[k]));
  }

  // Step 4: vote propagation.
  std::size_t before = rows.size();
  g.relation = merge_identical(Relation(std::move(schema), std::move(rows)));
  g.provenance.push_back({StepKind::Merge, std::to_string(before) + " tuples -> " +
                                               std::to_string(g.relation.size()) + " tuples"});

  // Step 6.
  g.relation_threshold = task.relation_threshold;
  g.recheck_threshold();
  return g;
}

GeneralizedRelation further_generalize(const GeneralizedRelation& g, std::string_view attribute,
                                       const std::vector<ConceptTree>& trees) {
  std::size_t col = g.column(attribute);
  const ConceptTree& tree = tree_for(trees, g.relation.schema()[col].name);
  std::size_t from = g.levels[col];
  if (from >= tree.depth())
    throw Error(ErrorKind::State, tree.attribute() + " is already generalized to ANY");

  const Relation& r = g.relation;
  for (const auto& row : r.rows()) {
    if (row[col].is_set()) throw Error(ErrorKind::State, tree.attribute() + " has been unioned into value sets");
  }
  std::vector<Row> rows = r.rows();
  for (auto& row : rows) row[col] = ascend(row[col], tree, from);
  std::vector<std::int64_t> votes;
  for (std::size_t i = 0; i < r.size(); ++i) votes.push_back(r.vote(i));
  Schema schema = r.schema();
  schema[col].kind = AttributeKind::Text;

  GeneralizedRelation out = g;
  out.relation = merge_identical(Relation(std::move(schema), std::move(rows), std::move(votes)));
  out.levels[col] = from + 1;
  out.labels[col] = column_label(tree, from + 1);
  out.provenance.push_back({StepKind::Further, ascend_detail(tree, from, distinct_count(r.rows(), col)) + "; " +
                                                   std::to_string(r.size()) + " tuples -> " +
                                                   std::to_string(out.relation.size()) + " tuples"});
  out.recheck_threshold();
  return out;
}

}  // namespace aoi
