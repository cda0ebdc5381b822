#include "aoi/generalized.hpp"

#include <algorithm>
#include <unordered_map>

#include "aoi/error.hpp"

namespace aoi {

std::string_view step_name(StepKind kind) {
  switch (kind) {
    case StepKind::Select:
      return "select";
    case StepKind::Remove:
      return "remove";
    case StepKind::Ascend:
      return "ascend";
    case StepKind::Merge:
      return "merge";
    case StepKind::Group:
      return "group";
    case StepKind::Further:
      return "further";
    case StepKind::Union:
      return "union";
  }
  return "?";
}

bool GeneralizedRelation::contains_any() const {
  for (const auto& row : relation.rows()) {
    if (std::any_of(row.begin(), row.end(), [](const Value& v) { return v.is_any(); })) return true;
  }
  return false;
}

std::size_t GeneralizedRelation::count_steps(StepKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(provenance.begin(), provenance.end(), [&](const ProvenanceStep& s) { return s.kind == kind; }));
}

std::size_t GeneralizedRelation::column(std::string_view attribute) const {
  return relation.index_of(attribute);
}

void GeneralizedRelation::recheck_threshold() {
  threshold_satisfied = !relation_threshold || relation.size() <= *relation_threshold;
}

std::optional<UnionMode> parse_union_mode(std::string_view text) {
  if (text == "drop") return UnionMode::Drop;
  if (text == "merge-set") return UnionMode::MergeSet;
  return std::nullopt;
}

std::string_view union_mode_name(UnionMode mode) { return mode == UnionMode::Drop ? "drop" : "merge-set"; }

namespace {

std::vector<std::string> as_labels(const Value& v) {
  if (v.is_set()) return v.set().labels();
  return {v.str()};
}

}  // namespace

GeneralizedRelation union_on(const GeneralizedRelation& g, std::string_view attribute, UnionMode mode) {
  std::size_t col = g.column(attribute);
  const Relation& r = g.relation;
  GeneralizedRelation out = g;
  std::string name = r.schema()[col].name;

  if (mode == UnionMode::Drop) {
    std::vector<std::string> keep;
    for (std::size_t c = 0; c < r.arity(); ++c) {
      if (c != col) keep.push_back(r.schema()[c].name);
    }
    out.relation = merge_identical(project(r, keep));
    auto erase_at = [col](auto& v) { v.erase(v.begin() + static_cast<std::ptrdiff_t>(col)); };
    erase_at(out.levels);
    erase_at(out.depths);
    erase_at(out.labels);
  } else {
    // Group on the other columns; the grouped column's cell stays in place.
    std::unordered_map<Row, std::size_t, RowHash> slot;
    std::vector<Row> rows;
    std::vector<std::int64_t> votes;
    for (std::size_t i = 0; i < r.size(); ++i) {
      Row key = r.rows()[i];
      key.erase(key.begin() + static_cast<std::ptrdiff_t>(col));
      auto [it, inserted] = slot.try_emplace(std::move(key), rows.size());
      const Value& cell = r.rows()[i][col];
      if (inserted) {
        Row row = r.rows()[i];
        if (!cell.is_any()) row[col] = Value(ValueSet(as_labels(cell)));
        rows.push_back(std::move(row));
        votes.push_back(r.vote(i));
      } else {
        Value& acc = rows[it->second][col];
        if (!acc.is_any()) acc = Value(acc.set().merged(ValueSet(as_labels(cell))));
        votes[it->second] += r.vote(i);
      }
    }
    Schema schema = r.schema();
    schema[col].kind = AttributeKind::Text;
    out.relation = canonical_order(Relation(std::move(schema), std::move(rows), std::move(votes)));
  }
  out.recheck_threshold();
  out.provenance.push_back({StepKind::Union, name + " (" + std::string(union_mode_name(mode)) + "): " +
                                                 std::to_string(r.size()) + " tuples -> " +
                                                 std::to_string(out.relation.size()) + " tuples"});
  return out;
}

}  // namespace aoi
