#include "aoi/dimension.hpp"

#include <algorithm>

#include "aoi/error.hpp"
#include "aoi/relation.hpp"

namespace aoi {

DimensionTable::DimensionTable(const ConceptTree& tree)
    : attribute_(tree.attribute()),
      kind_(tree.kind()),
      depth_(tree.depth()),
      level_names_(tree.level_names()),
      aliases_(tree.aliases()) {
  if (kind_ == TreeKind::Numeric) {
    columns_ = {attribute_ + "_start", attribute_ + "_fin"};
    for (std::size_t level = 1; level < depth_; ++level) columns_.push_back(level_names_[level]);
    for (const auto& r : tree.ranges()) {
      std::vector<Value> row = {Value(r.start), Value(r.fin), Value(r.label)};
      for (auto p = tree.parent_of(r.label); p; p = tree.parent_of(*p)) row.emplace_back(*p);
      rows_.push_back(std::move(row));
    }
    return;
  }
  columns_ = level_names_;
  for (const auto& leaf : tree.leaves()) {
    std::vector<Value> row = {Value(leaf)};
    for (auto p = tree.parent_of(leaf); p; p = tree.parent_of(*p)) row.emplace_back(*p);
    leaf_index_.emplace(leaf, rows_.size());
    if (tree.unknown_parent() && leaf == ConceptTree::kUnknownLeaf) unknown_row_ = rows_.size();
    rows_.push_back(std::move(row));
  }
}

std::size_t DimensionTable::column_of_level(std::size_t level) const {
  if (level >= depth_ || (is_numeric() && level == 0))
    throw Error(ErrorKind::Schema, "level " + std::to_string(level) + " is out of range for dimension " +
                                       attribute_ + " (valid: " + (is_numeric() ? "1" : "0") + ".." +
                                       std::to_string(depth_ - 1) + ")");
  return is_numeric() ? level + 1 : level;
}

std::optional<std::size_t> DimensionTable::match(const Value& raw) const {
  if (is_numeric()) {
    if (!raw.is_number()) return std::nullopt;
    const Decimal& x = raw.number();
    auto it = std::upper_bound(rows_.begin(), rows_.end(), x, [](const Decimal& v, const std::vector<Value>& row) {
      return v < row[0].number();
    });
    if (it == rows_.begin()) return std::nullopt;
    --it;
    if (x <= (*it)[1].number()) return static_cast<std::size_t>(it - rows_.begin());
    return std::nullopt;
  }
  if (!raw.is_text()) return std::nullopt;
  std::string key = raw.text();
  if (auto a = aliases_.find(key); a != aliases_.end()) key = a->second;
  if (auto it = leaf_index_.find(key); it != leaf_index_.end()) return it->second;
  return unknown_row_;
}

std::optional<std::size_t> DimensionTable::level_of(const std::string& concept_label) const {
  for (std::size_t level = is_numeric() ? 1 : 0; level < depth_; ++level) {
    std::size_t col = column_of_level(level);
    for (const auto& row : rows_) {
      if (row[col].is_text() && row[col].text() == concept_label) return level;
    }
  }
  return std::nullopt;
}

DimensionTable build_dimension_table(const ConceptTree& tree) { return DimensionTable(tree); }

Value lookup(const DimensionTable& dim, const Value& raw, std::size_t level) {
  std::size_t col = dim.column_of_level(level);
  auto row = dim.match(raw);
  if (!row)
    throw Error(ErrorKind::Unmappable,
                "no row of dimension " + dim.attribute() + " matches '" + raw.str() + "'");
  return dim.rows()[*row][col];
}

std::size_t dimension_count(std::span<const DimensionTable> dims) { return dims.size(); }

const DimensionTable* find_dimension(std::span<const DimensionTable> dims, std::string_view attribute) {
  for (const auto& d : dims) {
    if (iequals(d.attribute(), attribute)) return &d;
  }
  return nullptr;
}

std::string export_delimited(const DimensionTable& dim, char delimiter) {
  std::string out;
  for (std::size_t c = 0; c < dim.columns().size(); ++c) {
    if (c) out += delimiter;
    out += quote_field(dim.columns()[c], delimiter);
  }
  out += '\n';
  for (const auto& row : dim.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += delimiter;
      out += quote_field(row[c].str(), delimiter);
    }
    out += '\n';
  }
  return out;
}

}  // namespace aoi
