#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "aoi/hierarchy.hpp"
#include "aoi/value.hpp"

namespace aoi {

// Tabular form of a concept tree, playing the role of a star-schema
// dimension keyed by the leaf value.
//
// Categorical: columns are the tree's level names from the leaves up, one
// row per leaf. Numeric: columns are <attr>_start, <attr>_fin, then the
// label levels from 1 up; one row per range, ascending by start.
class DimensionTable {
 public:
  explicit DimensionTable(const ConceptTree& tree);

  const std::string& attribute() const { return attribute_; }
  TreeKind kind() const { return kind_; }
  bool is_numeric() const { return kind_ == TreeKind::Numeric; }
  // Number of concept levels, counting the leaf/raw level.
  std::size_t depth() const { return depth_; }
  std::size_t top_level() const { return depth_ - 1; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Value>>& rows() const { return rows_; }
  // Column holding the concepts of a level (level >= 1 for numeric).
  std::size_t column_of_level(std::size_t level) const;
  const std::string& level_name(std::size_t level) const { return level_names_.at(level); }

  // Index of the row matching a raw fact value, or nullopt.
  std::optional<std::size_t> match(const Value& raw) const;

  // Level holding `concept_label`, searching the label columns.
  std::optional<std::size_t> level_of(const std::string& concept_label) const;

 private:
  std::string attribute_;
  TreeKind kind_;
  std::size_t depth_ = 0;
  std::vector<std::string> columns_;
  std::vector<std::string> level_names_;
  std::vector<std::vector<Value>> rows_;
  std::unordered_map<std::string, std::size_t> leaf_index_;
  std::map<std::string, std::string> aliases_;
  std::optional<std::size_t> unknown_row_;
};

DimensionTable build_dimension_table(const ConceptTree& tree);

// Concept at `level` for the row joined to `raw`: equality on the leaf
// column for categorical tables, start <= raw <= fin for numeric ones.
// Categorical level 0 returns the canonical leaf. Throws Unmappable when no
// row matches and Schema when the level is out of range.
Value lookup(const DimensionTable& dim, const Value& raw, std::size_t level);

std::size_t dimension_count(std::span<const DimensionTable> dims);

const DimensionTable* find_dimension(std::span<const DimensionTable> dims, std::string_view attribute);

// Header line plus one line per row.
std::string export_delimited(const DimensionTable& dim, char delimiter = ',');

}  // namespace aoi
