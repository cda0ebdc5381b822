#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aoi/dimension.hpp"
#include "aoi/generalized.hpp"
#include "aoi/relation.hpp"

namespace aoi {

// Star-schema induction task: the target is a predicate on one of the
// target dimension's label columns; every other dimension is grouped at its
// selected level (default: the highest).
struct StarTask {
  std::string target_attribute;
  std::string target_concept;
  // Inferred from the dimension when absent.
  std::optional<std::size_t> target_level;
  // attribute -> level, case-insensitive keys.
  std::map<std::string, std::size_t> level_selection;
  // Empty means every fact attribute that has a dimension, minus the target.
  std::vector<std::string> learn_attributes;
  // Keep the target attribute in the output at this level.
  std::optional<std::size_t> retain_target_level;

  std::optional<std::size_t> level_for(const std::string& attribute) const;
};

// Joins each fact row to its dimensions, keeps rows whose target dimension
// cell equals the target concept, maps learn attributes to their selected
// levels and groups identical mapped tuples (vote = group size).
GeneralizedRelation star_generalize(const Relation& fact, std::span<const DimensionTable> dims,
                                    const StarTask& task);

// Recomputes from the facts with one attribute moved to a lower (or equal)
// level.
GeneralizedRelation drill_down(const Relation& fact, std::span<const DimensionTable> dims, const StarTask& task,
                               std::string_view attribute, std::size_t new_level);

// The equivalent join/group-by statement, for inspection.
std::string emit_sql(const Schema& fact_schema, std::span<const DimensionTable> dims, const StarTask& task,
                     const std::string& fact_table = "student");

}  // namespace aoi
