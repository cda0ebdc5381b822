#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/relation.hpp"

namespace aoi {

enum class StepKind { Select, Remove, Ascend, Merge, Group, Further, Union };

std::string_view step_name(StepKind kind);

struct ProvenanceStep {
  StepKind kind;
  std::string detail;

  friend bool operator==(const ProvenanceStep&, const ProvenanceStep&) = default;
};

// Merged relation with per-column generalization state. A column's level
// equals its tree depth once it has been ascended to ANY.
struct GeneralizedRelation {
  Relation relation;
  std::vector<std::size_t> levels;
  std::vector<std::size_t> depths;
  // Names used for the column in rules: the level name for categorical
  // concepts above the leaves, otherwise the attribute name.
  std::vector<std::string> labels;
  std::optional<std::size_t> relation_threshold;
  bool threshold_satisfied = true;
  std::int64_t target_count = 0;
  std::vector<ProvenanceStep> provenance;

  bool contains_any() const;
  std::size_t count_steps(StepKind kind) const;
  std::size_t column(std::string_view attribute) const;
  void recheck_threshold();
};

enum class UnionMode { Drop, MergeSet };

std::optional<UnionMode> parse_union_mode(std::string_view text);
std::string_view union_mode_name(UnionMode mode);

// Merges tuples along one attribute. Drop projects the attribute away and
// merges; MergeSet merges rows that agree on every other attribute and
// collects the attribute's values into a set. Votes are summed.
GeneralizedRelation union_on(const GeneralizedRelation& g, std::string_view attribute, UnionMode mode);

}  // namespace aoi
