#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aoi/generalized.hpp"
#include "aoi/hierarchy.hpp"
#include "aoi/relation.hpp"

namespace aoi {

// Threshold-controlled induction task.
struct ClassicTask {
  std::string target_attribute;
  std::string target_concept;
  std::size_t relation_threshold = 1;
  // Distinct-value cap per attribute; defaults to relation_threshold.
  std::optional<std::size_t> attribute_threshold;
  // Per-attribute caps overriding attribute_threshold (case-insensitive keys).
  std::map<std::string, std::size_t> attribute_thresholds;
  // Empty means every non-target attribute.
  std::vector<std::string> learn_attributes;

  std::size_t threshold_for(const std::string& attribute) const;
};

// Selects the target class, removes the target attribute and attributes
// without a concept tree, ascends each remaining attribute uniformly until
// its distinct-value count is within its threshold (past the top it becomes
// ANY), and merges identical tuples. threshold_satisfied reports whether the
// merged row count is within relation_threshold; no further reduction is
// attempted.
GeneralizedRelation classic_generalize(const Relation& data, const std::vector<ConceptTree>& trees,
                                       const ClassicTask& task);

// Ascends one attribute by one level (top -> ANY) and merges.
GeneralizedRelation further_generalize(const GeneralizedRelation& g, std::string_view attribute,
                                       const std::vector<ConceptTree>& trees);

}  // namespace aoi
