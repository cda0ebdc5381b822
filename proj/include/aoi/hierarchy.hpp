#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "aoi/value.hpp"

namespace aoi {

enum class TreeKind { Categorical, Numeric };

struct NumericRange {
  Decimal start;
  Decimal fin;
  std::string label;

  friend bool operator==(const NumericRange&, const NumericRange&) = default;
};

// Child/parent pair as stored in a two-column hierarchy table.
struct HierarchyEntry {
  std::string child;
  std::string parent;
  std::size_t line = 0;  // source line, 0 when built programmatically
};

// Balanced taxonomy for one attribute, without the ANY root.
//
// Levels are numbered from the leaves: level 0 holds the leaf concepts
// (categorical) or the raw numbers (numeric), level depth()-1 the most
// general concepts. Ascending from the top level yields Any. For a numeric
// tree the level-1 concepts are the labels of the numeric ranges.
class ConceptTree {
 public:
  static constexpr std::string_view kUnknownLeaf = "UNKNOWN";

  // Builds and validates a tree from child/parent edges in declaration order.
  // For numeric trees, `ranges` declares the level-1 labels and `edges`
  // stitches any higher levels.
  ConceptTree(std::string attribute, TreeKind kind, std::vector<HierarchyEntry> edges,
              std::vector<NumericRange> ranges = {}, std::vector<std::string> level_names = {},
              std::map<std::string, std::string> aliases = {}, bool explicit_any = false);

  const std::string& attribute() const { return attribute_; }
  TreeKind kind() const { return kind_; }
  bool is_numeric() const { return kind_ == TreeKind::Numeric; }
  std::size_t depth() const { return level_names_.size(); }
  std::size_t top_level() const { return depth() - 1; }

  const std::vector<std::string>& level_names() const { return level_names_; }
  // Concepts at a level in declaration order. Empty for numeric level 0.
  const std::vector<std::string>& concepts_at(std::size_t level) const { return levels_.at(level); }
  const std::vector<std::string>& leaves() const { return levels_.front(); }
  const std::vector<NumericRange>& ranges() const { return ranges_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }
  bool explicit_any() const { return explicit_any_; }
  std::optional<std::string> unknown_parent() const { return unknown_parent_; }

  // Number of leaves: categorical leaf count, or range count for numeric.
  std::size_t leaf_count() const;

  std::optional<std::size_t> level_of(std::string_view concept_label) const;
  // Parent concept; nullopt for top-level concepts (their parent is ANY).
  std::optional<std::string> parent_of(std::string_view concept_label) const;

  // Applies the alias map and, when enabled, the UNKNOWN fallback. Returns
  // the leaf label, or nullopt when the raw text is not a leaf.
  std::optional<std::string> resolve_leaf(std::string_view raw) const;

  // Label of the unique range containing x (bounds inclusive).
  std::optional<std::string> find_range(const Decimal& x) const;

  // Copy of this categorical tree with an UNKNOWN leaf under `parent`
  // (a level-1 concept); unlisted raw values then resolve to it.
  ConceptTree with_unknown_leaf(const std::string& parent) const;

  // Child/parent pairs including (top, ANY) rows.
  std::vector<HierarchyEntry> entries() const;

  friend bool operator==(const ConceptTree&, const ConceptTree&) = default;

 private:
  void build(std::vector<HierarchyEntry> edges);

  std::string attribute_;
  TreeKind kind_;
  std::vector<std::string> level_names_;
  std::vector<std::vector<std::string>> levels_;
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::size_t> level_;
  std::vector<NumericRange> ranges_;
  std::map<std::string, std::string> aliases_;
  bool explicit_any_ = false;
  std::optional<std::string> unknown_parent_;
};

// Parses the line-oriented hierarchy format:
//
//   tree <attribute> [numeric]
//   levels <leaf level name>, <next level name>, ...
//   <parent>: <child>, <child>, ...
//   <label>: <start> .. <fin>            (numeric trees)
//   alias "<raw>" = "<leaf>"
//   unknown <parent>                     (unlisted values map to UNKNOWN)
//   ANY: <top>, ...                      (accepted, not part of the tree)
//   # comment
//
// Labels containing spaces or punctuation are double-quoted. Errors carry
// the 1-based line number.
std::vector<ConceptTree> parse_hierarchy(std::string_view source);

// Inverse of parse_hierarchy for a single tree.
std::string serialize_tree(const ConceptTree& tree);

// Case-insensitive lookup by attribute name.
const ConceptTree* find_tree(const std::vector<ConceptTree>& trees, std::string_view attribute);

// One step up the tree from `from_level`. Level-0 numeric input must be a
// number and is classified into its range. Ascending from the top level
// yields Any. Throws Unmappable when v is not a concept at from_level.
Value ascend(const Value& v, const ConceptTree& tree, std::size_t from_level);

// Range label containing x. Throws Unmappable when no range covers x.
std::string classify_numeric(const Decimal& x, const ConceptTree& tree);

// True when ascending from v reaches target (reflexive). Values that are
// not in the tree never generalize. Throws Schema when target is not a
// concept of the tree.
bool generalizes_to(const Value& v, std::string_view target, const ConceptTree& tree);

}  // namespace aoi
