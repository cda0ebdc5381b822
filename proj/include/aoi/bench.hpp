#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/hierarchy.hpp"
#include "aoi/relation.hpp"

namespace aoi {

// Benchmark configuration, read from a line-oriented file:
//
//   rows 1000, 10000
//   depth 3
//   fanout 2, 3, 2          (top concepts, then children per node per level)
//   dimensions 3
//   numeric-dimensions 1    (the last N dimensions are numeric)
//   repetitions 5
//   seed 42
//   sweep 2, 4, 8           (dimension counts for the join-cost sweep)
//   sweep-rows 10000
//   instance graduate.task  (optional task file timed as-is)
//   parallel no
struct BenchConfig {
  std::vector<std::size_t> rows = {10000};
  std::size_t depth = 2;
  std::vector<std::size_t> fanout = {2, 5};
  std::size_t dimensions = 3;
  std::size_t numeric_dimensions = 0;
  std::size_t repetitions = 5;
  std::uint64_t seed = 42;
  std::vector<std::size_t> sweep;
  std::size_t sweep_rows = 10000;
  std::optional<std::filesystem::path> instance_task;
  bool parallel = false;
};

BenchConfig parse_bench(std::string_view text, const std::filesystem::path& base_dir = {});
// Throws Parse for non-positive counts or a fanout that does not match depth.
void validate_bench(const BenchConfig& cfg);

inline constexpr std::string_view kClassAttribute = "Class";
inline constexpr std::string_view kTargetClass = "positive";

// Generated fact table plus trees. The fact schema is Class followed by
// D0..D{n-1}; Class has the two-level tree positive{c0,c1} / negative{c2,c3}.
struct SyntheticInstance {
  Relation facts;
  std::vector<ConceptTree> trees;
};

// Balanced trees of the configured depth/fanout; rows drawn uniformly over
// leaves (numeric dimensions: over integer points of the ranges) from a
// generator seeded with `seed`.
SyntheticInstance generate_synthetic(const BenchConfig& cfg, std::size_t rows, std::size_t dimensions,
                                     std::uint64_t seed);
SyntheticInstance generate_synthetic(const BenchConfig& cfg);

// A single synthetic tree; exposed for tests.
ConceptTree synthetic_tree(const std::string& attribute, const std::vector<std::size_t>& fanout, bool numeric);

struct BenchRow {
  std::string label;
  std::size_t rows = 0;
  std::size_t dimensions = 0;
  double classic_ms = 0;
  double star_ms = 0;
  bool identical = false;
  std::size_t classic_tuples = 0;
  std::size_t star_tuples = 0;
};

struct BenchReport {
  std::optional<BenchRow> instance;
  std::vector<BenchRow> synthetic;
  std::vector<BenchRow> sweep;
  std::string rendered;
};

// Times both paths (median over repetitions) per instance. The classic
// path runs with per-attribute thresholds equal to each tree's top-level
// concept count.
BenchReport run_bench(const BenchConfig& cfg);

}  // namespace aoi
