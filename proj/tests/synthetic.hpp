#pragma once

#include <map>
#include <random>
#include <set>

#include "aoi/bench.hpp"
#include "aoi/classic.hpp"
#include "aoi/dimension.hpp"
#include "aoi/star.hpp"
#include "support.hpp"

namespace testing {

using namespace aoi;

struct Instance {
  SyntheticInstance data;
  std::vector<DimensionTable> dims;
  ClassicTask classic;
  StarTask star;
};

inline BenchConfig shape_for(std::mt19937& rng) {
  BenchConfig cfg;
  cfg.depth = 2 + rng() % 2;
  cfg.fanout = cfg.depth == 2 ? std::vector<std::size_t>{2 + rng() % 2, 3 + rng() % 3}
                              : std::vector<std::size_t>{2, 2 + rng() % 2, 2};
  cfg.dimensions = 3;
  cfg.numeric_dimensions = rng() % 2;
  return cfg;
}

inline Instance make_instance(std::uint64_t seed) {
  std::mt19937 rng(static_cast<unsigned>(seed));
  BenchConfig cfg = shape_for(rng);
  const std::size_t row_choices[] = {300, 1000, 3000, 10000};
  std::size_t rows = row_choices[rng() % 4];
  Instance inst{generate_synthetic(cfg, rows, cfg.dimensions, seed), {}, {}, {}};
  for (const auto& t : inst.data.trees) inst.dims.push_back(build_dimension_table(t));
  inst.classic.target_attribute = std::string(kClassAttribute);
  inst.classic.target_concept = std::string(kTargetClass);
  inst.classic.relation_threshold = 1;
  for (const auto& t : inst.data.trees) {
    if (t.attribute() == kClassAttribute) continue;
    std::size_t tops = t.concepts_at(t.top_level()).size();
    inst.classic.attribute_thresholds[t.attribute()] = tops;
    inst.classic.relation_threshold *= tops;
  }
  inst.star.target_attribute = inst.classic.target_attribute;
  inst.star.target_concept = inst.classic.target_concept;
  return inst;
}

// Chain of concepts for a raw value, bottom labeled level first, found by
// scanning ranges and following parent links.
inline std::vector<std::string> chain_of(const Value& raw, const ConceptTree& t) {
  std::string label;
  if (t.is_numeric()) {
    for (const auto& r : t.ranges())
      if (!(raw.number() < r.start) && !(r.fin < raw.number())) label = r.label;
  } else {
    label = raw.text();
  }
  std::vector<std::string> chain = {label};
  while (auto p = t.parent_of(chain.back())) chain.push_back(*p);
  return chain;
}

inline std::vector<Tuple> star_oracle(const Instance& inst) {
  std::map<std::vector<std::string>, long long> counts;
  const auto& schema = inst.data.facts.schema();
  for (const auto& row : inst.data.facts.rows()) {
    if (chain_of(row[0], inst.data.trees[0]).back() != kTargetClass) continue;
    std::vector<std::string> key;
    for (std::size_t k = 1; k < schema.size(); ++k) key.push_back(chain_of(row[k], inst.data.trees[k]).back());
    ++counts[key];
  }
  return {counts.begin(), counts.end()};
}

// Every level below the top shows more distinct values than the top count,
// so threshold control cannot stop early.
inline bool precondition_holds(const Instance& inst) {
  const auto& facts = inst.data.facts;
  for (std::size_t k = 1; k < facts.arity(); ++k) {
    const ConceptTree& t = inst.data.trees[k];
    std::size_t tops = t.concepts_at(t.top_level()).size();
    std::vector<std::set<std::string>> seen(t.depth());
    for (const auto& row : facts.rows()) {
      if (chain_of(row[0], inst.data.trees[0]).back() != kTargetClass) continue;
      auto chain = chain_of(row[k], t);
      std::size_t base = t.is_numeric() ? 1 : 0;
      if (t.is_numeric()) seen[0].insert(row[k].str());
      for (std::size_t i = 0; i < chain.size(); ++i) seen[base + i].insert(chain[i]);
    }
    for (std::size_t level = 0; level < t.top_level(); ++level)
      if (seen[level].size() <= tops) return false;
  }
  return true;
}

}  // namespace testing
