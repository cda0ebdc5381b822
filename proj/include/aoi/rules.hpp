#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aoi/generalized.hpp"

namespace aoi {

struct Conjunct {
  std::string attribute;
  // One label, or several for a unioned value set.
  std::vector<std::string> values;
};

struct Disjunct {
  std::vector<Conjunct> conjuncts;
  std::int64_t vote = 0;
  // Percent in tenths, rounded half up: 333 means 33.3%.
  std::int64_t percent_tenths = 0;

  double percent() const { return static_cast<double>(percent_tenths) / 10.0; }
};

// Quantitative characteristic rule: target(x) -> D1 [v1, p1%] v D2 ...
struct CharacteristicRule {
  std::string target;
  std::vector<Disjunct> disjuncts;

  // Logical formula with the unicode connectives.
  std::string to_text() const;
  // One disjunct per line: the conjunction joined with AND (value sets as
  // "(A=x OR A=y)"), then vote= and percent= fields.
  std::string to_records(char delimiter = ',') const;
};

// One disjunct per row in relation order; ANY-valued attributes are
// omitted. Throws State when total_votes is below the relation's vote sum.
CharacteristicRule to_rule(const GeneralizedRelation& g, const std::string& target_name, std::int64_t total_votes);

// "50.0", "33.3", and "100" for the whole class.
std::string format_percent(std::int64_t percent_tenths);

}  // namespace aoi
