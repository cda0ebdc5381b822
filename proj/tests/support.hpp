#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aoi/generalized.hpp"
#include "aoi/task.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return AOI_DATA_DIR; }
inline std::filesystem::path golden_dir() { return AOI_GOLDEN_DIR; }
inline std::filesystem::path graduate_task_path() { return data_dir() / "graduate" / "graduate.task"; }

// A result tuple as plain strings plus its vote.
using Tuple = std::pair<std::vector<std::string>, long long>;

inline std::vector<Tuple> tuples_of(const aoi::Relation& r) {
  std::vector<Tuple> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::vector<std::string> cells;
    for (const auto& v : r.rows()[i]) cells.push_back(v.str());
    out.emplace_back(std::move(cells), r.vote(i));
  }
  return out;
}

inline std::vector<Tuple> tuples_of(const aoi::GeneralizedRelation& g) { return tuples_of(g.relation); }

inline std::vector<Tuple> sorted(std::vector<Tuple> t) {
  std::sort(t.begin(), t.end());
  return t;
}

inline std::vector<long long> votes_of(const aoi::GeneralizedRelation& g) {
  std::vector<long long> v;
  for (std::size_t i = 0; i < g.relation.size(); ++i) v.push_back(g.relation.vote(i));
  std::sort(v.begin(), v.end());
  return v;
}

inline long long vote_sum(const aoi::GeneralizedRelation& g) { return g.relation.total_votes(); }

struct Graduate {
  aoi::TaskFile task;
  aoi::TaskInputs inputs;
};

inline Graduate load_graduate() {
  Graduate g{aoi::load_task(graduate_task_path()), {}};
  g.inputs = aoi::load_inputs(g.task);
  return g;
}

inline aoi::ClassicTask graduate_classic(std::size_t threshold) {
  aoi::ClassicTask t;
  t.target_attribute = "Category";
  t.target_concept = "graduate";
  t.relation_threshold = threshold;
  return t;
}

inline aoi::StarTask graduate_star() {
  aoi::StarTask t;
  t.target_attribute = "Category";
  t.target_concept = "graduate";
  return t;
}

// Hand-written background knowledge for the graduate instance, kept apart
// from the hierarchy parser so results can be recomputed without it.
namespace oracle {

struct Student {
  std::string category, major, birthplace;
  double gpa;
};

inline const std::vector<Student>& students() {
  static const std::vector<Student> s = {
      {"M.A.", "History", "Vancouver", 3.5}, {"M.S.", "Physics", "Ottawa", 3.9},
      {"Ph.D.", "Math", "Bombay", 3.3},      {"Ph.D.", "Biology", "Shanghai", 3.4},
      {"Ph.D.", "Computing", "Victoria", 3.8}, {"M.S.", "Statistics", "Nanjing", 3.2},
  };
  return s;
}

inline const std::map<std::string, std::string>& study_of() {
  static const std::map<std::string, std::string> m = {
      {"Freshman", "undergraduate"}, {"Sophomore", "undergraduate"}, {"Junior", "undergraduate"},
      {"Senior", "undergraduate"},   {"M.S.", "graduate"},           {"M.A.", "graduate"},
      {"Ph.D.", "graduate"},         {"MS", "graduate"},             {"MA", "graduate"},
      {"PhD", "graduate"}};
  return m;
}

inline const std::map<std::string, std::string>& prog_of() {
  static const std::map<std::string, std::string> m = {
      {"Computing", "Science"}, {"Math", "Science"}, {"Biology", "Science"}, {"Chemistry", "Science"},
      {"Statistics", "Science"}, {"Physics", "Science"}, {"Music", "Art"}, {"History", "Art"},
      {"Literal Arts", "Art"}, {"Literature", "Art"}};
  return m;
}

inline const std::map<std::string, std::string>& city_of() {
  static const std::map<std::string, std::string> m = {
      {"Bombay", "India"},        {"Burnaby", "British Columbia"}, {"Calgary", "Alberta"},
      {"Edmonton", "Alberta"},    {"Nanjing", "China"},            {"Ottawa", "Ontario"},
      {"Richmond", "British Columbia"}, {"Shanghai", "China"},     {"Toronto", "Ontario"},
      {"Vancouver", "British Columbia"}, {"Victoria", "British Columbia"}};
  return m;
}

inline const std::map<std::string, std::string>& country_of() {
  static const std::map<std::string, std::string> m = {{"British Columbia", "Canada"},
                                                       {"Alberta", "Canada"},
                                                       {"Ontario", "Canada"},
                                                       {"India", "Foreign"},
                                                       {"China", "Foreign"}};
  return m;
}

inline std::string range_of(double gpa) {
  struct R {
    double lo, hi;
    const char* label;
  };
  static const R ranges[] = {{0.0, 1.99, "Poor"}, {2.0, 2.99, "Average"}, {3.0, 3.49, "Good"}, {3.5, 4.0, "Excellent"}};
  for (const auto& r : ranges)
    if (gpa >= r.lo - 1e-9 && gpa <= r.hi + 1e-9) return r.label;
  return "?";
}

inline std::string gpa_text(double gpa) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.1f", gpa);
  return buf;
}

// Value chains, leaf first, ending at ANY.
inline std::vector<std::vector<std::string>> chains(const Student& s) {
  const std::string& city = city_of().at(s.birthplace);
  return {{s.major, prog_of().at(s.major), "ANY"},
          {s.birthplace, city, country_of().at(city), "ANY"},
          {gpa_text(s.gpa), range_of(s.gpa), "ANY"}};
}

// Group-by over the chosen level of each attribute.
inline std::vector<Tuple> group(const std::vector<std::size_t>& levels) {
  std::map<std::vector<std::string>, long long> counts;
  for (const auto& s : students()) {
    if (study_of().at(s.category) != "graduate") continue;
    auto c = chains(s);
    std::vector<std::string> key;
    for (std::size_t k = 0; k < c.size(); ++k) key.push_back(c[k][levels[k]]);
    ++counts[key];
  }
  return {counts.begin(), counts.end()};
}

// Classic attribute-threshold control, one attribute at a time: the lowest
// level whose distinct-value count does not exceed the threshold.
inline std::vector<std::size_t> classic_levels(std::size_t threshold) {
  std::vector<std::size_t> levels;
  for (std::size_t k = 0; k < 3; ++k) {
    std::size_t level = 0;
    for (;; ++level) {
      std::vector<std::string> seen;
      bool last = false;
      for (const auto& s : students()) {
        auto c = chains(s)[k];
        last = level + 1 == c.size();
        if (std::find(seen.begin(), seen.end(), c[level]) == seen.end()) seen.push_back(c[level]);
      }
      if (seen.size() <= threshold || last) break;
    }
    levels.push_back(level);
  }
  return levels;
}

}  // namespace oracle
}  // namespace testing
