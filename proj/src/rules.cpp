#include "aoi/rules.hpp"

#include "aoi/error.hpp"

namespace aoi {

std::string format_percent(std::int64_t percent_tenths) {
  if (percent_tenths == 1000) return "100";
  return std::to_string(percent_tenths / 10) + "." + std::to_string(percent_tenths % 10);
}

CharacteristicRule to_rule(const GeneralizedRelation& g, const std::string& target_name, std::int64_t total_votes) {
  const Relation& r = g.relation;
  if (total_votes <= 0) throw Error(ErrorKind::State, "total votes must be positive");
  if (total_votes < r.total_votes())
    throw Error(ErrorKind::State, "total votes " + std::to_string(total_votes) + " below relation vote sum " +
                                      std::to_string(r.total_votes()));

  CharacteristicRule rule;
  rule.target = target_name + "(x)";
  for (std::size_t i = 0; i < r.size(); ++i) {
    Disjunct d;
    d.vote = r.vote(i);
    // Half-up rounding of 1000 * vote / total to an integer number of tenths.
    d.percent_tenths = (2000 * d.vote + total_votes) / (2 * total_votes);
    for (std::size_t c = 0; c < r.arity(); ++c) {
      const Value& v = r.rows()[i][c];
      if (v.is_any()) continue;
      std::string name = c < g.labels.size() ? g.labels[c] : r.schema()[c].name;
      d.conjuncts.push_back({std::move(name), v.is_set() ? v.set().labels() : std::vector<std::string>{v.str()}});
    }
    rule.disjuncts.push_back(std::move(d));
  }
  return rule;
}

namespace {

std::string conjunct_text(const Conjunct& c, const std::string& eq_or) {
  std::string out;
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    if (i) out += eq_or;
    out += c.attribute + "=" + c.values[i];
  }
  return c.values.size() > 1 ? "(" + out + ")" : out;
}

}  // namespace

std::string CharacteristicRule::to_text() const {
  std::string out = target + " → ";
  if (disjuncts.empty()) return out + "false";
  for (std::size_t i = 0; i < disjuncts.size(); ++i) {
    const Disjunct& d = disjuncts[i];
    if (i) out += " ∨ ";
    if (d.conjuncts.empty()) {
      out += "true";
    } else {
      out += "(";
      for (std::size_t k = 0; k < d.conjuncts.size(); ++k) {
        if (k) out += " ∧ ";
        out += conjunct_text(d.conjuncts[k], " ∨ ");
      }
      out += ")";
    }
    out += " [" + std::to_string(d.vote) + ", " + format_percent(d.percent_tenths) + "%]";
  }
  return out;
}

std::string CharacteristicRule::to_records(char delimiter) const {
  std::string out;
  for (const auto& d : disjuncts) {
    if (d.conjuncts.empty()) out += "true";
    for (std::size_t k = 0; k < d.conjuncts.size(); ++k) {
      if (k) out += " AND ";
      std::string text = conjunct_text(d.conjuncts[k], " OR ");
      out += text;
    }
    out += delimiter;
    out += "vote=" + std::to_string(d.vote);
    out += delimiter;
    out += "percent=" + format_percent(d.percent_tenths) + "\n";
  }
  return out;
}

}  // namespace aoi
