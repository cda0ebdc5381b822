#include "aoi/relation.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <unordered_map>

#include "aoi/error.hpp"

namespace aoi {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool value_fits(const Value& v, AttributeKind kind) {
  if (kind == AttributeKind::Numeric) return v.is_number();
  return !v.is_number();
}

}  // namespace

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::optional<std::size_t> find_attribute(const Schema& schema, std::string_view name) {
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (iequals(schema[i].name, name)) return i;
  }
  return std::nullopt;
}

Relation::Relation(Schema schema, std::vector<Row> rows, std::optional<std::vector<std::int64_t>> votes)
    : schema_(std::move(schema)), rows_(std::move(rows)), votes_(std::move(votes)) {
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (iequals(schema_[i].name, schema_[j].name))
        throw Error(ErrorKind::Schema, "duplicate attribute '" + schema_[i].name + "'");
    }
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != schema_.size())
      throw Error(ErrorKind::Schema, "row " + std::to_string(r + 1) + " has " +
                                         std::to_string(rows_[r].size()) + " values, expected " +
                                         std::to_string(schema_.size()));
    for (std::size_t c = 0; c < schema_.size(); ++c) {
      if (!value_fits(rows_[r][c], schema_[c].kind))
        throw Error(ErrorKind::Schema, "row " + std::to_string(r + 1) + ", column " + schema_[c].name +
                                           ": value kind does not match attribute");
    }
  }
  if (votes_) {
    if (votes_->size() != rows_.size()) throw Error(ErrorKind::Schema, "vote column length mismatch");
    for (auto v : *votes_) {
      if (v < 1) throw Error(ErrorKind::Schema, "votes must be positive");
    }
  }
}

std::int64_t Relation::total_votes() const {
  if (!votes_) return static_cast<std::int64_t>(rows_.size());
  return std::accumulate(votes_->begin(), votes_->end(), std::int64_t{0});
}

std::size_t Relation::index_of(std::string_view name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorKind::Schema, "unknown attribute '" + std::string(name) + "'");
  return *i;
}

bool Relation::is_merged() const {
  if (!votes_) return false;
  std::vector<const Row*> sorted;
  sorted.reserve(rows_.size());
  for (const auto& r : rows_) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const Row* a, const Row* b) { return *a < *b; });
  return std::adjacent_find(sorted.begin(), sorted.end(),
                            [](const Row* a, const Row* b) { return *a == *b; }) == sorted.end();
}

Relation load_relation(const std::vector<std::vector<std::string>>& records, const Schema& schema) {
  std::vector<Row> rows;
  rows.reserve(records.size());
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.size() != schema.size())
      throw Error(ErrorKind::Parse, "row " + std::to_string(r + 1) + ": expected " +
                                        std::to_string(schema.size()) + " fields, found " +
                                        std::to_string(rec.size()));
    Row row;
    row.reserve(rec.size());
    for (std::size_t c = 0; c < rec.size(); ++c) {
      std::string_view field = trim(rec[c]);
      if (schema[c].kind == AttributeKind::Numeric) {
        auto d = Decimal::parse(field);
        if (!d)
          throw Error(ErrorKind::Parse, "row " + std::to_string(r + 1) + ", column " + schema[c].name +
                                            ": '" + std::string(field) + "' is not a number");
        row.emplace_back(*d);
      } else {
        row.emplace_back(std::string(field));
      }
    }
    rows.push_back(std::move(row));
  }
  return Relation(schema, std::move(rows));
}

Relation canonical_order(const Relation& r) {
  std::vector<std::size_t> order(r.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (r.vote(a) != r.vote(b)) return r.vote(a) > r.vote(b);
    return r.rows()[a] < r.rows()[b];
  });
  std::vector<Row> rows;
  std::vector<std::int64_t> votes;
  rows.reserve(order.size());
  votes.reserve(order.size());
  for (auto i : order) {
    rows.push_back(r.rows()[i]);
    votes.push_back(r.vote(i));
  }
  return Relation(r.schema(), std::move(rows), std::move(votes));
}

Relation merge_identical(const Relation& r) {
  std::unordered_map<Row, std::size_t, RowHash> slot;
  std::vector<Row> rows;
  std::vector<std::int64_t> votes;
  for (std::size_t i = 0; i < r.size(); ++i) {
    auto [it, inserted] = slot.try_emplace(r.rows()[i], rows.size());
    if (inserted) {
      rows.push_back(r.rows()[i]);
      votes.push_back(r.vote(i));
    } else {
      votes[it->second] += r.vote(i);
    }
  }
  return canonical_order(Relation(r.schema(), std::move(rows), std::move(votes)));
}

Relation project(const Relation& r, const std::vector<std::string>& attributes) {
  std::vector<std::size_t> idx;
  Schema schema;
  for (const auto& name : attributes) {
    idx.push_back(r.index_of(name));
    schema.push_back(r.schema()[idx.back()]);
  }
  std::vector<Row> rows;
  rows.reserve(r.size());
  for (const auto& src : r.rows()) {
    Row row;
    row.reserve(idx.size());
    for (auto i : idx) row.push_back(src[i]);
    rows.push_back(std::move(row));
  }
  std::optional<std::vector<std::int64_t>> votes;
  if (r.has_votes()) {
    votes.emplace();
    for (std::size_t i = 0; i < r.size(); ++i) votes->push_back(r.vote(i));
  }
  return Relation(std::move(schema), std::move(rows), std::move(votes));
}

std::vector<std::string> split_delimited(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw Error(ErrorKind::Parse, "unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

std::string quote_field(std::string_view field, char delimiter) {
  if (field.find(delimiter) == std::string_view::npos && field.find('"') == std::string_view::npos)
    return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Relation read_delimited(std::istream& in, const Schema& schema, char delimiter) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::vector<std::string>> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    try {
      fields = split_delimited(line, delimiter);
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!have_header) {
      have_header = true;
      if (fields.size() != schema.size())
        throw Error(ErrorKind::Schema, "header has " + std::to_string(fields.size()) +
                                           " columns, schema declares " + std::to_string(schema.size()));
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (!iequals(trim(fields[c]), schema[c].name))
          throw Error(ErrorKind::Schema, "header column " + std::to_string(c + 1) + " is '" +
                                             std::string(trim(fields[c])) + "', schema declares '" +
                                             schema[c].name + "'");
      }
      continue;
    }
    records.push_back(std::move(fields));
  }
  if (!have_header) throw Error(ErrorKind::Parse, "data file has no header line");
  return load_relation(records, schema);
}

std::string format_relation(const Relation& r, char delimiter) {
  std::string out;
  for (std::size_t c = 0; c < r.arity(); ++c) {
    if (c) out += delimiter;
    out += quote_field(r.schema()[c].name, delimiter);
  }
  if (r.arity()) out += delimiter;
  out += "vote\n";
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (const auto& v : r.rows()[i]) {
      out += quote_field(v.str(), delimiter);
      out += delimiter;
    }
    out += std::to_string(r.vote(i));
    out += '\n';
  }
  return out;
}

}  // namespace aoi
