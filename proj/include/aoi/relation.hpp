#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/value.hpp"

namespace aoi {

enum class AttributeKind { Text, Numeric };

struct Attribute {
  std::string name;
  AttributeKind kind = AttributeKind::Text;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

using Schema = std::vector<Attribute>;

bool iequals(std::string_view a, std::string_view b);

// Case-insensitive attribute lookup.
std::optional<std::size_t> find_attribute(const Schema& schema, std::string_view name);

// Immutable table of typed tuples with an optional vote column kept apart
// from the schema. Rows without a vote column each count once.
class Relation {
 public:
  Relation() = default;
  // Validates arity, value kinds, unique attribute names and votes >= 1.
  Relation(Schema schema, std::vector<Row> rows,
           std::optional<std::vector<std::int64_t>> votes = std::nullopt);

  const Schema& schema() const { return schema_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t arity() const { return schema_.size(); }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  bool has_votes() const { return votes_.has_value(); }
  std::int64_t vote(std::size_t row) const { return votes_ ? (*votes_)[row] : 1; }
  std::int64_t total_votes() const;

  std::optional<std::size_t> find(std::string_view name) const { return find_attribute(schema_, name); }
  // Throws Schema error for unknown names.
  std::size_t index_of(std::string_view name) const;

  // True when votes are present and no two rows are identical.
  bool is_merged() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  Schema schema_;
  std::vector<Row> rows_;
  std::optional<std::vector<std::int64_t>> votes_;
};

// Builds a raw relation (no votes) from text records. Fields are trimmed;
// numeric attributes must parse as decimals. Errors name the 1-based data
// row and the column.
Relation load_relation(const std::vector<std::vector<std::string>>& records, const Schema& schema);

// Groups identical rows, summing votes. Output is in canonical order.
Relation merge_identical(const Relation& r);

// Keeps the named attributes in the given order. Votes are carried through
// unmerged.
Relation project(const Relation& r, const std::vector<std::string>& attributes);

// Descending vote, then lexicographic by values.
Relation canonical_order(const Relation& r);

// Splits one delimited line; double quotes protect delimiters, "" escapes a quote.
std::vector<std::string> split_delimited(std::string_view line, char delimiter);
std::string quote_field(std::string_view field, char delimiter);

// Reads a header line plus records. Header names must match the schema
// (case-insensitively, in order).
Relation read_delimited(std::istream& in, const Schema& schema, char delimiter = ',');

// Plain table rendering used by reports: header, one line per row, vote last.
std::string format_relation(const Relation& r, char delimiter);

}  // namespace aoi
