#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aoi {

// Exact decimal number: units / 10^scale. The scale is the number of
// fraction digits as written, so "0.0" and "1.99" render back unchanged.
// Equality and ordering compare numeric value only (1.5 == 1.50).
class Decimal {
 public:
  static constexpr int kMaxScale = 9;

  Decimal() = default;
  Decimal(std::int64_t units, int scale);

  static std::optional<Decimal> parse(std::string_view text);
  static Decimal from_int(std::int64_t v) { return Decimal(v, 0); }

  std::int64_t units() const { return units_; }
  int scale() const { return scale_; }
  double to_double() const;
  std::string str() const;

  friend bool operator==(const Decimal& a, const Decimal& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

  // Hash consistent with value equality.
  std::size_t hash() const;

 private:
  std::int64_t units_ = 0;
  int scale_ = 0;
};

// The most general concept.
struct Any {
  friend bool operator==(Any, Any) { return true; }
  friend std::strong_ordering operator<=>(Any, Any) { return std::strong_ordering::equal; }
};

inline constexpr std::string_view kAnyLabel = "ANY";

// Sorted, duplicate-free, nonempty set of concept labels produced by
// merge-set unioning.
class ValueSet {
 public:
  explicit ValueSet(std::vector<std::string> labels);

  const std::vector<std::string>& labels() const { return labels_; }
  ValueSet merged(const ValueSet& other) const;

  friend bool operator==(const ValueSet&, const ValueSet&) = default;
  friend std::strong_ordering operator<=>(const ValueSet& a, const ValueSet& b) {
    return a.labels_ <=> b.labels_;
  }

 private:
  std::vector<std::string> labels_;
};

class Value {
 public:
  using Storage = std::variant<std::string, Decimal, Any, ValueSet>;

  Value() : v_(std::string()) {}
  Value(std::string text) : v_(std::move(text)) {}
  Value(const char* text) : v_(std::string(text)) {}
  Value(Decimal d) : v_(d) {}
  Value(Any a) : v_(a) {}
  Value(ValueSet s) : v_(std::move(s)) {}

  bool is_text() const { return std::holds_alternative<std::string>(v_); }
  bool is_number() const { return std::holds_alternative<Decimal>(v_); }
  bool is_any() const { return std::holds_alternative<Any>(v_); }
  bool is_set() const { return std::holds_alternative<ValueSet>(v_); }

  const std::string& text() const { return std::get<std::string>(v_); }
  const Decimal& number() const { return std::get<Decimal>(v_); }
  const ValueSet& set() const { return std::get<ValueSet>(v_); }
  const Storage& storage() const { return v_; }

  // Human rendering: labels as-is, numbers as written, ANY, {a, b}.
  std::string str() const;

  friend bool operator==(const Value&, const Value&) = default;
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

  std::size_t hash() const;

 private:
  Storage v_;
};

using Row = std::vector<Value>;

struct RowHash {
  std::size_t operator()(const Row& row) const;
};

}  // namespace aoi
