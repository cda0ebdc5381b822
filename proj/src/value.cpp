#include "aoi/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

#include "aoi/error.hpp"

namespace aoi {

namespace {

constexpr std::int64_t kPow10[] = {1,         10,         100,         1000,       10000,
                                   100000,    1000000,    10000000,    100000000,  1000000000};

__int128 scaled(const Decimal& d, int scale) {
  return static_cast<__int128>(d.units()) * kPow10[scale - d.scale()];
}

void hash_combine(std::size_t& seed, std::size_t h) {
  seed ^= h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

Decimal::Decimal(std::int64_t units, int scale) : units_(units), scale_(scale) {
  if (scale < 0 || scale > kMaxScale) throw Error(ErrorKind::Parse, "decimal scale out of range");
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view() : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (dot != std::string_view::npos && frac.empty()) return std::nullopt;
  if (frac.size() > static_cast<std::size_t>(kMaxScale)) return std::nullopt;
  auto all_digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;

  std::int64_t units = 0;
  for (char c : whole) {
    if (__builtin_mul_overflow(units, 10, &units) || __builtin_add_overflow(units, c - '0', &units))
      return std::nullopt;
  }
  for (char c : frac) {
    if (__builtin_mul_overflow(units, 10, &units) || __builtin_add_overflow(units, c - '0', &units))
      return std::nullopt;
  }
  return Decimal(negative ? -units : units, static_cast<int>(frac.size()));
}

double Decimal::to_double() const {
  return static_cast<double>(units_) / static_cast<double>(kPow10[scale_]);
}

std::string Decimal::str() const {
  std::int64_t mag = units_ < 0 ? -units_ : units_;
  std::string digits = std::to_string(mag);
  if (scale_ > 0) {
    if (digits.size() <= static_cast<std::size_t>(scale_))
      digits.insert(0, static_cast<std::size_t>(scale_) - digits.size() + 1, '0');
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), ".");
  }
  return units_ < 0 ? "-" + digits : digits;
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  int scale = std::max(a.scale_, b.scale_);
  __int128 x = scaled(a, scale);
  __int128 y = scaled(b, scale);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t Decimal::hash() const {
  // Strip trailing zeros so equal values hash alike.
  std::int64_t u = units_;
  int s = scale_;
  while (s > 0 && u % 10 == 0) {
    u /= 10;
    --s;
  }
  std::size_t seed = std::hash<std::int64_t>{}(u);
  hash_combine(seed, static_cast<std::size_t>(s));
  return seed;
}

ValueSet::ValueSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  if (labels_.empty()) throw Error(ErrorKind::State, "value set must be nonempty");
  for (const auto& l : labels_) {
    if (l == kAnyLabel) throw Error(ErrorKind::State, "value set may not contain ANY");
  }
}

ValueSet ValueSet::merged(const ValueSet& other) const {
  std::vector<std::string> all = labels_;
  all.insert(all.end(), other.labels_.begin(), other.labels_.end());
  return ValueSet(std::move(all));
}

std::string Value::str() const {
  struct {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const Decimal& d) const { return d.str(); }
    std::string operator()(Any) const { return std::string(kAnyLabel); }
    std::string operator()(const ValueSet& s) const {
      std::string out = "{";
      for (std::size_t i = 0; i < s.labels().size(); ++i) {
        if (i) out += ", ";
        out += s.labels()[i];
      }
      return out + "}";
    }
  } visitor;
  return std::visit(visitor, v_);
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.v_.index() != b.v_.index()) return a.v_.index() <=> b.v_.index();
  return std::visit(
      [&](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v_);
        if constexpr (std::is_same_v<T, std::string>) {
          int c = x.compare(y);
          return c < 0 ? std::strong_ordering::less
                       : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
        } else {
          return x <=> y;
        }
      },
      a.v_);
}

std::size_t Value::hash() const {
  std::size_t seed = v_.index();
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::string>) {
          hash_combine(seed, std::hash<std::string>{}(x));
        } else if constexpr (std::is_same_v<T, Decimal>) {
          hash_combine(seed, x.hash());
        } else if constexpr (std::is_same_v<T, ValueSet>) {
          for (const auto& l : x.labels()) hash_combine(seed, std::hash<std::string>{}(l));
        }
      },
      v_);
  return seed;
}

std::size_t RowHash::operator()(const Row& row) const {
  std::size_t seed = row.size();
  for (const auto& v : row) hash_combine(seed, v.hash());
  return seed;
}

}  // namespace aoi
