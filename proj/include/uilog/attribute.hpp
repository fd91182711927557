#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "uilog/timestamp.hpp"

namespace uilog {

class AttributeValue;

/// Maximum list/map nesting accepted by the serializers.
inline constexpr std::size_t kMaxAttributeDepth = 32;

using AttributeList = std::vector<AttributeValue>;

/// Insertion-ordered map with unique text keys.
class AttributeMap {
 public:
  using Entry = std::pair<std::string, AttributeValue>;

  AttributeMap() = default;
  AttributeMap(std::initializer_list<Entry> entries);

  /// Inserts or overwrites; an overwritten key keeps its original position.
  void set(std::string key, AttributeValue value);
  const AttributeValue* find(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const AttributeMap&, const AttributeMap&);

 private:
  std::vector<Entry> entries_;
};

/// Tagged attribute payload: text, integer, real, boolean, timestamp, list or map.
class AttributeValue {
 public:
  using Storage =
      std::variant<std::string, std::int64_t, double, bool, Timestamp, AttributeList, AttributeMap>;

  enum class Kind { Text, Integer, Real, Boolean, Time, List, Map };

  AttributeValue() : storage_(std::string{}) {}
  AttributeValue(std::string v) : storage_(std::move(v)) {}
  AttributeValue(const char* v) : storage_(std::string(v)) {}
  AttributeValue(std::string_view v) : storage_(std::string(v)) {}
  AttributeValue(std::int64_t v) : storage_(v) {}
  AttributeValue(int v) : storage_(static_cast<std::int64_t>(v)) {}
  AttributeValue(double v) : storage_(v) {}
  AttributeValue(bool v) : storage_(v) {}
  AttributeValue(Timestamp v) : storage_(v) {}
  AttributeValue(AttributeList v) : storage_(std::move(v)) {}
  AttributeValue(AttributeMap v) : storage_(std::move(v)) {}

  Kind kind() const { return static_cast<Kind>(storage_.index()); }
  const Storage& storage() const { return storage_; }

  bool is_text() const { return kind() == Kind::Text; }
  bool is_list() const { return kind() == Kind::List; }
  bool is_map() const { return kind() == Kind::Map; }

  const std::string& as_text() const { return std::get<std::string>(storage_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(storage_); }
  double as_real() const { return std::get<double>(storage_); }
  bool as_boolean() const { return std::get<bool>(storage_); }
  Timestamp as_time() const { return std::get<Timestamp>(storage_); }
  const AttributeList& as_list() const { return std::get<AttributeList>(storage_); }
  const AttributeMap& as_map() const { return std::get<AttributeMap>(storage_); }

  /// 0 for scalars, 1 + max child depth for containers.
  std::size_t depth() const;

  friend bool operator==(const AttributeValue& a, const AttributeValue& b);

 private:
  Storage storage_;
};

std::string_view to_string(AttributeValue::Kind kind);

/// Human-readable rendering: scalars as plain text, containers in the
/// "{k: v, ...}" / "[v, ...]" notation. Used for diagnostics and case keys.
std::string render(const AttributeValue& value);

/// Extension attributes of a model component. Keys are unique and non-empty;
/// iteration order is lexicographic so serialization is stable.
class AttributeSet {
 public:
  AttributeSet() = default;
  AttributeSet(std::initializer_list<std::pair<const std::string, AttributeValue>> init);

  /// Throws Error(EmptyValue) for an empty key.
  void set(std::string key, AttributeValue value);
  const AttributeValue* find(std::string_view key) const;
  bool erase(std::string_view key);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;

 private:
  std::map<std::string, AttributeValue, std::less<>> values_;
};

}  // namespace uilog
