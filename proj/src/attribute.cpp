#include "uilog/attribute.hpp"

#include <algorithm>
#include <charconv>

#include "uilog/error.hpp"

namespace uilog {

AttributeMap::AttributeMap(std::initializer_list<Entry> entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

void AttributeMap::set(std::string key, AttributeValue value) {
  for (auto& entry : entries_) {
    if (entry.first == key) {
      entry.second = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

const AttributeValue* AttributeMap::find(std::string_view key) const {
  for (const auto& entry : entries_) {
    if (entry.first == key) return &entry.second;
  }
  return nullptr;
}

bool operator==(const AttributeMap& a, const AttributeMap& b) { return a.entries_ == b.entries_; }

std::size_t AttributeValue::depth() const {
  std::size_t child = 0;
  if (const auto* list = std::get_if<AttributeList>(&storage_)) {
    for (const auto& v : *list) child = std::max(child, v.depth());
    return child + 1;
  }
  if (const auto* map = std::get_if<AttributeMap>(&storage_)) {
    for (const auto& [k, v] : *map) child = std::max(child, v.depth());
    return child + 1;
  }
  return 0;
}

bool operator==(const AttributeValue& a, const AttributeValue& b) { return a.storage_ == b.storage_; }

std::string_view to_string(AttributeValue::Kind kind) {
  switch (kind) {
    case AttributeValue::Kind::Text: return "text";
    case AttributeValue::Kind::Integer: return "integer";
    case AttributeValue::Kind::Real: return "real";
    case AttributeValue::Kind::Boolean: return "boolean";
    case AttributeValue::Kind::Time: return "timestamp";
    case AttributeValue::Kind::List: return "list";
    case AttributeValue::Kind::Map: return "map";
  }
  return "unknown";
}

namespace {

std::string real_to_string(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

struct Renderer {
  std::string operator()(const std::string& v) const { return v; }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return real_to_string(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(Timestamp v) const { return format_iso8601(v); }
  std::string operator()(const AttributeList& list) const {
    std::string out = "[";
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) out += ", ";
      out += render(list[i]);
    }
    return out + "]";
  }
  std::string operator()(const AttributeMap& map) const {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : map) {
      if (!first) out += ", ";
      first = false;
      out += k + ": " + render(v);
    }
    return out + "}";
  }
};

}  // namespace

std::string render(const AttributeValue& value) { return std::visit(Renderer{}, value.storage()); }

AttributeSet::AttributeSet(std::initializer_list<std::pair<const std::string, AttributeValue>> init) {
  for (const auto& [k, v] : init) set(k, v);
}

void AttributeSet::set(std::string key, AttributeValue value) {
  if (key.empty()) throw Error(ErrorCode::EmptyValue, "attribute key must not be empty");
  values_.insert_or_assign(std::move(key), std::move(value));
}

const AttributeValue* AttributeSet::find(std::string_view key) const {
  auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

bool AttributeSet::erase(std::string_view key) {
  auto it = values_.find(key);
  if (it == values_.end()) return false;
  values_.erase(it);
  return true;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NoTarget: return "NoTarget";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::LevelViolation: return "LevelViolation";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyValue: return "EmptyValue";
    case ErrorCode::OutOfOrderTimestamp: return "OutOfOrderTimestamp";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::InvalidLog: return "InvalidLog";
    case ErrorCode::UnserializableValue: return "UnserializableValue";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::MissingConceptName: return "MissingConceptName";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NoUsableColumns: return "NoUsableColumns";
    case ErrorCode::InvalidMapping: return "InvalidMapping";
    case ErrorCode::BadTimestamp: return "BadTimestamp";
    case ErrorCode::MissingCaseAttribute: return "MissingCaseAttribute";
    case ErrorCode::MissingTimestamps: return "MissingTimestamps";
    case ErrorCode::InvalidNotion: return "InvalidNotion";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::InvalidRule: return "InvalidRule";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace uilog
