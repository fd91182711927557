#include "uilog/kv_config.hpp"

#include "uilog/error.hpp"

namespace uilog {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

const std::string* ConfigSection::find(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::vector<ConfigSection> parse_config(std::string_view text) {
  std::vector<ConfigSection> sections;
  sections.push_back(ConfigSection{"", 0, {}});
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::BadConfig, "line " + std::to_string(line_no) + ": unterminated section header");
      sections.push_back(ConfigSection{std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::BadConfig, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::BadConfig, "line " + std::to_string(line_no) + ": empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    sections.back().entries.emplace_back(std::string(key), std::string(value));
  }
  if (sections.front().entries.empty() && sections.size() > 1) sections.erase(sections.begin());
  return sections;
}

}  // namespace uilog
