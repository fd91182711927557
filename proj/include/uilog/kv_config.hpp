#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uilog {

/// One `[name]` block of a key-value file. Entries before the first header
/// land in a section with an empty name.
struct ConfigSection {
  std::string name;
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(std::string_view key) const;
};

/// Parses `key = value` lines with `#` comments and optional `[section]`
/// headers (which may repeat). Values may be double-quoted to keep
/// surrounding blanks. Throws Error(BadConfig) with the line number.
std::vector<ConfigSection> parse_config(std::string_view text);

}  // namespace uilog
