#include <set>

#include "uilog/tabular.hpp"

namespace uilog {

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (is_blank(s.front()) || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (is_blank(s.back()) || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<CsvRow> read_csv(std::string_view text, const CsvDialect& dialect) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<CsvRow> rows;
  CsvRow row;
  std::string cell;
  bool quoted_cell = false;
  bool in_quotes = false;
  int depth = 0;

  auto end_cell = [&] {
    row.push_back(quoted_cell ? cell : std::string(trim(cell)));
    cell.clear();
    quoted_cell = false;
    depth = 0;
  };
  auto end_row = [&] {
    end_cell();
    bool blank = row.size() == 1 && row.front().empty();
    if (!blank) rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    if (c == '"' && !quoted_cell && trim(cell).empty()) {
      cell.clear();
      quoted_cell = true;
      in_quotes = true;
    } else if (quoted_cell && c != dialect.delimiter && c != '\n') {
      // Text after a closing quote is ignored apart from separators.
    } else if (c == '\n') {
      end_row();
    } else if (c == dialect.delimiter && depth == 0) {
      end_cell();
    } else {
      if (dialect.bracket_aware && !quoted_cell) {
        if (c == '{' || c == '[') {
          if (depth > 0 || trim(cell).empty()) ++depth;
        } else if ((c == '}' || c == ']') && depth > 0) {
          --depth;
        }
      }
      cell += c;
    }
  }
  if (!cell.empty() || !row.empty() || quoted_cell) end_row();
  return rows;
}

std::string write_csv(const std::vector<CsvRow>& rows, char delimiter) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += delimiter;
      const auto& v = row[i];
      bool quote = v.find_first_of(std::string{delimiter, '"', '\n', '\r'}) != std::string::npos ||
                   (!v.empty() && (is_blank(v.front()) || is_blank(v.back())));
      if (!quote) {
        out += v;
        continue;
      }
      out += '"';
      for (char c : v) {
        if (c == '"') out += '"';
        out += c;
      }
      out += '"';
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Splits on single `sep`; a doubled `sep` is a literal character.
std::vector<std::string> split_escaped(std::string_view body, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == sep) {
      if (i + 1 < body.size() && body[i + 1] == sep) {
        cur += sep;
        ++i;
        continue;
      }
      parts.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    cur += body[i];
  }
  parts.push_back(std::move(cur));
  return parts;
}

std::optional<std::string_view> literal_body(std::string_view cell, char open, char close) {
  cell = trim(cell);
  if (cell.size() < 2 || cell.front() != open || cell.back() != close) return std::nullopt;
  return cell.substr(1, cell.size() - 2);
}

std::string double_char(std::string_view s, char c) {
  std::string out;
  for (char x : s) {
    if (x == c) out += c;
    out += x;
  }
  return out;
}

}  // namespace

std::optional<AttributeValue> parse_list_literal(std::string_view cell) {
  auto body = literal_body(cell, '[', ']');
  if (!body) return std::nullopt;
  AttributeList items;
  if (trim(*body).empty()) return AttributeValue(std::move(items));
  for (auto& part : split_escaped(*body, ',')) items.emplace_back(std::string(trim(part)));
  return AttributeValue(std::move(items));
}

std::optional<AttributeValue> parse_map_literal(std::string_view cell) {
  auto body = literal_body(cell, '{', '}');
  if (!body) return std::nullopt;
  AttributeMap map;
  if (trim(*body).empty()) return AttributeValue(std::move(map));
  for (const auto& entry : split_escaped(*body, ',')) {
    // The key ends at the first single ':'; "::" inside the key is a literal colon.
    std::string key;
    std::size_t i = 0;
    bool found = false;
    for (; i < entry.size(); ++i) {
      if (entry[i] == ':') {
        if (i + 1 < entry.size() && entry[i + 1] == ':') {
          key += ':';
          ++i;
          continue;
        }
        found = true;
        break;
      }
      key += entry[i];
    }
    if (!found) return std::nullopt;
    std::string k(trim(key));
    if (k.empty() || map.contains(k)) return std::nullopt;
    map.set(std::move(k), AttributeValue(std::string(trim(std::string_view(entry).substr(i + 1)))));
  }
  return AttributeValue(std::move(map));
}

std::string format_cell(const AttributeValue& value) {
  auto flat_text = [](const AttributeValue& v) { return v.is_text(); };
  if (value.is_list()) {
    const auto& list = value.as_list();
    bool flat = true;
    for (const auto& v : list) flat = flat && flat_text(v);
    if (flat) {
      std::string out = "[";
      for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) out += ", ";
        out += double_char(list[i].as_text(), ',');
      }
      return out + "]";
    }
  }
  if (value.is_map()) {
    bool flat = true;
    for (const auto& [k, v] : value.as_map()) flat = flat && flat_text(v);
    if (flat) {
      std::string out = "{";
      bool first = true;
      for (const auto& [k, v] : value.as_map()) {
        if (!first) out += ", ";
        first = false;
        out += double_char(double_char(k, ':'), ',') + ": " + double_char(v.as_text(), ',');
      }
      return out + "}";
    }
  }
  return render(value);
}

}  // namespace uilog
