#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uilog/model.hpp"

namespace uilog {

// ---------------------------------------------------------------------------
// Delimited text

struct CsvDialect {
  char delimiter = ',';
  /// Delimiters inside an unquoted "{...}" or "[...]" cell do not split it,
  /// so rows like `A_Login, none, , login mask, {username: pren, password: dts123},`
  /// read as six cells.
  bool bracket_aware = true;
};

using CsvRow = std::vector<std::string>;

/// RFC 4180 style reader: quoted cells, doubled quotes, CRLF or LF line ends.
/// Unquoted cells are trimmed. Blank lines are skipped.
std::vector<CsvRow> read_csv(std::string_view text, const CsvDialect& dialect = {});
std::string write_csv(const std::vector<CsvRow>& rows, char delimiter = ',');

// ---------------------------------------------------------------------------
// Cell literals: "{k: v, k: v}" maps and "[v, v]" lists. Flat, values
// trimmed; a doubled ',' or ':' stands for the literal character.

std::optional<AttributeValue> parse_map_literal(std::string_view cell);
std::optional<AttributeValue> parse_list_literal(std::string_view cell);
/// Inverse of the literal parsers for flat text maps/lists; other values are rendered.
std::string format_cell(const AttributeValue& value);

// ---------------------------------------------------------------------------
// Mapping

enum class Field {
  ActivityName,
  ActionType,
  UIElement,
  UIGroupPath,
  Application,
  System,
  InputValue,
  CurrentState,
  Timestamp,
  User,
  Task,
  Trace,
};

inline constexpr std::array<Field, 12> kFields = {Field::ActivityName, Field::ActionType,  Field::UIElement,
                                                  Field::UIGroupPath,  Field::Application, Field::System,
                                                  Field::InputValue,   Field::CurrentState, Field::Timestamp,
                                                  Field::User,         Field::Task,         Field::Trace};

std::string_view to_string(Field field);
std::optional<Field> field_from_string(std::string_view name);

enum class ValueParser { Auto, Plain, MapLiteral, ListLiteral };
enum class ExtrasPolicy { Ignore, KeepAsAttributes };

std::string_view to_string(ValueParser parser);
std::optional<ValueParser> value_parser_from_string(std::string_view name);

/// Declarative description of how table columns become model fields.
struct ColumnMapping {
  std::map<Field, std::string> columns;
  std::string timestamp_format = "iso8601";
  /// Per source column; columns without an entry use Auto (literal when the
  /// cell starts with '{' or '[', plain text otherwise).
  std::map<std::string, ValueParser, std::less<>> value_parsers;
  ExtrasPolicy extras = ExtrasPolicy::KeepAsAttributes;
  NamingScheme naming = NamingScheme::abbreviated();
  CsvDialect dialect;

  const std::string* column(Field f) const;
  /// Throws Error(InvalidMapping) when activity names cannot be established.
  void check() const;
};

/// Matches header names against a built-in synonym table (case-insensitive,
/// ignoring spaces, '_', '-', ':' and '.'). Throws Error(NoUsableColumns).
ColumnMapping infer_mapping(const std::vector<std::string>& header);

struct SkippedRow {
  std::size_t row = 0;  // 1-based data row number (header excluded)
  std::string reason;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t events_created = 0;
  std::vector<SkippedRow> rows_skipped;
  std::size_t synthesized_names = 0;
  std::size_t truncated_timestamps = 0;
  std::vector<std::string> warnings;
};

std::string render_json(const IngestReport& report);

struct IngestResult {
  UILog log;
  IngestReport report;
};

/// One event per usable data row, in row order. Throws Error(MissingColumn)
/// when a mapped column is absent from the header.
IngestResult ingest(std::string_view text, const ColumnMapping& mapping);

/// Reads the header with the mapping's dialect, infers a mapping, ingests.
IngestResult ingest(std::string_view text);

/// Inverse writer: one row per event (trace order for traced logs) with the
/// given column names; extension attributes become extra columns.
std::string write_tabular(const UILog& log, const ColumnMapping& mapping);
/// Column names used by write_tabular when no mapping is supplied.
ColumnMapping default_output_mapping(const UILog& log);

/// Loads a mapping from the key-value text format:
///   activity_name = Activity
///   timestamp_format = %Y-%m-%d %H:%M:%S
///   parser.Input value = auto
///   extras = keep | ignore
///   naming = abbreviated | concatenation
///   naming.separator = " "
///   naming.rewrite.left click = click
///   delimiter = , | ; | tab
ColumnMapping load_mapping(std::string_view text);

}  // namespace uilog
