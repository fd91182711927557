#include "uilog/tabular.hpp"

#include <algorithm>
#include <cctype>
#include <json.hpp>
#include <set>
#include <unordered_map>

#include "uilog/error.hpp"
#include "uilog/kv_config.hpp"
#include "uilog/xes.hpp"

namespace uilog {

std::string_view to_string(Field field) {
  switch (field) {
    case Field::ActivityName: return "activity_name";
    case Field::ActionType: return "action_type";
    case Field::UIElement: return "ui_element";
    case Field::UIGroupPath: return "ui_group_path";
    case Field::Application: return "application";
    case Field::System: return "system";
    case Field::InputValue: return "input_value";
    case Field::CurrentState: return "current_state";
    case Field::Timestamp: return "timestamp";
    case Field::User: return "user";
    case Field::Task: return "task";
    case Field::Trace: return "trace";
  }
  return "unknown";
}

std::optional<Field> field_from_string(std::string_view name) {
  for (Field f : kFields) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view to_string(ValueParser parser) {
  switch (parser) {
    case ValueParser::Auto: return "auto";
    case ValueParser::Plain: return "plain";
    case ValueParser::MapLiteral: return "map-literal";
    case ValueParser::ListLiteral: return "list-literal";
  }
  return "unknown";
}

std::optional<ValueParser> value_parser_from_string(std::string_view name) {
  for (auto p : {ValueParser::Auto, ValueParser::Plain, ValueParser::MapLiteral, ValueParser::ListLiteral}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

const std::string* ColumnMapping::column(Field f) const {
  auto it = columns.find(f);
  return it == columns.end() ? nullptr : &it->second;
}

void ColumnMapping::check() const {
  if (column(Field::ActivityName)) return;
  bool has_target = column(Field::UIElement) || column(Field::UIGroupPath) || column(Field::Application) ||
                    column(Field::System);
  if (column(Field::ActionType) && has_target) return;
  throw Error(ErrorCode::InvalidMapping,
              "map an activity column, or an action type column plus at least one UI hierarchy column");
}

// ---------------------------------------------------------------------------

namespace {

std::string normalize_header(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == ' ' || c == '_' || c == '-' || c == ':' || c == '.' || c == '\t') continue;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

const std::unordered_map<std::string, Field>& synonyms() {
  static const std::unordered_map<std::string, Field> table = [] {
    std::unordered_map<std::string, Field> t;
    auto add = [&](Field f, std::initializer_list<const char*> names) {
      for (const char* n : names) t.emplace(normalize_header(n), f);
    };
    add(Field::ActivityName, {"activity", "activity name", "activity_name", "concept:name", "event name", "label"});
    add(Field::ActionType, {"action type", "action_type", "action", "event type", "interaction type", "uilog:action-type"});
    add(Field::UIElement, {"ui element", "ui_element", "element", "target", "target element", "widget", "control",
                           "uilog:ui-element"});
    add(Field::UIGroupPath, {"ui group", "ui_group", "group", "ui group path", "ui_group_path", "group path",
                             "uilog:ui-group-path"});
    add(Field::Application, {"application", "app", "app name", "application name", "program", "uilog:application"});
    add(Field::System, {"system", "host", "hostname", "machine", "uilog:system"});
    add(Field::InputValue, {"input value", "input_value", "input", "value", "uilog:input-value"});
    add(Field::CurrentState, {"current state", "current_state", "state", "element state", "uilog:ui-element-state"});
    add(Field::Timestamp, {"timestamp", "time", "time:timestamp", "datetime", "date time"});
    add(Field::User, {"user", "user id", "userid", "username", "uilog:user"});
    add(Field::Task, {"task", "task id", "taskid", "task name", "routine", "uilog:task"});
    add(Field::Trace, {"trace", "trace id", "case", "case id", "caseid"});
    return t;
  }();
  return table;
}

}  // namespace

ColumnMapping infer_mapping(const std::vector<std::string>& header) {
  if (header.empty()) throw Error(ErrorCode::NoUsableColumns, "header is empty");
  ColumnMapping mapping;
  for (const auto& name : header) {
    auto it = synonyms().find(normalize_header(name));
    if (it == synonyms().end()) continue;
    mapping.columns.emplace(it->second, name);  // first matching column wins
  }
  try {
    mapping.check();
  } catch (const Error&) {
    std::string names;
    for (const auto& h : header) names += (names.empty() ? "" : ", ") + h;
    throw Error(ErrorCode::NoUsableColumns, "cannot derive activities from columns [" + names + "]");
  }
  return mapping;
}

// ---------------------------------------------------------------------------

namespace {

class Ingestor {
 public:
  Ingestor(const ColumnMapping& mapping, const CsvRow& header) : mapping_(mapping), header_(header) {
    mapping_.check();
    for (std::size_t i = 0; i < header.size(); ++i) position_.emplace(header[i], i);
    std::set<std::size_t> used;
    for (const auto& [field, name] : mapping.columns) {
      auto it = position_.find(name);
      if (it == position_.end()) {
        throw Error(ErrorCode::MissingColumn, "mapped column '" + name + "' (" + std::string(to_string(field)) +
                                                  ") is not in the header");
      }
      index_[field] = it->second;
      used.insert(it->second);
    }
    if (mapping.extras == ExtrasPolicy::KeepAsAttributes) {
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (!used.count(i) && !header[i].empty() && position_.at(header[i]) == i) extras_.push_back(i);
      }
    }
  }

  IngestResult run(const std::vector<CsvRow>& rows) {
    bool traced = index_.count(Field::Trace) > 0;
    std::unordered_map<std::string, std::size_t> trace_slot;
    std::vector<Trace> traces;

    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      row_no_ = r;
      ++report_.rows_read;
      if (row.size() > header_.size()) warn("has " + std::to_string(row.size()) + " cells, header has " +
                                            std::to_string(header_.size()));
      std::string skip_reason;
      auto event = build_event(row, skip_reason);
      if (!event) {
        report_.rows_skipped.push_back(SkippedRow{r, skip_reason});
        continue;
      }
      std::optional<std::string> trace_id;
      if (traced) {
        trace_id = cell(row, Field::Trace);
        if (!trace_id) {
          report_.rows_skipped.push_back(SkippedRow{r, "missing trace id"});
          continue;
        }
      }
      std::size_t idx = log_.events.size();
      log_.events.push_back(std::move(*event));
      ++report_.events_created;
      if (trace_id) {
        auto [it, inserted] = trace_slot.emplace(*trace_id, traces.size());
        if (inserted) traces.push_back(Trace{*trace_id, {}, {}});
        traces[it->second].events.push_back(idx);
      }
    }
    if (traced) log_.traces = std::move(traces);
    log_.hierarchy = builder_.release();
    return IngestResult{std::move(log_), std::move(report_)};
  }

 private:
  void warn(const std::string& message) {
    report_.warnings.push_back("row " + std::to_string(row_no_) + ": " + message);
  }

  std::optional<std::string> cell(const CsvRow& row, Field f) const {
    auto it = index_.find(f);
    if (it == index_.end() || it->second >= row.size() || row[it->second].empty()) return std::nullopt;
    return row[it->second];
  }

  ValueParser parser_for(Field f) const {
    const auto& name = *mapping_.column(f);
    auto it = mapping_.value_parsers.find(name);
    return it == mapping_.value_parsers.end() ? ValueParser::Auto : it->second;
  }

  AttributeValue parse_value(const std::string& text, Field f) {
    ValueParser parser = parser_for(f);
    if (parser == ValueParser::Plain) return AttributeValue(text);
    bool want_map = parser == ValueParser::MapLiteral || (parser == ValueParser::Auto && text.front() == '{');
    bool want_list = parser == ValueParser::ListLiteral || (parser == ValueParser::Auto && text.front() == '[');
    std::optional<AttributeValue> parsed;
    if (want_map) parsed = parse_map_literal(text);
    else if (want_list) parsed = parse_list_literal(text);
    else return AttributeValue(text);
    if (!parsed) {
      warn("BadLiteral in column '" + *mapping_.column(f) + "': kept as text '" + text + "'");
      return AttributeValue(text);
    }
    return std::move(*parsed);
  }

  std::optional<InteractionEvent> build_event(const CsvRow& row, std::string& skip_reason) {
    InteractionEvent e;
    if (auto ts_text = cell(row, Field::Timestamp)) {
      auto ts = parse_timestamp(*ts_text, mapping_.timestamp_format);
      if (!ts) {
        skip_reason = "BadTimestamp: '" + *ts_text + "' does not match '" + mapping_.timestamp_format + "'";
        return std::nullopt;
      }
      if (ts->truncated) {
        ++report_.truncated_timestamps;
        warn("timestamp '" + *ts_text + "' truncated to milliseconds");
      }
      e.timestamp = ts->value;
    }

    std::vector<std::string> groups;
    if (auto path = cell(row, Field::UIGroupPath)) groups = decode_group_path(*path);
    auto assoc = associate(builder_, cell(row, Field::System), cell(row, Field::Application), groups,
                           cell(row, Field::UIElement));
    if (!assoc.empty()) e.target = resolve_target(assoc, builder_.hierarchy());

    if (auto action = cell(row, Field::ActionType)) e.action = Action{*action, {}};
    if (auto input = cell(row, Field::InputValue)) e.input_value = parse_value(*input, Field::InputValue);
    if (auto state = cell(row, Field::CurrentState)) {
      e.element_state = parse_value(*state, Field::CurrentState);
      if (assoc.element) builder_.hierarchy().nodes[assoc.element->value].current_state = e.element_state;
    }

    if (auto name = cell(row, Field::ActivityName)) {
      e.activity_name = *name;
    } else if (e.target) {
      e.activity_name = make_activity_name(e.action ? e.action->action_type : std::string(kNoneAction),
                                           builder_.hierarchy().at(e.target->node).id, mapping_.naming);
      ++report_.synthesized_names;
    } else {
      skip_reason = "no activity name and no UI hierarchy column to synthesize one";
      return std::nullopt;
    }

    if (auto user = cell(row, Field::User)) e.user = intern_user(log_, *user);
    if (auto task = cell(row, Field::Task)) e.task = intern_task(log_, *task);
    for (std::size_t col : extras_) {
      if (col < row.size() && !row[col].empty()) e.attributes.set(header_[col], AttributeValue(row[col]));
    }
    return e;
  }

  const ColumnMapping& mapping_;
  const CsvRow& header_;
  std::unordered_map<std::string, std::size_t> position_;
  std::map<Field, std::size_t> index_;
  std::vector<std::size_t> extras_;
  std::size_t row_no_ = 0;
  HierarchyBuilder builder_;
  UILog log_;
  IngestReport report_;
};

}  // namespace

IngestResult ingest(std::string_view text, const ColumnMapping& mapping) {
  auto rows = read_csv(text, mapping.dialect);
  if (rows.empty()) throw Error(ErrorCode::MissingColumn, "input has no header row");
  return Ingestor(mapping, rows.front()).run(rows);
}

IngestResult ingest(std::string_view text) {
  auto rows = read_csv(text);
  if (rows.empty()) throw Error(ErrorCode::MissingColumn, "input has no header row");
  auto mapping = infer_mapping(rows.front());
  return Ingestor(mapping, rows.front()).run(rows);
}

std::string render_json(const IngestReport& report) {
  nlohmann::ordered_json doc;
  doc["rows_read"] = report.rows_read;
  doc["events_created"] = report.events_created;
  auto& skipped = doc["rows_skipped"] = nlohmann::ordered_json::array();
  for (const auto& s : report.rows_skipped) skipped.push_back({{"row", s.row}, {"reason", s.reason}});
  doc["synthesized_names"] = report.synthesized_names;
  doc["truncated_timestamps"] = report.truncated_timestamps;
  doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

ColumnMapping default_output_mapping(const UILog& log) {
  bool has[kFields.size()] = {};
  auto mark = [&](Field f) { has[static_cast<std::size_t>(f)] = true; };
  mark(Field::ActivityName);
  if (log.traces) mark(Field::Trace);
  for (const auto& e : log.events) {
    if (e.action) mark(Field::ActionType);
    if (e.input_value) mark(Field::InputValue);
    if (e.element_state) mark(Field::CurrentState);
    if (e.timestamp) mark(Field::Timestamp);
    if (e.user) mark(Field::User);
    if (e.task) mark(Field::Task);
    if (!e.target || !log.hierarchy.contains(e.target->node)) continue;
    for (NodeIndex n : ancestry_nodes(e.target->node, log.hierarchy)) {
      switch (log.hierarchy.at(n).level) {
        case Level::Element: mark(Field::UIElement); break;
        case Level::Group: mark(Field::UIGroupPath); break;
        case Level::Application: mark(Field::Application); break;
        case Level::System: mark(Field::System); break;
      }
    }
  }
  static const std::map<Field, std::string> names = {
      {Field::ActivityName, "Activity"},   {Field::ActionType, "Action type"}, {Field::UIElement, "UI element"},
      {Field::UIGroupPath, "UI group"},    {Field::Application, "Application"}, {Field::System, "System"},
      {Field::InputValue, "Input value"},  {Field::CurrentState, "Current state"}, {Field::Timestamp, "Timestamp"},
      {Field::User, "User"},               {Field::Task, "Task"},              {Field::Trace, "Trace"}};
  ColumnMapping mapping;
  for (Field f : kFields) {
    if (has[static_cast<std::size_t>(f)]) mapping.columns.emplace(f, names.at(f));
  }
  return mapping;
}

std::string write_tabular(const UILog& log, const ColumnMapping& mapping) {
  std::vector<Field> fields;
  CsvRow header;
  for (Field f : kFields) {
    if (const auto* name = mapping.column(f)) {
      fields.push_back(f);
      header.push_back(*name);
    }
  }
  std::set<std::string> extra_keys;
  if (mapping.extras == ExtrasPolicy::KeepAsAttributes) {
    for (const auto& e : log.events) {
      for (const auto& [k, v] : e.attributes) extra_keys.insert(k);
    }
  }
  for (const auto& k : extra_keys) header.push_back(k);

  std::vector<CsvRow> rows{header};
  auto emit = [&](std::size_t idx, const std::string* trace_id) {
    const auto& e = log.events.at(idx);
    std::optional<std::string> system, application, element;
    std::vector<std::string> groups;
    if (e.target) {
      for (NodeIndex n : ancestry_nodes(e.target->node, log.hierarchy)) {
        const auto& node = log.hierarchy.at(n);
        switch (node.level) {
          case Level::System: system = node.id; break;
          case Level::Application: application = node.id; break;
          case Level::Group: groups.insert(groups.begin(), node.id); break;
          case Level::Element: element = node.id; break;
        }
      }
    }
    CsvRow row;
    for (Field f : fields) {
      std::string v;
      switch (f) {
        case Field::ActivityName: v = e.activity_name; break;
        case Field::ActionType: v = e.action ? e.action->action_type : ""; break;
        case Field::UIElement: v = element.value_or(""); break;
        case Field::UIGroupPath: v = encode_group_path(groups); break;
        case Field::Application: v = application.value_or(""); break;
        case Field::System: v = system.value_or(""); break;
        case Field::InputValue: v = e.input_value ? format_cell(*e.input_value) : ""; break;
        case Field::CurrentState: v = e.element_state ? format_cell(*e.element_state) : ""; break;
        case Field::Timestamp: v = e.timestamp ? format_timestamp(*e.timestamp, mapping.timestamp_format) : ""; break;
        case Field::User: v = e.user ? log.user(*e.user).id : ""; break;
        case Field::Task: v = e.task ? log.task(*e.task).id : ""; break;
        case Field::Trace: v = trace_id ? *trace_id : ""; break;
      }
      row.push_back(std::move(v));
    }
    for (const auto& k : extra_keys) {
      const auto* v = e.attributes.find(k);
      row.push_back(v ? format_cell(*v) : "");
    }
    rows.push_back(std::move(row));
  };
  if (log.traces) {
    for (const auto& t : *log.traces) {
      for (std::size_t idx : t.events) emit(idx, &t.id);
    }
  } else {
    for (std::size_t i = 0; i < log.events.size(); ++i) emit(i, nullptr);
  }
  return write_csv(rows, mapping.dialect.delimiter);
}

// ---------------------------------------------------------------------------

ColumnMapping load_mapping(std::string_view text) {
  ColumnMapping mapping;
  for (const auto& section : parse_config(text)) {
    if (!section.name.empty() && section.name != "mapping") {
      throw Error(ErrorCode::BadConfig, "unexpected section [" + section.name + "] in mapping file");
    }
    for (const auto& [key, value] : section.entries) {
      if (auto field = field_from_string(key)) {
        mapping.columns[*field] = value;
      } else if (key == "timestamp_format") {
        mapping.timestamp_format = value;
      } else if (key.rfind("parser.", 0) == 0) {
        auto parser = value_parser_from_string(value);
        if (!parser) throw Error(ErrorCode::BadConfig, "unknown value parser '" + value + "'");
        mapping.value_parsers[key.substr(7)] = *parser;
      } else if (key == "extras") {
        if (value == "keep") mapping.extras = ExtrasPolicy::KeepAsAttributes;
        else if (value == "ignore") mapping.extras = ExtrasPolicy::Ignore;
        else throw Error(ErrorCode::BadConfig, "extras must be 'keep' or 'ignore'");
      } else if (key == "naming") {
        if (value == "abbreviated") mapping.naming = NamingScheme::abbreviated();
        else if (value == "concatenation") mapping.naming = NamingScheme::concatenation();
        else throw Error(ErrorCode::BadConfig, "naming must be 'abbreviated' or 'concatenation'");
      } else if (key == "naming.separator") {
        mapping.naming.separator = value;
      } else if (key.rfind("naming.rewrite.", 0) == 0) {
        mapping.naming.rewrites[key.substr(15)] = value;
      } else if (key == "delimiter") {
        if (value == "tab" || value == "\\t") mapping.dialect.delimiter = '\t';
        else if (value.size() == 1) mapping.dialect.delimiter = value.front();
        else throw Error(ErrorCode::BadConfig, "delimiter must be a single character or 'tab'");
      } else {
        throw Error(ErrorCode::BadConfig, "unknown mapping key '" + key + "'");
      }
    }
  }
  mapping.check();
  return mapping;
}

}  // namespace uilog
