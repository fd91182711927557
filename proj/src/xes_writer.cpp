#include <charconv>
#include <cmath>

#include "uilog/error.hpp"
#include "uilog/validation.hpp"
#include "uilog/xes.hpp"

namespace uilog {

std::string encode_group_path(const std::vector<std::string>& groups) {
  std::string out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (i) out += '/';
    for (char c : groups[i]) {
      if (c == '/' || c == '\\') out += '\\';
      out += c;
    }
  }
  return out;
}

std::vector<std::string> decode_group_path(std::string_view path) {
  std::vector<std::string> groups;
  std::string cur;
  for (std::size_t i = 0; i < path.size(); ++i) {
    char c = path[i];
    if (c == '\\' && i + 1 < path.size()) {
      cur += path[++i];
    } else if (c == '/') {
      if (!cur.empty()) groups.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) groups.push_back(std::move(cur));
  return groups;
}

namespace {

void append_escaped(std::string& out, std::string_view text) {
  for (unsigned char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\t': out += "&#9;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          throw Error(ErrorCode::UnserializableValue, "control character 0x" + std::to_string(c) +
                                                          " cannot be represented in XML");
        }
        out += static_cast<char>(c);
    }
  }
}

std::string format_real(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "INF" : "-INF";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

class Writer {
 public:
  explicit Writer(const UILog& log) : log_(log) {}

  std::string run() {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<log xes.version=\"1849-2016\" xes.features=\"nested-attributes\" xmlns=\"http://www.xes-standard.org/\">\n";
    out_ += "  <extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
    out_ += "  <extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
    out_ += "  <extension name=\"" + std::string(xes_keys::kExtensionName) + "\" prefix=\"" +
            std::string(xes_keys::kPrefix) + "\" uri=\"" + std::string(xes_keys::kExtensionUri) + "\"/>\n";

    for (const auto& [key, value] : log_.attributes) {
      if (key == xes_keys::kUntraced) reserved(key, "log");
      attribute(key, value, 1);
    }
    if (!log_.traces) {
      out_ += "  <boolean key=\"" + std::string(xes_keys::kUntraced) + "\" value=\"true\"/>\n";
      if (!log_.events.empty()) {
        out_ += "  <trace>\n";
        for (std::size_t i = 0; i < log_.events.size(); ++i) event(log_.events[i]);
        out_ += "  </trace>\n";
      }
    } else {
      for (const auto& trace : *log_.traces) {
        out_ += "  <trace>\n";
        attribute(xes_keys::kConceptName, AttributeValue(trace.id), 2);
        for (const auto& [key, value] : trace.attributes) {
          if (key == xes_keys::kConceptName) reserved(key, "trace");
          attribute(key, value, 2);
        }
        for (std::size_t idx : trace.events) event(log_.events.at(idx));
        out_ += "  </trace>\n";
      }
    }
    out_ += "</log>\n";
    return std::move(out_);
  }

 private:
  [[noreturn]] static void reserved(std::string_view key, std::string_view scope) {
    throw Error(ErrorCode::UnserializableValue, "key '" + std::string(key) + "' is reserved at " +
                                                    std::string(scope) + " level");
  }

  void indent(int depth) { out_.append(static_cast<std::size_t>(depth) * 2, ' '); }

  void open_tag(std::string_view tag, std::string_view key, int depth) {
    indent(depth);
    out_ += '<';
    out_ += tag;
    out_ += " key=\"";
    append_escaped(out_, key);
    out_ += '"';
  }

  void scalar(std::string_view tag, std::string_view key, std::string_view value, int depth) {
    open_tag(tag, key, depth);
    out_ += " value=\"";
    append_escaped(out_, value);
    out_ += "\"/>\n";
  }

  void attribute(std::string_view key, const AttributeValue& value, int depth) {
    if (value.depth() > kMaxAttributeDepth) {
      throw Error(ErrorCode::UnserializableValue, "attribute '" + std::string(key) + "' nests deeper than " +
                                                      std::to_string(kMaxAttributeDepth) + " levels");
    }
    write_value(key, value, depth);
  }

  void write_value(std::string_view key, const AttributeValue& value, int depth) {
    using Kind = AttributeValue::Kind;
    switch (value.kind()) {
      case Kind::Text: scalar("string", key, value.as_text(), depth); return;
      case Kind::Integer: scalar("int", key, std::to_string(value.as_integer()), depth); return;
      case Kind::Real: scalar("float", key, format_real(value.as_real()), depth); return;
      case Kind::Boolean: scalar("boolean", key, value.as_boolean() ? "true" : "false", depth); return;
      case Kind::Time: scalar("date", key, format_iso8601(value.as_time()), depth); return;
      case Kind::List: {
        const auto& list = value.as_list();
        open_tag("list", key, depth);
        if (list.empty()) {
          out_ += "/>\n";
          return;
        }
        out_ += ">\n";
        indent(depth + 1);
        out_ += "<values>\n";
        for (std::size_t i = 0; i < list.size(); ++i) write_value(std::to_string(i), list[i], depth + 2);
        indent(depth + 1);
        out_ += "</values>\n";
        indent(depth);
        out_ += "</list>\n";
        return;
      }
      case Kind::Map: {
        const auto& map = value.as_map();
        open_tag("container", key, depth);
        if (map.empty()) {
          out_ += "/>\n";
          return;
        }
        out_ += ">\n";
        for (const auto& [k, v] : map) write_value(k, v, depth + 1);
        indent(depth);
        out_ += "</container>\n";
        return;
      }
    }
  }

  void event(const InteractionEvent& e) {
    out_ += "    <event>\n";
    attribute(xes_keys::kConceptName, AttributeValue(e.activity_name), 3);
    if (e.timestamp) attribute(xes_keys::kTimeTimestamp, AttributeValue(*e.timestamp), 3);
    if (e.action) attribute(xes_keys::kActionType, AttributeValue(e.action->action_type), 3);

    if (e.target) {
      std::optional<std::string> system;
      std::optional<std::string> application;
      std::optional<std::string> element;
      std::vector<std::string> groups;
      for (NodeIndex n : ancestry_nodes(e.target->node, log_.hierarchy)) {
        const auto& node = log_.hierarchy.at(n);
        switch (node.level) {
          case Level::System: system = node.id; break;
          case Level::Application: application = node.id; break;
          case Level::Group: groups.insert(groups.begin(), node.id); break;
          case Level::Element: element = node.id; break;
        }
      }
      if (system) attribute(xes_keys::kSystem, AttributeValue(*system), 3);
      if (application) attribute(xes_keys::kApplication, AttributeValue(*application), 3);
      if (!groups.empty()) attribute(xes_keys::kUIGroupPath, AttributeValue(encode_group_path(groups)), 3);
      if (element) attribute(xes_keys::kUIElement, AttributeValue(*element), 3);
    }
    if (e.element_state) attribute(xes_keys::kUIElementState, *e.element_state, 3);
    if (e.input_value) attribute(xes_keys::kInputValue, *e.input_value, 3);
    if (e.user) attribute(xes_keys::kUser, AttributeValue(log_.user(*e.user).id), 3);
    if (e.task) attribute(xes_keys::kTask, AttributeValue(log_.task(*e.task).id), 3);

    for (const auto& [key, value] : e.attributes) {
      if (key == xes_keys::kConceptName || key == xes_keys::kTimeTimestamp || key.rfind("uilog:", 0) == 0) {
        reserved(key, "event");
      }
      attribute(key, value, 3);
    }
    out_ += "    </event>\n";
  }

  const UILog& log_;
  std::string out_;
};

}  // namespace

std::string write_xes(const UILog& log, const XesWriteOptions& options) {
  auto report = options.require_valid ? validate(log) : ValidationReport{};
  if (!report.ok()) {
    throw Error(ErrorCode::InvalidLog, std::to_string(report.violations.size()) + " violations, first: " +
                                           report.violations.front().message);
  }
  return Writer(log).run();
}

std::string emit_extension_definition() {
  // Keys are listed without the prefix, as extension definitions do.
  return R"xml(<?xml version="1.0" encoding="UTF-8"?>
<xesextension name="UILog" prefix="uilog" uri="urn:uilog:xes-extension:uilog.xesext">
  <log>
    <boolean key="untraced">
      <alias mapping="EN" name="Artificial single trace marker"/>
    </boolean>
  </log>
  <event>
    <string key="action-type">
      <alias mapping="EN" name="Action type"/>
    </string>
    <container key="input-value" accepts="string int float boolean date list container">
      <alias mapping="EN" name="Input value"/>
    </container>
    <string key="ui-element">
      <alias mapping="EN" name="UI element"/>
    </string>
    <list key="ui-element-state" accepts="string int float boolean date list container">
      <alias mapping="EN" name="Current state of the UI element"/>
    </list>
    <string key="ui-group-path">
      <alias mapping="EN" name="UI group path (outermost first, '/' separated, '\' escapes)"/>
    </string>
    <string key="application">
      <alias mapping="EN" name="Application"/>
    </string>
    <string key="system">
      <alias mapping="EN" name="System"/>
    </string>
    <string key="user">
      <alias mapping="EN" name="User"/>
    </string>
    <string key="task">
      <alias mapping="EN" name="Task"/>
    </string>
  </event>
</xesextension>
)xml";
}

}  // namespace uilog
