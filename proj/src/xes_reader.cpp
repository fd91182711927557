#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "uilog/error.hpp"
#include "uilog/xes.hpp"

namespace uilog {

namespace pt = boost::property_tree;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedDocument, what); }

bool is_attribute_tag(std::string_view tag) {
  return tag == "string" || tag == "date" || tag == "int" || tag == "float" || tag == "boolean" || tag == "id" ||
         tag == "list" || tag == "container";
}

std::string xml_attr(const pt::ptree& node, const char* name, std::string_view tag) {
  auto value = node.get_optional<std::string>(std::string("<xmlattr>.") + name);
  if (!value) malformed("<" + std::string(tag) + "> lacks the '" + name + "' attribute");
  return *value;
}

class Reader {
 public:
  explicit Reader(const XesReadOptions& options) : options_(options) {}

  UILog run(std::string_view document) {
    pt::ptree tree;
    try {
      std::istringstream in{std::string(document)};
      pt::read_xml(in, tree, pt::xml_parser::no_comments);
    } catch (const pt::xml_parser_error& e) {
      malformed(std::string("XML parse error: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    std::optional<std::reference_wrapper<const pt::ptree>> root;
    for (const auto& [tag, child] : tree) {
      if (tag == "log") {
        if (root) malformed("document holds more than one <log> element");
        root = std::cref(child);
      } else if (tag != "<xmlattr>" && tag != "<xmlcomment>") {
        malformed("unexpected top-level element <" + tag + ">");
      }
    }
    if (!root) malformed("document has no <log> element");

    bool untraced = false;
    std::vector<Trace> traces;
    for (const auto& [tag, child] : root->get()) {
      if (tag == "trace") {
        traces.push_back(read_trace(child, traces.size()));
      } else if (is_attribute_tag(tag)) {
        auto [key, value] = read_attribute(tag, child, 0);
        if (key == xes_keys::kUntraced) {
          untraced = value.kind() == AttributeValue::Kind::Boolean && value.as_boolean();
          continue;
        }
        log_.attributes.set(std::move(key), std::move(value));
      }
      // extension, global, classifier and unknown elements carry no model content.
    }
    if (!untraced) log_.traces = std::move(traces);
    log_.hierarchy = builder_.release();
    return std::move(log_);
  }

 private:
  std::pair<std::string, AttributeValue> read_attribute(std::string_view tag, const pt::ptree& node, std::size_t depth) {
    if (depth > kMaxAttributeDepth) malformed("attribute nesting exceeds " + std::to_string(kMaxAttributeDepth));
    std::string key = xml_attr(node, "key", tag);
    if (auto alias = options_.key_aliases.find(key); alias != options_.key_aliases.end()) key = alias->second;

    if (tag == "list") {
      AttributeList items;
      auto collect = [&](const pt::ptree& parent) {
        for (const auto& [t, c] : parent) {
          if (is_attribute_tag(t)) items.push_back(read_attribute(t, c, depth + 1).second);
        }
      };
      for (const auto& [t, c] : node) {
        if (t == "values") collect(c);
        else if (is_attribute_tag(t)) items.push_back(read_attribute(t, c, depth + 1).second);
      }
      return {std::move(key), AttributeValue(std::move(items))};
    }
    if (tag == "container") {
      AttributeMap map;
      for (const auto& [t, c] : node) {
        if (!is_attribute_tag(t)) continue;
        auto [k, v] = read_attribute(t, c, depth + 1);
        if (map.contains(k)) malformed("container '" + key + "' repeats key '" + k + "'");
        map.set(std::move(k), std::move(v));
      }
      return {std::move(key), AttributeValue(std::move(map))};
    }

    std::string text = xml_attr(node, "value", tag);
    if (tag == "string" || tag == "id") return {std::move(key), AttributeValue(std::move(text))};
    if (tag == "int") {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc{} || ptr != text.data() + text.size()) malformed("bad int '" + text + "' for " + key);
      return {std::move(key), AttributeValue(v)};
    }
    if (tag == "float") return {std::move(key), AttributeValue(parse_real(text, key))};
    if (tag == "boolean") {
      if (text == "true" || text == "1") return {std::move(key), AttributeValue(true)};
      if (text == "false" || text == "0") return {std::move(key), AttributeValue(false)};
      malformed("bad boolean '" + text + "' for " + key);
    }
    // date
    auto ts = parse_iso8601(text);
    if (!ts) malformed("bad date '" + text + "' for " + key);
    if (ts->truncated) warn("timestamp '" + text + "' truncated to millisecond precision");
    return {std::move(key), AttributeValue(ts->value)};
  }

  static double parse_real(const std::string& text, const std::string& key) {
    if (text == "NaN") return std::numeric_limits<double>::quiet_NaN();
    if (text == "INF") return std::numeric_limits<double>::infinity();
    if (text == "-INF") return -std::numeric_limits<double>::infinity();
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) malformed("bad float '" + text + "' for " + key);
    return v;
  }

  void warn(std::string message) {
    if (options_.warnings) options_.warnings->push_back(std::move(message));
  }

  Trace read_trace(const pt::ptree& node, std::size_t ordinal) {
    Trace trace;
    bool named = false;
    for (const auto& [tag, child] : node) {
      if (tag == "event") {
        trace.events.push_back(log_.events.size());
        log_.events.push_back(read_event(child, log_.events.size()));
      } else if (is_attribute_tag(tag)) {
        auto [key, value] = read_attribute(tag, child, 0);
        if (key == xes_keys::kConceptName && !named) {
          trace.id = value.is_text() ? value.as_text() : render(value);
          named = true;
        } else {
          trace.attributes.set(std::move(key), std::move(value));
        }
      }
    }
    if (!named) trace.id = std::to_string(ordinal + 1);
    return trace;
  }

  static std::string text_of(const AttributeValue& v) { return v.is_text() ? v.as_text() : render(v); }

  InteractionEvent read_event(const pt::ptree& node, std::size_t index) {
    InteractionEvent event;
    bool named = false;
    std::optional<std::string> system;
    std::optional<std::string> application;
    std::optional<std::string> element;
    std::vector<std::string> groups;

    for (const auto& [tag, child] : node) {
      if (!is_attribute_tag(tag)) continue;
      auto [key, value] = read_attribute(tag, child, 0);
      if (key == xes_keys::kConceptName) {
        event.activity_name = text_of(value);
        named = true;
      } else if (key == xes_keys::kTimeTimestamp) {
        if (value.kind() == AttributeValue::Kind::Time) {
          event.timestamp = value.as_time();
        } else if (auto ts = parse_iso8601(text_of(value))) {
          event.timestamp = ts->value;
        } else {
          malformed("event " + std::to_string(index) + " has an unparseable time:timestamp");
        }
      } else if (key == xes_keys::kActionType) {
        event.action = Action{text_of(value), {}};
      } else if (key == xes_keys::kSystem) {
        system = text_of(value);
      } else if (key == xes_keys::kApplication) {
        application = text_of(value);
      } else if (key == xes_keys::kUIGroupPath) {
        groups = decode_group_path(text_of(value));
      } else if (key == xes_keys::kUIElement) {
        element = text_of(value);
      } else if (key == xes_keys::kUIElementState) {
        event.element_state = std::move(value);
      } else if (key == xes_keys::kInputValue) {
        event.input_value = std::move(value);
      } else if (key == xes_keys::kUser) {
        event.user = intern_user(log_, text_of(value));
      } else if (key == xes_keys::kTask) {
        event.task = intern_task(log_, text_of(value));
      } else {
        event.attributes.set(std::move(key), std::move(value));
      }
    }
    if (!named && !options_.allow_missing_names) {
      throw Error(ErrorCode::MissingConceptName, "event " + std::to_string(index) + " has no concept:name");
    }

    auto assoc = associate(builder_, system, application, groups, element);
    if (!assoc.empty()) {
      event.target = resolve_target(assoc, builder_.hierarchy());
      if (assoc.element && event.element_state) {
        builder_.hierarchy().nodes[assoc.element->value].current_state = event.element_state;
      }
    }
    return event;
  }

  const XesReadOptions& options_;
  UILog log_;
  HierarchyBuilder builder_;
};

}  // namespace

UILog read_xes(std::string_view document, const XesReadOptions& options) {
  try {
    return Reader(options).run(document);
  } catch (const pt::ptree_error& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
}

}  // namespace uilog
