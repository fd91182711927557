#include <cstdio>
#include <json.hpp>

#include "uilog/validation.hpp"

namespace uilog {

namespace {

std::string locator(const Violation& v) {
  std::string out;
  auto add = [&](const std::string& part) {
    if (!out.empty()) out += ", ";
    out += part;
  };
  if (v.event_index) add("event " + std::to_string(*v.event_index));
  if (v.node_id) add("node '" + *v.node_id + "'");
  if (v.trace_id) add("trace '" + *v.trace_id + "'");
  return out.empty() ? "log" : out;
}

std::string fraction(std::size_t present, std::size_t total) {
  return std::to_string(present) + "/" + std::to_string(total);
}

}  // namespace

std::string render_text(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report.violations) {
    out += std::string(to_string(v.code)) + " [" + locator(v) + "] " + v.message + "\n";
  }
  out += std::to_string(report.violations.size()) + " violations (" + std::to_string(report.checked_events) +
         " events, " + std::to_string(report.checked_nodes) + " hierarchy nodes checked)\n";
  return out;
}

std::string render_json(const ValidationReport& report) {
  nlohmann::ordered_json doc;
  doc["checked_events"] = report.checked_events;
  doc["checked_nodes"] = report.checked_nodes;
  auto& list = doc["violations"] = nlohmann::ordered_json::array();
  for (const auto& v : report.violations) {
    nlohmann::ordered_json rec;
    rec["code"] = to_string(v.code);
    rec["event_index"] = v.event_index ? nlohmann::ordered_json(*v.event_index) : nullptr;
    rec["node_id"] = v.node_id ? nlohmann::ordered_json(*v.node_id) : nullptr;
    rec["trace_id"] = v.trace_id ? nlohmann::ordered_json(*v.trace_id) : nullptr;
    rec["message"] = v.message;
    list.push_back(std::move(rec));
  }
  return doc.dump(2) + "\n";
}

std::string render_text(const CoverageMatrix& matrix, const LogProfile& p) {
  std::string out;
  out += "core attribute coverage (per event; ui_hierarchy = target has >= 1 ancestor, action type \"none\" counts)\n";
  for (const auto& row : matrix.rows) {
    char line[128];
    std::snprintf(line, sizeof line, "  %-15s %9s  %.3f  %s\n", std::string(to_string(row.attribute)).c_str(),
                  fraction(row.events_present, row.events_total).c_str(), row.ratio,
                  row.in_log ? "present in log" : "absent from log");
    out += line;
  }
  out += "profile\n";
  out += "  events                 " + std::to_string(p.events) + "\n";
  out += "  distinct activities    " + std::to_string(p.distinct_activities) + "\n";
  out += "  distinct action types  " + std::to_string(p.distinct_action_types) + "\n";
  out += "  systems                " + std::to_string(p.systems) + "\n";
  out += "  applications           " + std::to_string(p.applications) + "\n";
  out += "  ui groups              " + std::to_string(p.groups) + "\n";
  out += "  ui elements            " + std::to_string(p.elements) + "\n";
  out += "  users                  " + std::to_string(p.users) + "\n";
  out += "  tasks                  " + std::to_string(p.tasks) + "\n";
  if (p.traces) out += "  traces                 " + std::to_string(*p.traces) + "\n";
  return out;
}

std::string render_json(const CoverageMatrix& matrix, const LogProfile& p) {
  nlohmann::ordered_json doc;
  auto& cov = doc["coverage"] = nlohmann::ordered_json::object();
  for (const auto& row : matrix.rows) {
    cov[std::string(to_string(row.attribute))] = {{"events_present", row.events_present},
                                                  {"events_total", row.events_total},
                                                  {"ratio", row.ratio},
                                                  {"in_log", row.in_log}};
  }
  doc["profile"] = {{"events", p.events},
                    {"distinct_activities", p.distinct_activities},
                    {"distinct_action_types", p.distinct_action_types},
                    {"systems", p.systems},
                    {"applications", p.applications},
                    {"ui_groups", p.groups},
                    {"ui_elements", p.elements},
                    {"users", p.users},
                    {"tasks", p.tasks},
                    {"traces", p.traces ? nlohmann::ordered_json(*p.traces) : nullptr}};
  return doc.dump(2) + "\n";
}

}  // namespace uilog
