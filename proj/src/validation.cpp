#include "uilog/validation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "uilog/error.hpp"

namespace uilog {

std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::MissingActivityName: return "MissingActivityName";
    case ViolationCode::DanglingReference: return "DanglingReference";
    case ViolationCode::CycleDetected: return "CycleDetected";
    case ViolationCode::LevelViolation: return "LevelViolation";
    case ViolationCode::OutOfOrderTimestamp: return "OutOfOrderTimestamp";
    case ViolationCode::DuplicateId: return "DuplicateId";
    case ViolationCode::PartitionGap: return "PartitionGap";
    case ViolationCode::PartitionOverlap: return "PartitionOverlap";
    case ViolationCode::EmptyValue: return "EmptyValue";
  }
  return "Unknown";
}

std::size_t ValidationReport::count(ViolationCode code) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; }));
}

namespace {

class Checker {
 public:
  explicit Checker(const UILog& log) : log_(log) {}

  ValidationReport run() {
    check_nodes();
    check_cycles();
    check_registry(log_.users, "user");
    check_registry(log_.tasks, "task");
    check_events();
    if (log_.traces) {
      check_traces();
    } else {
      std::vector<std::size_t> all(log_.events.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      check_order(all, std::nullopt);
    }
    report_.checked_events = log_.events.size();
    report_.checked_nodes = log_.hierarchy.size();
    return std::move(report_);
  }

 private:
  void node_violation(ViolationCode code, std::size_t idx, std::string message) {
    Violation v{code, std::nullopt, log_.hierarchy.nodes[idx].id, idx, std::nullopt, std::move(message)};
    report_.violations.push_back(std::move(v));
  }

  void event_violation(ViolationCode code, std::size_t idx, std::string message,
                       std::optional<std::string> trace = std::nullopt) {
    report_.violations.push_back(Violation{code, idx, std::nullopt, std::nullopt, std::move(trace), std::move(message)});
  }

  void check_nodes() {
    const auto& nodes = log_.hierarchy.nodes;
    std::map<std::tuple<std::int64_t, Level, std::string>, std::size_t> siblings;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      if (n.id.empty()) node_violation(ViolationCode::EmptyValue, i, std::string(to_string(n.level)) + " has an empty id");
      if (n.parent) {
        if (!log_.hierarchy.contains(*n.parent)) {
          node_violation(ViolationCode::DanglingReference, i,
                         "parent #" + std::to_string(n.parent->value) + " does not exist");
          continue;
        }
        const auto& p = log_.hierarchy.at(*n.parent);
        if (!may_parent(n.level, p.level)) {
          node_violation(ViolationCode::LevelViolation, i,
                         std::string(to_string(n.level)) + " '" + n.id + "' is parented to " +
                             std::string(to_string(p.level)) + " '" + p.id + "'");
        }
      }
      std::int64_t slot = n.parent ? static_cast<std::int64_t>(n.parent->value) : -1;
      auto [it, inserted] = siblings.emplace(std::tuple{slot, n.level, n.id}, i);
      if (!inserted) {
        node_violation(ViolationCode::DuplicateId, i,
                       std::string(to_string(n.level)) + " '" + n.id + "' duplicates node #" + std::to_string(it->second));
      }
    }
  }

  // Each cycle is reported once, located at its lowest node index.
  void check_cycles() {
    const auto& nodes = log_.hierarchy.nodes;
    enum class Mark { Unvisited, Active, Done };
    std::vector<Mark> mark(nodes.size(), Mark::Unvisited);
    for (std::size_t start = 0; start < nodes.size(); ++start) {
      std::vector<std::size_t> chain;
      std::size_t cur = start;
      while (mark[cur] == Mark::Unvisited) {
        mark[cur] = Mark::Active;
        chain.push_back(cur);
        const auto& parent = nodes[cur].parent;
        if (!parent || parent->value >= nodes.size()) break;
        cur = parent->value;
      }
      if (mark[cur] == Mark::Active && !chain.empty() && nodes[chain.back()].parent &&
          nodes[chain.back()].parent->value == cur) {
        auto first = std::find(chain.begin(), chain.end(), cur);
        std::size_t lowest = *std::min_element(first, chain.end());
        std::string path;
        for (auto it = first; it != chain.end(); ++it) path += nodes[*it].id + " -> ";
        path += nodes[cur].id;
        node_violation(ViolationCode::CycleDetected, lowest, "parent cycle " + path);
      }
      for (std::size_t n : chain) mark[n] = Mark::Done;
    }
  }

  template <typename Ref>
  void check_registry(const std::vector<Ref>& refs, std::string_view what) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const auto& id = refs[i].id;
      if (id.empty()) {
        report_.violations.push_back(Violation{ViolationCode::EmptyValue, std::nullopt, id, i, std::nullopt,
                                               std::string(what) + " #" + std::to_string(i) + " has an empty id"});
      } else if (!seen.insert(id).second) {
        report_.violations.push_back(Violation{ViolationCode::DuplicateId, std::nullopt, id, i, std::nullopt,
                                               std::string(what) + " id '" + id + "' is registered twice"});
      }
    }
  }

  void check_events() {
    for (std::size_t i = 0; i < log_.events.size(); ++i) {
      const auto& e = log_.events[i];
      if (e.activity_name.empty()) event_violation(ViolationCode::MissingActivityName, i, "activity name is empty");
      if (e.action && e.action->action_type.empty()) {
        event_violation(ViolationCode::EmptyValue, i, "action present with an empty action type");
      }
      if (e.target) {
        if (!log_.hierarchy.contains(e.target->node)) {
          event_violation(ViolationCode::DanglingReference, i,
                          "target node #" + std::to_string(e.target->node.value) + " does not exist");
        } else if (log_.hierarchy.at(e.target->node).level != e.target->level) {
          event_violation(ViolationCode::LevelViolation, i,
                          "target declared as " + std::string(to_string(e.target->level)) + " but node '" +
                              log_.hierarchy.at(e.target->node).id + "' is a " +
                              std::string(to_string(log_.hierarchy.at(e.target->node).level)));
        }
      }
      if (e.user && e.user->value >= log_.users.size()) {
        event_violation(ViolationCode::DanglingReference, i, "user #" + std::to_string(e.user->value) + " is not registered");
      }
      if (e.task && e.task->value >= log_.tasks.size()) {
        event_violation(ViolationCode::DanglingReference, i, "task #" + std::to_string(e.task->value) + " is not registered");
      }
    }
  }

  void check_order(const std::vector<std::size_t>& sequence, const std::optional<std::string>& trace) {
    std::optional<Timestamp> last;
    for (std::size_t idx : sequence) {
      if (idx >= log_.events.size()) continue;
      const auto& ts = log_.events[idx].timestamp;
      if (!ts) continue;
      if (last && *ts < *last) {
        event_violation(ViolationCode::OutOfOrderTimestamp, idx,
                        format_iso8601(*ts) + " precedes earlier event at " + format_iso8601(*last), trace);
      } else {
        last = ts;
      }
    }
  }

  void check_traces() {
    std::vector<int> seen(log_.events.size(), 0);
    std::set<std::string> ids;
    for (const auto& trace : *log_.traces) {
      if (trace.id.empty()) {
        report_.violations.push_back(
            Violation{ViolationCode::EmptyValue, std::nullopt, std::nullopt, std::nullopt, trace.id, "trace id is empty"});
      } else if (!ids.insert(trace.id).second) {
        report_.violations.push_back(Violation{ViolationCode::DuplicateId, std::nullopt, std::nullopt, std::nullopt,
                                               trace.id, "trace id '" + trace.id + "' is used twice"});
      }
      for (std::size_t idx : trace.events) {
        if (idx >= log_.events.size()) {
          event_violation(ViolationCode::DanglingReference, idx, "trace references a missing event", trace.id);
        } else if (seen[idx]++ > 0) {
          event_violation(ViolationCode::PartitionOverlap, idx, "event belongs to more than one trace position",
                          trace.id);
        }
      }
      check_order(trace.events, trace.id);
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (seen[i] == 0) event_violation(ViolationCode::PartitionGap, i, "event is not covered by any trace");
    }
  }

  const UILog& log_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const UILog& log) { return Checker(log).run(); }

// ---------------------------------------------------------------------------

std::string_view to_string(CoreAttribute attr) {
  switch (attr) {
    case CoreAttribute::ActionType: return "action_type";
    case CoreAttribute::TargetElement: return "target_element";
    case CoreAttribute::UIHierarchy: return "ui_hierarchy";
    case CoreAttribute::Application: return "application";
    case CoreAttribute::InputValue: return "input_value";
    case CoreAttribute::Timestamp: return "timestamp";
    case CoreAttribute::CurrentState: return "current_state";
  }
  return "unknown";
}

namespace {

bool resolves(const UILog& log, const InteractionEvent& e) {
  return e.target && log.hierarchy.contains(e.target->node) && log.hierarchy.at(e.target->node).level == e.target->level;
}

// Null when the ancestry is broken; coverage must not throw on invalid logs.
std::optional<std::vector<NodeIndex>> safe_ancestry(const UILog& log, NodeIndex node) {
  try {
    return ancestry_nodes(node, log.hierarchy);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

CoverageMatrix coverage(const UILog& log) {
  CoverageMatrix m;
  for (std::size_t i = 0; i < kCoreAttributes.size(); ++i) {
    m.rows[i].attribute = kCoreAttributes[i];
    m.rows[i].events_total = log.events.size();
  }
  auto hit = [&](CoreAttribute a) { ++m.rows[static_cast<std::size_t>(a)].events_present; };

  for (const auto& e : log.events) {
    if (e.action) hit(CoreAttribute::ActionType);
    if (e.input_value) hit(CoreAttribute::InputValue);
    if (e.timestamp) hit(CoreAttribute::Timestamp);
    if (e.element_state) hit(CoreAttribute::CurrentState);
    if (!resolves(log, e)) continue;
    if (e.target->level == Level::Element) hit(CoreAttribute::TargetElement);
    auto path = safe_ancestry(log, e.target->node);
    if (!path) continue;
    if (path->size() > 1) hit(CoreAttribute::UIHierarchy);
    if (std::any_of(path->begin(), path->end(),
                    [&](NodeIndex n) { return log.hierarchy.at(n).level == Level::Application; })) {
      hit(CoreAttribute::Application);
    }
  }
  for (auto& row : m.rows) {
    row.ratio = row.events_total == 0 ? 0.0
                                      : static_cast<double>(row.events_present) / static_cast<double>(row.events_total);
    row.in_log = row.events_present > 0;
  }
  return m;
}

LogProfile profile(const UILog& log) {
  LogProfile p;
  p.events = log.events.size();
  std::set<std::string_view> activities;
  std::set<std::string_view> actions;
  for (const auto& e : log.events) {
    activities.insert(e.activity_name);
    if (e.action) actions.insert(e.action->action_type);
  }
  p.distinct_activities = activities.size();
  p.distinct_action_types = actions.size();
  p.systems = log.hierarchy.count(Level::System);
  p.applications = log.hierarchy.count(Level::Application);
  p.groups = log.hierarchy.count(Level::Group);
  p.elements = log.hierarchy.count(Level::Element);
  p.users = log.users.size();
  p.tasks = log.tasks.size();
  if (log.traces) p.traces = log.traces->size();
  return p;
}

}  // namespace uilog
