#include "uilog/model.hpp"

#include <algorithm>
#include <unordered_map>

#include "uilog/error.hpp"

namespace uilog {

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Element: return "element";
    case Level::Group: return "group";
    case Level::Application: return "application";
    case Level::System: return "system";
  }
  return "unknown";
}

bool may_parent(Level child, Level parent) {
  switch (child) {
    case Level::Element:
    case Level::Group: return parent == Level::Group || parent == Level::Application;
    case Level::Application: return parent == Level::System;
    case Level::System: return false;
  }
  return false;
}

std::size_t UIHierarchy::count(Level level) const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [&](const HierarchyNode& n) { return n.level == level; }));
}

std::optional<NodeIndex> UIHierarchy::find(Level level, std::string_view id,
                                           std::optional<NodeIndex> parent) const {
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.level == level && n.id == id && n.parent == parent) return NodeIndex{i};
  }
  return std::nullopt;
}

std::vector<NodeIndex> UIHierarchy::find_all(Level level, std::string_view id) const {
  std::vector<NodeIndex> out;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].level == level && nodes[i].id == id) out.push_back(NodeIndex{i});
  }
  return out;
}

bool UIHierarchy::within(NodeIndex node, NodeIndex ancestor) const {
  std::optional<NodeIndex> cur = node;
  for (std::size_t steps = 0; cur && contains(*cur) && steps <= nodes.size(); ++steps) {
    if (*cur == ancestor) return true;
    cur = at(*cur).parent;
  }
  return false;
}

std::optional<UserIndex> UILog::find_user(std::string_view id) const {
  for (std::uint32_t i = 0; i < users.size(); ++i) {
    if (users[i].id == id) return UserIndex{i};
  }
  return std::nullopt;
}

std::optional<TaskIndex> UILog::find_task(std::string_view id) const {
  for (std::uint32_t i = 0; i < tasks.size(); ++i) {
    if (tasks[i].id == id) return TaskIndex{i};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

TargetRef checked(Level level, NodeIndex node, const UIHierarchy& hierarchy) {
  if (!hierarchy.contains(node)) {
    throw Error(ErrorCode::DanglingReference,
                std::string(to_string(level)) + " node #" + std::to_string(node.value) + " does not exist");
  }
  if (hierarchy.at(node).level != level) {
    throw Error(ErrorCode::LevelViolation, "node '" + hierarchy.at(node).id + "' is not a " +
                                               std::string(to_string(level)));
  }
  return TargetRef{level, node};
}

}  // namespace

TargetRef resolve_target(const HierarchyAssociations& assoc, const UIHierarchy& hierarchy) {
  if (assoc.element) return checked(Level::Element, *assoc.element, hierarchy);
  if (assoc.group) return checked(Level::Group, *assoc.group, hierarchy);
  if (assoc.application) return checked(Level::Application, *assoc.application, hierarchy);
  if (assoc.system) return checked(Level::System, *assoc.system, hierarchy);
  throw Error(ErrorCode::NoTarget, "event has no UI hierarchy association");
}

TargetRef resolve_target(const InteractionEvent& event, const UIHierarchy& hierarchy) {
  if (!event.target) {
    throw Error(ErrorCode::NoTarget, "event '" + event.activity_name + "' has no target object");
  }
  return checked(event.target->level, event.target->node, hierarchy);
}

std::vector<NodeIndex> ancestry_nodes(NodeIndex node, const UIHierarchy& hierarchy) {
  std::vector<NodeIndex> path;
  std::optional<NodeIndex> cur = node;
  while (cur) {
    if (!hierarchy.contains(*cur)) {
      throw Error(ErrorCode::DanglingReference, "node #" + std::to_string(cur->value) + " does not exist");
    }
    if (path.size() > hierarchy.size()) {
      throw Error(ErrorCode::CycleDetected, "parent chain of '" + hierarchy.at(node).id + "' does not terminate");
    }
    path.push_back(*cur);
    cur = hierarchy.at(*cur).parent;
  }
  return path;
}

std::vector<std::string> ancestry(TargetRef target, const UIHierarchy& hierarchy) {
  std::vector<std::string> ids;
  for (NodeIndex n : ancestry_nodes(target.node, hierarchy)) ids.push_back(hierarchy.at(n).id);
  return ids;
}

// ---------------------------------------------------------------------------

NamingScheme NamingScheme::concatenation() { return NamingScheme{}; }

NamingScheme NamingScheme::abbreviated() {
  NamingScheme scheme;
  scheme.rewrites = {{"left click", "click"}, {"right click", "rclick"}};
  return scheme;
}

std::string make_activity_name(std::string_view action_type, std::string_view target_id,
                               const NamingScheme& naming) {
  std::string token(action_type.empty() ? kNoneAction : action_type);
  if (auto it = naming.rewrites.find(token); it != naming.rewrites.end()) token = it->second;
  std::string name = token;
  name += naming.separator;
  name += target_id;
  return name;
}

// ---------------------------------------------------------------------------

UIHierarchy build_hierarchy(const std::vector<NodeDeclaration>& declarations) {
  std::unordered_map<std::string, std::size_t> by_key;
  for (std::size_t i = 0; i < declarations.size(); ++i) {
    const auto& d = declarations[i];
    if (d.id.empty()) throw Error(ErrorCode::EmptyValue, "declaration #" + std::to_string(i) + " has an empty id");
    const std::string& key = d.key ? *d.key : d.id;
    if (!by_key.emplace(key, i).second) {
      throw Error(ErrorCode::DuplicateId, "declaration key '" + key + "' is used twice");
    }
  }

  std::vector<std::optional<std::size_t>> parent_of(declarations.size());
  for (std::size_t i = 0; i < declarations.size(); ++i) {
    const auto& d = declarations[i];
    if (!d.parent) continue;
    auto it = by_key.find(*d.parent);
    if (it == by_key.end()) {
      throw Error(ErrorCode::UnknownParent, "'" + d.id + "' names unknown parent '" + *d.parent + "'");
    }
    parent_of[i] = it->second;
  }

  // Cycle check before level checks so a self-loop reports as a cycle.
  for (std::size_t i = 0; i < declarations.size(); ++i) {
    std::optional<std::size_t> cur = parent_of[i];
    for (std::size_t steps = 0; cur; ++steps) {
      if (*cur == i || steps > declarations.size()) {
        throw Error(ErrorCode::CycleDetected, "'" + declarations[i].id + "' is its own ancestor");
      }
      cur = parent_of[*cur];
    }
  }

  for (std::size_t i = 0; i < declarations.size(); ++i) {
    if (!parent_of[i]) continue;
    const auto& child = declarations[i];
    const auto& parent = declarations[*parent_of[i]];
    if (!may_parent(child.level, parent.level)) {
      throw Error(ErrorCode::LevelViolation, std::string(to_string(child.level)) + " '" + child.id +
                                                 "' cannot be part of " + std::string(to_string(parent.level)) +
                                                 " '" + parent.id + "'");
    }
  }

  UIHierarchy out;
  out.nodes.reserve(declarations.size());
  std::map<std::tuple<std::int64_t, Level, std::string>, std::size_t> siblings;
  for (std::size_t i = 0; i < declarations.size(); ++i) {
    const auto& d = declarations[i];
    std::int64_t parent_slot = parent_of[i] ? static_cast<std::int64_t>(*parent_of[i]) : -1;
    if (!siblings.emplace(std::tuple{parent_slot, d.level, d.id}, i).second) {
      throw Error(ErrorCode::DuplicateId, std::string(to_string(d.level)) + " id '" + d.id +
                                              "' is not unique among its siblings");
    }
    HierarchyNode node;
    node.level = d.level;
    node.id = d.id;
    if (parent_of[i]) node.parent = NodeIndex{static_cast<std::uint32_t>(*parent_of[i])};
    node.attributes = d.attributes;
    node.current_state = d.current_state;
    out.nodes.push_back(std::move(node));
  }
  return out;
}

HierarchyBuilder::HierarchyBuilder(UIHierarchy hierarchy) : hierarchy_(std::move(hierarchy)) {
  for (std::uint32_t i = 0; i < hierarchy_.nodes.size(); ++i) {
    const auto& n = hierarchy_.nodes[i];
    std::int64_t slot = n.parent ? static_cast<std::int64_t>(n.parent->value) : -1;
    index_.emplace(Key{slot, n.level, n.id}, NodeIndex{i});
  }
}

NodeIndex HierarchyBuilder::ensure(Level level, std::string id, std::optional<NodeIndex> parent) {
  if (id.empty()) throw Error(ErrorCode::EmptyValue, std::string(to_string(level)) + " id must not be empty");
  if (parent) {
    if (!hierarchy_.contains(*parent)) {
      throw Error(ErrorCode::UnknownParent, "parent #" + std::to_string(parent->value) + " does not exist");
    }
    if (!may_parent(level, hierarchy_.at(*parent).level)) {
      throw Error(ErrorCode::LevelViolation, std::string(to_string(level)) + " '" + id + "' cannot be part of " +
                                                 std::string(to_string(hierarchy_.at(*parent).level)));
    }
  }
  std::int64_t slot = parent ? static_cast<std::int64_t>(parent->value) : -1;
  Key key{slot, level, id};
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  NodeIndex idx{static_cast<std::uint32_t>(hierarchy_.nodes.size())};
  hierarchy_.nodes.push_back(HierarchyNode{level, std::move(id), parent, {}, std::nullopt});
  index_.emplace(std::move(key), idx);
  return idx;
}

HierarchyAssociations associate(HierarchyBuilder& builder, const std::optional<std::string>& system,
                                const std::optional<std::string>& application,
                                const std::vector<std::string>& group_path,
                                const std::optional<std::string>& element) {
  HierarchyAssociations assoc;
  if (system) assoc.system = builder.ensure(Level::System, *system, std::nullopt);
  if (application) assoc.application = builder.ensure(Level::Application, *application, assoc.system);
  std::optional<NodeIndex> container = assoc.application;
  for (const auto& g : group_path) {
    container = builder.ensure(Level::Group, g, container);
    assoc.group = container;
  }
  if (element) assoc.element = builder.ensure(Level::Element, *element, container);
  return assoc;
}

UserIndex intern_user(UILog& log, std::string_view id) {
  if (id.empty()) throw Error(ErrorCode::EmptyValue, "user id must not be empty");
  if (auto found = log.find_user(id)) return *found;
  log.users.push_back(UserRef{std::string(id), {}});
  return UserIndex{static_cast<std::uint32_t>(log.users.size() - 1)};
}

TaskIndex intern_task(UILog& log, std::string_view id) {
  if (id.empty()) throw Error(ErrorCode::EmptyValue, "task id must not be empty");
  if (auto found = log.find_task(id)) return *found;
  log.tasks.push_back(TaskRef{std::string(id), {}});
  return TaskIndex{static_cast<std::uint32_t>(log.tasks.size() - 1)};
}

UILog append_event(UILog log, InteractionEvent event, AppendOptions options) {
  if (event.activity_name.empty()) throw Error(ErrorCode::EmptyValue, "activity name is required");
  if (event.action && event.action->action_type.empty()) {
    throw Error(ErrorCode::EmptyValue, "action type must not be empty (use \"none\")");
  }
  if (event.target) {
    if (!log.hierarchy.contains(event.target->node) ||
        log.hierarchy.at(event.target->node).level != event.target->level) {
      throw Error(ErrorCode::UnresolvedReference, "target of '" + event.activity_name + "' is not in the hierarchy");
    }
  }
  if (event.user && event.user->value >= log.users.size()) {
    throw Error(ErrorCode::UnresolvedReference, "user of '" + event.activity_name + "' is not registered");
  }
  if (event.task && event.task->value >= log.tasks.size()) {
    throw Error(ErrorCode::UnresolvedReference, "task of '" + event.activity_name + "' is not registered");
  }

  std::size_t index = log.events.size();
  if (options.strict_order && event.timestamp) {
    auto previous_ts = [&](auto first, auto last) -> std::optional<Timestamp> {
      for (auto it = last; it != first;) {
        --it;
        if (log.events[*it].timestamp) return log.events[*it].timestamp;
      }
      return std::nullopt;
    };
    std::optional<Timestamp> prev;
    if (log.traces && !log.traces->empty()) {
      const auto& idx = log.traces->back().events;
      prev = previous_ts(idx.begin(), idx.end());
    } else if (!log.traces) {
      for (auto it = log.events.rbegin(); it != log.events.rend() && !prev; ++it) prev = it->timestamp;
    }
    if (prev && *event.timestamp < *prev) {
      throw Error(ErrorCode::OutOfOrderTimestamp, "'" + event.activity_name + "' at " +
                                                      format_iso8601(*event.timestamp) + " precedes " +
                                                      format_iso8601(*prev));
    }
  }

  log.events.push_back(std::move(event));
  if (log.traces) {
    if (log.traces->empty()) log.traces->push_back(Trace{"1", {}, {}});
    log.traces->back().events.push_back(index);
  }
  return log;
}

}  // namespace uilog
