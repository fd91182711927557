#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "uilog/attribute.hpp"
#include "uilog/timestamp.hpp"

namespace uilog {

/// Strongly typed index into one of the log's registries.
template <typename Tag>
struct Index {
  std::uint32_t value = 0;

  friend auto operator<=>(const Index&, const Index&) = default;
};

using NodeIndex = Index<struct NodeTag>;
using UserIndex = Index<struct UserTag>;
using TaskIndex = Index<struct TaskTag>;

/// Levels of the UI hierarchy, ordered from most to least specific.
enum class Level { Element, Group, Application, System };

std::string_view to_string(Level level);

/// True when a node of `child` level may be parented to a node of `parent` level:
/// element -> group|application, group -> group|application, application -> system.
bool may_parent(Level child, Level parent);

/// One node of the UI hierarchy. `current_state` is only meaningful for elements.
struct HierarchyNode {
  Level level = Level::Element;
  std::string id;
  std::optional<NodeIndex> parent;
  AttributeSet attributes;
  std::optional<AttributeValue> current_state;

  friend bool operator==(const HierarchyNode&, const HierarchyNode&) = default;
};

/// Forest of systems, applications, UI groups and UI elements. Plain data:
/// `build_hierarchy` and `validate` establish and check the invariants.
struct UIHierarchy {
  std::vector<HierarchyNode> nodes;

  const HierarchyNode& at(NodeIndex idx) const { return nodes.at(idx.value); }
  bool contains(NodeIndex idx) const { return idx.value < nodes.size(); }
  std::size_t size() const { return nodes.size(); }
  std::size_t count(Level level) const;

  /// Child of `parent` (or parentless node) with the given level and id.
  std::optional<NodeIndex> find(Level level, std::string_view id,
                                std::optional<NodeIndex> parent) const;
  std::vector<NodeIndex> find_all(Level level, std::string_view id) const;

  /// True if `node` equals `ancestor` or lies below it.
  bool within(NodeIndex node, NodeIndex ancestor) const;

  friend bool operator==(const UIHierarchy&, const UIHierarchy&) = default;
};

/// The target object of an action: a node at one of the four levels.
struct TargetRef {
  Level level = Level::Element;
  NodeIndex node;

  friend bool operator==(const TargetRef&, const TargetRef&) = default;
};

struct Action {
  std::string action_type;
  AttributeSet attributes;

  friend bool operator==(const Action&, const Action&) = default;
};

inline constexpr std::string_view kNoneAction = "none";

struct UserRef {
  std::string id;
  AttributeSet attributes;

  friend bool operator==(const UserRef&, const UserRef&) = default;
};

struct TaskRef {
  std::string id;
  AttributeSet attributes;

  friend bool operator==(const TaskRef&, const TaskRef&) = default;
};

/// One activity instance. Only `activity_name` is mandatory.
///
/// `element_state` is the target element's current state as observed at this
/// event; the hierarchy node keeps the most recently observed state.
struct InteractionEvent {
  std::string activity_name;
  std::optional<Action> action;
  std::optional<TargetRef> target;
  std::optional<AttributeValue> input_value;
  std::optional<AttributeValue> element_state;
  std::optional<Timestamp> timestamp;
  std::optional<UserIndex> user;
  std::optional<TaskIndex> task;
  AttributeSet attributes;

  friend bool operator==(const InteractionEvent&, const InteractionEvent&) = default;
};

struct Trace {
  std::string id;
  std::vector<std::size_t> events;  // indices into UILog::events, in trace order
  AttributeSet attributes;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct UILog {
  std::vector<InteractionEvent> events;
  UIHierarchy hierarchy;
  std::vector<UserRef> users;
  std::vector<TaskRef> tasks;
  AttributeSet attributes;
  std::optional<std::vector<Trace>> traces;

  bool traced() const { return traces.has_value(); }
  const UserRef& user(UserIndex idx) const { return users.at(idx.value); }
  const TaskRef& task(TaskIndex idx) const { return tasks.at(idx.value); }

  std::optional<UserIndex> find_user(std::string_view id) const;
  std::optional<TaskIndex> find_task(std::string_view id) const;

  friend bool operator==(const UILog&, const UILog&) = default;
};

/// Raw per-level associations of an event (as found in flat recordings or
/// XES attributes) before the target object has been determined.
struct HierarchyAssociations {
  std::optional<NodeIndex> element;
  std::optional<NodeIndex> group;
  std::optional<NodeIndex> application;
  std::optional<NodeIndex> system;

  bool empty() const { return !element && !group && !application && !system; }
};

/// The target object is the lowest-level association present:
/// element > group > application > system. Throws Error(NoTarget) when empty,
/// Error(DanglingReference) when the chosen node is missing.
TargetRef resolve_target(const HierarchyAssociations& assoc, const UIHierarchy& hierarchy);

/// Returns the event's target; throws Error(NoTarget) if it has none.
TargetRef resolve_target(const InteractionEvent& event, const UIHierarchy& hierarchy);

/// Node ids from `target` up to its root (inclusive).
std::vector<std::string> ancestry(TargetRef target, const UIHierarchy& hierarchy);

/// Node indices from `node` up to its root (inclusive). Throws on dangling
/// parents and on cycles.
std::vector<NodeIndex> ancestry_nodes(NodeIndex node, const UIHierarchy& hierarchy);

// ---------------------------------------------------------------------------
// Activity naming

/// Concatenates a (possibly rewritten) action token with the target id.
struct NamingScheme {
  std::string separator = " ";
  std::map<std::string, std::string, std::less<>> rewrites;

  /// Plain "<action_type> <target_id>".
  static NamingScheme concatenation();
  /// Concatenation with "left click" -> "click" and "right click" -> "rclick".
  static NamingScheme abbreviated();
};

std::string make_activity_name(std::string_view action_type, std::string_view target_id,
                               const NamingScheme& naming = NamingScheme::concatenation());

// ---------------------------------------------------------------------------
// Construction

struct NodeDeclaration {
  Level level = Level::Element;
  std::string id;
  /// Key of the parent declaration, if any.
  std::optional<std::string> parent;
  /// Handle other declarations use to name this node; defaults to `id`.
  std::optional<std::string> key;
  AttributeSet attributes;
  std::optional<AttributeValue> current_state;
};

/// Builds a hierarchy from declarations in any order. Throws Error with code
/// CycleDetected, UnknownParent, LevelViolation, DuplicateId or EmptyValue.
UIHierarchy build_hierarchy(const std::vector<NodeDeclaration>& declarations);

/// Incremental get-or-create access to a hierarchy, used by the readers.
class HierarchyBuilder {
 public:
  HierarchyBuilder() = default;
  explicit HierarchyBuilder(UIHierarchy hierarchy);

  /// Returns the node with this (level, id, parent), creating it if needed.
  NodeIndex ensure(Level level, std::string id, std::optional<NodeIndex> parent);

  UIHierarchy& hierarchy() { return hierarchy_; }
  UIHierarchy release() { return std::move(hierarchy_); }

 private:
  using Key = std::tuple<std::int64_t, Level, std::string>;
  UIHierarchy hierarchy_;
  std::map<Key, NodeIndex> index_;
};

/// Associations for a flat record of (system, application, group chain,
/// element) ids, creating nodes on first mention. Levels that cannot be
/// attached under the composition rules start a new root instead.
HierarchyAssociations associate(HierarchyBuilder& builder, const std::optional<std::string>& system,
                                const std::optional<std::string>& application,
                                const std::vector<std::string>& group_path,
                                const std::optional<std::string>& element);

/// Registry lookup-or-insert used while building a log.
UserIndex intern_user(UILog& log, std::string_view id);
TaskIndex intern_task(UILog& log, std::string_view id);

struct AppendOptions {
  bool strict_order = true;
};

/// Returns `log` with `event` appended (to the last trace when traced).
/// Throws Error(UnresolvedReference), Error(EmptyValue) or, in strict mode,
/// Error(OutOfOrderTimestamp).
UILog append_event(UILog log, InteractionEvent event, AppendOptions options = {});

}  // namespace uilog
