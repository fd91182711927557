#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uilog/model.hpp"

namespace uilog {

enum class ViolationCode {
  MissingActivityName,
  DanglingReference,
  CycleDetected,
  LevelViolation,
  OutOfOrderTimestamp,
  DuplicateId,
  PartitionGap,
  PartitionOverlap,
  EmptyValue,
};

std::string_view to_string(ViolationCode code);

/// One invariant breach. Event-scoped codes set `event_index`, node-scoped
/// codes set `node_id` (and `node_index`), trace-scoped codes set `trace_id`.
struct Violation {
  ViolationCode code;
  std::optional<std::size_t> event_index;
  std::optional<std::string> node_id;
  std::optional<std::size_t> node_index;
  std::optional<std::string> trace_id;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t checked_events = 0;
  std::size_t checked_nodes = 0;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationCode code) const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Checks every model invariant; never throws for invalid content.
ValidationReport validate(const UILog& log);

// ---------------------------------------------------------------------------
// Coverage

enum class CoreAttribute { ActionType, TargetElement, UIHierarchy, Application, InputValue, Timestamp, CurrentState };

inline constexpr std::array<CoreAttribute, 7> kCoreAttributes = {
    CoreAttribute::ActionType, CoreAttribute::TargetElement, CoreAttribute::UIHierarchy, CoreAttribute::Application,
    CoreAttribute::InputValue, CoreAttribute::Timestamp,     CoreAttribute::CurrentState};

std::string_view to_string(CoreAttribute attr);

struct CoverageRow {
  CoreAttribute attribute;
  std::size_t events_present = 0;
  std::size_t events_total = 0;
  double ratio = 0.0;
  /// Log-level view: present in at least one event.
  bool in_log = false;
};

/// Per-event presence of the core attributes.
///
/// Presence rules: an action type of "none" counts as present; ui_hierarchy
/// counts events whose resolved target has at least one ancestor above it;
/// application counts events whose target is, or lies below, an application.
struct CoverageMatrix {
  std::array<CoverageRow, kCoreAttributes.size()> rows{};

  const CoverageRow& operator[](CoreAttribute attr) const { return rows[static_cast<std::size_t>(attr)]; }
};

CoverageMatrix coverage(const UILog& log);

struct LogProfile {
  std::size_t events = 0;
  std::size_t distinct_activities = 0;
  std::size_t distinct_action_types = 0;
  std::size_t systems = 0;
  std::size_t applications = 0;
  std::size_t groups = 0;
  std::size_t elements = 0;
  std::size_t users = 0;
  std::size_t tasks = 0;
  std::optional<std::size_t> traces;  // unset for untraced logs
};

LogProfile profile(const UILog& log);

// ---------------------------------------------------------------------------
// Rendering

std::string render_text(const ValidationReport& report);
/// JSON document with one record per violation (code, locator, message).
std::string render_json(const ValidationReport& report);

std::string render_text(const CoverageMatrix& matrix, const LogProfile& profile);
std::string render_json(const CoverageMatrix& matrix, const LogProfile& profile);

}  // namespace uilog
