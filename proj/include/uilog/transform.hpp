#pragma once

#include <chrono>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uilog/model.hpp"

namespace uilog {

// ---------------------------------------------------------------------------
// Case notions

/// Groups events by equal value of a key. "user" and "task" select the event's
/// user/task id; any other key selects the extension attribute of that name.
struct ByAttribute {
  std::string key;
};

/// Opens a new case whenever the gap to the previous event exceeds `threshold`.
struct ByTimeGap {
  std::chrono::milliseconds threshold{0};
};

/// Opens a new case at every event whose activity name is a marker.
struct ByMarker {
  std::set<std::string, std::less<>> markers;
};

struct CaseNotion;

/// Applies its notions left to right, each refining the previous partition.
struct Composite {
  std::vector<CaseNotion> steps;
};

struct CaseNotion {
  std::variant<ByAttribute, ByTimeGap, ByMarker, Composite> kind;
};

/// Partitions the log's event sequence (existing traces are discarded) into
/// traces. Trace ids are the attribute value for ByAttribute, the 1-based
/// ordinal for gaps and markers, and '/'-joined for composites. Traces are
/// ordered by their first event.
///
/// Throws Error(MissingCaseAttribute) listing the events that lack the key,
/// Error(MissingTimestamps) for ByTimeGap over untimed events and
/// Error(InvalidNotion) for a non-positive threshold or empty marker set.
UILog segment(const UILog& log, const CaseNotion& notion);

/// Removes the trace partition. Traces are concatenated in order of their
/// first event's timestamp (traces without one come last), ties by trace id.
UILog flatten(const UILog& log);

// ---------------------------------------------------------------------------
// Abstraction

struct AbstractionRule {
  std::string group_id;
  std::string trigger_activity;
  std::string abstract_name;
  /// Element ids whose latest input values populate the abstract event's
  /// input map, in this key order. Empty collects every element in the group.
  std::vector<std::string> collect;
  /// true: the whole run collapses into the abstract event.
  /// false: only the trigger and the contributing inputs collapse; superseded
  /// or unrelated in-group events stay in place.
  bool drop_noise = true;
};

struct AbstractionResult {
  UILog log;
  /// TriggerNeverFires diagnostics for runs left unabstracted.
  std::vector<std::string> warnings;
  std::size_t abstracted_runs = 0;
};

/// Replaces each run of consecutive events inside a rule's UI group that ends
/// at the trigger activity by one event: activity = abstract name, action type
/// "none", target = the group, input = {element id -> latest input}, timestamp,
/// user and task of the trigger. Runs never cross trace boundaries.
///
/// Throws Error(UnknownGroup) if a rule's group is not in the hierarchy and
/// Error(InvalidRule) for empty names.
AbstractionResult abstract(const UILog& log, const std::vector<AbstractionRule>& rules);

// ---------------------------------------------------------------------------
// Definitions in the key-value text format

/// One `[notion]` section per step (several sections form a composite):
///   kind = attribute | time_gap | marker
///   key = user                       (attribute)
///   threshold = 60s                  (time_gap; ms, s, m, h suffixes)
///   markers = A_Login, A_Logout      (marker; ',' separated)
CaseNotion load_case_notion(std::string_view text);

/// One `[rule]` section per rule:
///   group = login mask
///   trigger = click login
///   name = A_Login
///   collect = username, password
///   drop_noise = true
std::vector<AbstractionRule> load_abstraction_rules(std::string_view text);

}  // namespace uilog
