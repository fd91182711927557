#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "uilog/model.hpp"

namespace uilog {

/// Canonical attribute keys of the UILog XES extension. Case-sensitive.
namespace xes_keys {
inline constexpr std::string_view kPrefix = "uilog";
inline constexpr std::string_view kExtensionName = "UILog";
inline constexpr std::string_view kExtensionUri = "urn:uilog:xes-extension:uilog.xesext";

inline constexpr std::string_view kActionType = "uilog:action-type";
inline constexpr std::string_view kInputValue = "uilog:input-value";
inline constexpr std::string_view kUIElement = "uilog:ui-element";
inline constexpr std::string_view kUIElementState = "uilog:ui-element-state";
inline constexpr std::string_view kUIGroupPath = "uilog:ui-group-path";
inline constexpr std::string_view kApplication = "uilog:application";
inline constexpr std::string_view kSystem = "uilog:system";
inline constexpr std::string_view kUser = "uilog:user";
inline constexpr std::string_view kTask = "uilog:task";

/// Log-level marker for a log whose single trace only exists because XES requires one.
inline constexpr std::string_view kUntraced = "uilog:untraced";

inline constexpr std::string_view kConceptName = "concept:name";
inline constexpr std::string_view kTimeTimestamp = "time:timestamp";
}  // namespace xes_keys

/// Joins group ids outermost-first with '/', escaping '\' and '/' with '\'.
std::string encode_group_path(const std::vector<std::string>& groups);
/// Inverse of encode_group_path. Empty segments are dropped.
std::vector<std::string> decode_group_path(std::string_view path);

/// Serializes a log as an XES document. Throws Error(InvalidLog) if the log
/// does not validate and Error(UnserializableValue) for attribute values that
/// exceed the nesting cap, contain characters XML 1.0 cannot carry, or use
/// reserved keys.
///
/// Not carried: attributes of actions, users, tasks and hierarchy nodes, and
/// node-level current state (the per-event state is carried).
struct XesWriteOptions {
  /// When false, skip the up-front validation; structurally broken content
  /// (dangling or cyclic references) still throws.
  bool require_valid = true;
};

std::string write_xes(const UILog& log, const XesWriteOptions& options = {});

struct XesReadOptions {
  /// Alternative key spellings mapped to the canonical keys above.
  std::map<std::string, std::string, std::less<>> key_aliases;
  /// Load events without concept:name with an empty activity name instead of
  /// failing; validate() then reports them.
  bool allow_missing_names = false;
  /// Receives non-fatal diagnostics such as sub-millisecond timestamp truncation.
  std::vector<std::string>* warnings = nullptr;
};

/// Parses an XES document. Throws Error(MalformedDocument) or
/// Error(MissingConceptName).
UILog read_xes(std::string_view document, const XesReadOptions& options = {});

/// The UILog extension definition document. Byte-stable.
std::string emit_extension_definition();

}  // namespace uilog
