#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uilog {

enum class ErrorCode {
  NoTarget,
  DanglingReference,
  CycleDetected,
  UnknownParent,
  LevelViolation,
  DuplicateId,
  EmptyValue,
  OutOfOrderTimestamp,
  UnresolvedReference,
  InvalidLog,
  UnserializableValue,
  MalformedDocument,
  MissingConceptName,
  MissingColumn,
  NoUsableColumns,
  InvalidMapping,
  BadTimestamp,
  MissingCaseAttribute,
  MissingTimestamps,
  InvalidNotion,
  UnknownGroup,
  InvalidRule,
  BadConfig,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception type thrown by every library operation. The code is stable and
/// is what callers (and the CLI exit-code mapping) should branch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uilog
