#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace uilog {

/// UTC instant with millisecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

struct ParsedTimestamp {
  Timestamp value;
  bool truncated = false;  // input carried sub-millisecond digits
};

/// Formats as ISO-8601 with an explicit offset, e.g. "2023-05-04T09:15:00.250+00:00".
std::string format_iso8601(Timestamp ts);

/// Accepts "YYYY-MM-DD[Thh:mm[:ss[.fraction]]][Z|+hh:mm|-hh:mm|+hhmm]".
/// A space may replace the 'T'. Missing offset means UTC.
std::optional<ParsedTimestamp> parse_iso8601(std::string_view text);

/// Parses `text` against a strftime-like pattern. Supported directives:
/// %Y %m %d %H %M %S %f (fraction, any digit count) %z (Z or +hh[:]mm) %%.
/// The special patterns "iso8601", "epoch_ms" and "epoch_s" are also accepted.
std::optional<ParsedTimestamp> parse_timestamp(std::string_view text, std::string_view pattern);

/// Formats with the same pattern language as parse_timestamp (%f prints
/// three digits, %z prints "+00:00").
std::string format_timestamp(Timestamp ts, std::string_view pattern);

}  // namespace uilog
