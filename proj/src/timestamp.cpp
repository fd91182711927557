#include "uilog/timestamp.hpp"

#include <charconv>
#include <cstdio>

namespace uilog {

namespace chr = std::chrono;

namespace {

struct Fields {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;
  std::int64_t millis = 0;
  int offset_minutes = 0;
  bool truncated = false;
};

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  // Reads exactly `width` digits.
  bool digits(int width, int& out) {
    if (pos_ + width > text_.size()) return false;
    int value = 0;
    for (int i = 0; i < width; ++i) {
      char c = text_[pos_ + i];
      if (c < '0' || c > '9') return false;
      value = value * 10 + (c - '0');
    }
    pos_ += width;
    out = value;
    return true;
  }

  // Fractional seconds of arbitrary length; keeps millisecond precision.
  bool fraction(std::int64_t& millis, bool& truncated) {
    std::size_t start = pos_;
    millis = 0;
    int count = 0;
    while (!done() && peek() >= '0' && peek() <= '9') {
      if (count < 3) {
        millis = millis * 10 + (peek() - '0');
      } else if (peek() != '0') {
        truncated = true;
      }
      ++count;
      ++pos_;
    }
    for (int i = count; i < 3; ++i) millis *= 10;
    return pos_ > start;
  }

  bool offset(int& minutes) {
    if (consume('Z') || consume('z')) {
      minutes = 0;
      return true;
    }
    int sign = 0;
    if (consume('+')) {
      sign = 1;
    } else if (consume('-')) {
      sign = -1;
    } else {
      return false;
    }
    int hh = 0;
    int mm = 0;
    if (!digits(2, hh)) return false;
    consume(':');
    if (!digits(2, mm)) return false;
    if (hh > 23 || mm > 59) return false;
    minutes = sign * (hh * 60 + mm);
    return true;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::optional<ParsedTimestamp> finish(const Fields& f) {
  if (f.hour > 23 || f.minute > 59 || f.second > 60) return std::nullopt;
  chr::year_month_day ymd{chr::year{f.year}, chr::month{f.month}, chr::day{f.day}};
  if (!ymd.ok()) return std::nullopt;
  Timestamp ts = chr::time_point_cast<chr::milliseconds>(chr::sys_days{ymd}) + chr::hours{f.hour} +
                 chr::minutes{f.minute} + chr::seconds{f.second} + chr::milliseconds{f.millis} -
                 chr::minutes{f.offset_minutes};
  return ParsedTimestamp{ts, f.truncated};
}

std::optional<ParsedTimestamp> parse_epoch(std::string_view text, std::int64_t scale) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return ParsedTimestamp{Timestamp{chr::milliseconds{value * scale}}, false};
}

}  // namespace

std::string format_iso8601(Timestamp ts) {
  auto days = chr::floor<chr::days>(ts);
  chr::year_month_day ymd{days};
  chr::hh_mm_ss<chr::milliseconds> tod{ts - days};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03d+00:00", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()), static_cast<int>(tod.subseconds().count()));
  return buf;
}

std::optional<ParsedTimestamp> parse_iso8601(std::string_view text) {
  Cursor in(text);
  Fields f;
  int month = 0;
  int day = 0;
  if (!in.digits(4, f.year) || !in.consume('-') || !in.digits(2, month) || !in.consume('-') ||
      !in.digits(2, day)) {
    return std::nullopt;
  }
  f.month = static_cast<unsigned>(month);
  f.day = static_cast<unsigned>(day);
  if (in.consume('T') || in.consume('t') || in.consume(' ')) {
    if (!in.digits(2, f.hour) || !in.consume(':') || !in.digits(2, f.minute)) return std::nullopt;
    if (in.consume(':')) {
      if (!in.digits(2, f.second)) return std::nullopt;
      if (in.consume('.') || in.consume(',')) {
        if (!in.fraction(f.millis, f.truncated)) return std::nullopt;
      }
    }
    if (!in.done() && !in.offset(f.offset_minutes)) return std::nullopt;
  }
  if (!in.done()) return std::nullopt;
  return finish(f);
}

std::optional<ParsedTimestamp> parse_timestamp(std::string_view text, std::string_view pattern) {
  if (pattern.empty() || pattern == "iso8601") return parse_iso8601(text);
  if (pattern == "epoch_ms") return parse_epoch(text, 1);
  if (pattern == "epoch_s") return parse_epoch(text, 1000);

  Cursor in(text);
  Fields f;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    char p = pattern[i];
    if (p != '%') {
      if (!in.consume(p)) return std::nullopt;
      continue;
    }
    if (++i >= pattern.size()) return std::nullopt;
    int v = 0;
    switch (pattern[i]) {
      case 'Y':
        if (!in.digits(4, f.year)) return std::nullopt;
        break;
      case 'm':
        if (!in.digits(2, v)) return std::nullopt;
        f.month = static_cast<unsigned>(v);
        break;
      case 'd':
        if (!in.digits(2, v)) return std::nullopt;
        f.day = static_cast<unsigned>(v);
        break;
      case 'H':
        if (!in.digits(2, f.hour)) return std::nullopt;
        break;
      case 'M':
        if (!in.digits(2, f.minute)) return std::nullopt;
        break;
      case 'S':
        if (!in.digits(2, f.second)) return std::nullopt;
        break;
      case 'f':
        if (!in.fraction(f.millis, f.truncated)) return std::nullopt;
        break;
      case 'z':
        if (!in.offset(f.offset_minutes)) return std::nullopt;
        break;
      case '%':
        if (!in.consume('%')) return std::nullopt;
        break;
      default:
        return std::nullopt;
    }
  }
  if (!in.done()) return std::nullopt;
  return finish(f);
}

std::string format_timestamp(Timestamp ts, std::string_view pattern) {
  if (pattern.empty() || pattern == "iso8601") return format_iso8601(ts);
  if (pattern == "epoch_ms") return std::to_string(ts.time_since_epoch().count());
  if (pattern == "epoch_s") return std::to_string(chr::floor<chr::seconds>(ts).time_since_epoch().count());

  auto days = chr::floor<chr::days>(ts);
  chr::year_month_day ymd{days};
  chr::hh_mm_ss<chr::milliseconds> tod{ts - days};
  std::string out;
  char buf[16];
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '%' || i + 1 >= pattern.size()) {
      out += pattern[i];
      continue;
    }
    switch (pattern[++i]) {
      case 'Y': std::snprintf(buf, sizeof buf, "%04d", static_cast<int>(ymd.year())); break;
      case 'm': std::snprintf(buf, sizeof buf, "%02u", static_cast<unsigned>(ymd.month())); break;
      case 'd': std::snprintf(buf, sizeof buf, "%02u", static_cast<unsigned>(ymd.day())); break;
      case 'H': std::snprintf(buf, sizeof buf, "%02d", static_cast<int>(tod.hours().count())); break;
      case 'M': std::snprintf(buf, sizeof buf, "%02d", static_cast<int>(tod.minutes().count())); break;
      case 'S': std::snprintf(buf, sizeof buf, "%02d", static_cast<int>(tod.seconds().count())); break;
      case 'f': std::snprintf(buf, sizeof buf, "%03d", static_cast<int>(tod.subseconds().count())); break;
      case 'z': std::snprintf(buf, sizeof buf, "+00:00"); break;
      case '%': std::snprintf(buf, sizeof buf, "%%"); break;
      default: std::snprintf(buf, sizeof buf, "%%%c", pattern[i]); break;
    }
    out += buf;
  }
  return out;
}

}  // namespace uilog
