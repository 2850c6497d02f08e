#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "miniconf/model.hpp"

namespace miniconf {

class UnknownTimezoneError : public std::invalid_argument {
 public:
  explicit UnknownTimezoneError(std::string_view zone);
};

/// True if `zone` names a zone in the platform zone database.
bool is_known_timezone(std::string_view zone);

struct LocalDate {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  std::string iso() const;  // "2020-04-28"
  auto operator<=>(const LocalDate&) const = default;
};

/// A wall-clock reading in some zone together with its UTC offset.
struct LocalDateTime {
  LocalDate date;
  int hour = 0;
  int minute = 0;
  int second = 0;
  int utc_offset_seconds = 0;
  UtcInstant instant{};  // the absolute time this reading denotes

  std::string iso() const;  // "2020-04-28T01:30:00+02:00"
  std::string hhmm() const;
  bool operator==(const LocalDateTime&) const = default;
};

struct LocalizedEvent {
  EventRecord event;
  LocalDateTime local_start;
  LocalDateTime local_end;
  LocalDate day_key;
};

struct ScheduleDay {
  LocalDate day_key;
  std::vector<LocalizedEvent> events;
};

/// Days ascending; within a day by start instant, ties by uid.
using DailySchedule = std::vector<ScheduleDay>;

LocalDateTime to_local(UtcInstant t, std::string_view zone);

/// Groups events into local calendar days of `zone`.
/// Throws UnknownTimezoneError.
DailySchedule localize_schedule(const std::vector<EventRecord>& events, std::string_view zone);

inline constexpr std::string_view kIcalProdId = "-//miniconf//Static Conference Site Generator//EN";

/// Host part of a URL ("https://user@conf.org:8080/x" -> "conf.org").
std::string url_host(std::string_view url);

/// Escapes TEXT values (backslash, semicolon, comma, newline).
std::string ical_escape_text(std::string_view text);

/// Folds one content line at 75 octets, CRLF-terminated. Never splits a
/// UTF-8 sequence.
std::string ical_fold(std::string_view line);

/// One VCALENDAR with a VEVENT per event, uid-ascending, CRLF line endings.
std::string export_ical(const ConferenceBundle& bundle);

}  // namespace miniconf
