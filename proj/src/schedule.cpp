#include "miniconf/schedule.hpp"

#include <algorithm>
#include <cctype>

#include <absl/time/time.h>
#include <fmt/format.h>

namespace miniconf {

UnknownTimezoneError::UnknownTimezoneError(std::string_view zone)
    : std::invalid_argument(fmt::format("unknown timezone '{}'", zone)) {}

namespace {

bool load_zone(std::string_view name, absl::TimeZone& tz) {
  if (name.empty()) return false;
  return absl::LoadTimeZone(std::string(name), &tz);
}

absl::TimeZone require_zone(std::string_view name) {
  absl::TimeZone tz;
  if (!load_zone(name, tz)) throw UnknownTimezoneError(name);
  return tz;
}

LocalDateTime localize(UtcInstant t, const absl::TimeZone& tz) {
  auto info = tz.At(absl::FromUnixSeconds(t.time_since_epoch().count()));
  const auto& cs = info.cs;
  LocalDateTime out;
  out.date = {int(cs.year()), unsigned(cs.month()), unsigned(cs.day())};
  out.hour = cs.hour();
  out.minute = cs.minute();
  out.second = cs.second();
  out.utc_offset_seconds = info.offset;
  out.instant = t;
  return out;
}

}  // namespace

bool is_known_timezone(std::string_view zone) {
  absl::TimeZone tz;
  return load_zone(zone, tz);
}

std::string LocalDate::iso() const { return fmt::format("{:04d}-{:02d}-{:02d}", year, month, day); }

std::string LocalDateTime::iso() const {
  int off = utc_offset_seconds;
  char sign = off < 0 ? '-' : '+';
  off = off < 0 ? -off : off;
  return fmt::format("{}T{:02d}:{:02d}:{:02d}{}{:02d}:{:02d}", date.iso(), hour, minute, second,
                     sign, off / 3600, (off % 3600) / 60);
}

std::string LocalDateTime::hhmm() const { return fmt::format("{:02d}:{:02d}", hour, minute); }

LocalDateTime to_local(UtcInstant t, std::string_view zone) { return localize(t, require_zone(zone)); }

DailySchedule localize_schedule(const std::vector<EventRecord>& events, std::string_view zone) {
  auto tz = require_zone(zone);

  std::vector<LocalizedEvent> all;
  all.reserve(events.size());
  for (const auto& e : events) {
    LocalizedEvent le{e, localize(e.start_utc, tz), localize(e.end_utc, tz), {}};
    le.day_key = le.local_start.date;
    all.push_back(std::move(le));
  }
  std::sort(all.begin(), all.end(), [](const LocalizedEvent& a, const LocalizedEvent& b) {
    if (a.day_key != b.day_key) return a.day_key < b.day_key;
    if (a.event.start_utc != b.event.start_utc) return a.event.start_utc < b.event.start_utc;
    return a.event.uid < b.event.uid;
  });

  DailySchedule days;
  for (auto& le : all) {
    if (days.empty() || days.back().day_key != le.day_key) days.push_back({le.day_key, {}});
    days.back().events.push_back(std::move(le));
  }
  return days;
}

std::string url_host(std::string_view url) {
  if (auto scheme = url.find("://"); scheme != std::string_view::npos) url.remove_prefix(scheme + 3);
  url = url.substr(0, url.find_first_of("/?#"));
  if (auto at = url.rfind('@'); at != std::string_view::npos) url.remove_prefix(at + 1);
  if (!url.empty() && url.front() == '[') {
    auto close = url.find(']');
    return std::string(url.substr(0, close == std::string_view::npos ? url.size() : close + 1));
  }
  std::string host(url.substr(0, url.find(':')));
  for (auto& c : host) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return host;
}

std::string ical_escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    switch (c) {
      case '\\': out += "\\\\"; break;
      case ';': out += "\\;"; break;
      case ',': out += "\\,"; break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        out += "\\n";
        break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

std::string ical_fold(std::string_view line) {
  constexpr std::size_t kLimit = 75;
  std::string out;
  std::size_t budget = kLimit;
  while (line.size() > budget) {
    std::size_t cut = budget;
    // Back off to a UTF-8 lead byte so a code point is never split.
    while (cut > 0 && (static_cast<unsigned char>(line[cut]) & 0xC0) == 0x80) --cut;
    out.append(line.substr(0, cut));
    out += "\r\n ";
    line.remove_prefix(cut);
    budget = kLimit - 1;  // the leading space counts toward the limit
  }
  out.append(line);
  out += "\r\n";
  return out;
}

namespace {

std::string ical_utc(UtcInstant t) {
  using namespace std::chrono;
  auto day = floor<days>(t);
  year_month_day ymd{day};
  hh_mm_ss hms{t - day};
  return fmt::format("{:04d}{:02d}{:02d}T{:02d}{:02d}{:02d}Z", int(ymd.year()),
                     unsigned(ymd.month()), unsigned(ymd.day()), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

}  // namespace

std::string export_ical(const ConferenceBundle& bundle) {
  std::vector<const EventRecord*> events;
  for (const auto& e : bundle.events) events.push_back(&e);
  std::sort(events.begin(), events.end(),
            [](const EventRecord* a, const EventRecord* b) { return a->uid < b->uid; });

  std::string host = url_host(bundle.config.base_url);
  if (host.empty()) host = "localhost";

  std::string out;
  auto line = [&out](std::string_view l) { out += ical_fold(l); };
  line("BEGIN:VCALENDAR");
  line("VERSION:2.0");
  line(fmt::format("PRODID:{}", kIcalProdId));
  line("CALSCALE:GREGORIAN");
  if (!bundle.config.name.empty())
    line(fmt::format("X-WR-CALNAME:{}", ical_escape_text(bundle.config.name)));
  for (const EventRecord* e : events) {
    line("BEGIN:VEVENT");
    line(fmt::format("UID:{}@{}", e->uid, host));
    // DTSTAMP pinned to the start instant so exports are reproducible.
    line(fmt::format("DTSTAMP:{}", ical_utc(e->start_utc)));
    line(fmt::format("DTSTART:{}", ical_utc(e->start_utc)));
    line(fmt::format("DTEND:{}", ical_utc(e->end_utc)));
    line(fmt::format("SUMMARY:{}", ical_escape_text(e->title)));
    if (e->description) line(fmt::format("DESCRIPTION:{}", ical_escape_text(*e->description)));
    line(fmt::format("CATEGORIES:{}", ical_escape_text(to_string(e->kind))));
    if (e->link_url) line(fmt::format("URL:{}", *e->link_url));
    line("END:VEVENT");
  }
  line("END:VCALENDAR");
  return out;
}

}  // namespace miniconf
