#include "miniconf/model.hpp"

#include <charconv>

namespace miniconf {

bool ConferenceConfig::page_enabled(std::string_view page) const {
  auto it = page_toggles.find(std::string(page));
  return it == page_toggles.end() || it->second;
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::keynote: return "keynote";
    case EventKind::social: return "social";
    case EventKind::paper_session: return "paper-session";
    case EventKind::qa: return "qa";
  }
  return "keynote";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
  if (text == "keynote") return EventKind::keynote;
  if (text == "social") return EventKind::social;
  if (text == "paper-session") return EventKind::paper_session;
  if (text == "qa") return EventKind::qa;
  return std::nullopt;
}

const EventRecord* ConferenceBundle::find_event(std::string_view uid) const {
  for (const auto& e : events)
    if (e.uid == uid) return &e;
  return nullptr;
}

bool is_slug(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

std::string format_utc(UtcInstant t) {
  using namespace std::chrono;
  auto day = floor<days>(t);
  year_month_day ymd{day};
  hh_mm_ss hms{t - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), int(hms.hours().count()),
                int(hms.minutes().count()), int(hms.seconds().count()));
  return buf;
}

namespace {

bool read_fixed(std::string_view& s, std::size_t width, int& out) {
  if (s.size() < width) return false;
  for (std::size_t i = 0; i < width; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  std::from_chars(s.data(), s.data() + width, out);
  s.remove_prefix(width);
  return true;
}

bool expect(std::string_view& s, char c) {
  if (s.empty() || s.front() != c) return false;
  s.remove_prefix(1);
  return true;
}

}  // namespace

std::optional<UtcInstant> parse_iso8601(std::string_view s) {
  using namespace std::chrono;
  int y, mo, d, h, mi, sec = 0;
  if (!read_fixed(s, 4, y) || !expect(s, '-') || !read_fixed(s, 2, mo) || !expect(s, '-') ||
      !read_fixed(s, 2, d))
    return std::nullopt;
  if (s.empty() || (s.front() != 'T' && s.front() != 't' && s.front() != ' ')) return std::nullopt;
  s.remove_prefix(1);
  if (!read_fixed(s, 2, h) || !expect(s, ':') || !read_fixed(s, 2, mi)) return std::nullopt;
  if (!s.empty() && s.front() == ':') {
    s.remove_prefix(1);
    if (!read_fixed(s, 2, sec)) return std::nullopt;
  }
  if (s.empty()) return std::nullopt;  // offset is mandatory

  int offset = 0;
  if (s == "Z" || s == "z") {
    s.remove_prefix(1);
  } else if (s.front() == '+' || s.front() == '-') {
    int sign = s.front() == '-' ? -1 : 1;
    s.remove_prefix(1);
    int oh, om = 0;
    if (!read_fixed(s, 2, oh)) return std::nullopt;
    if (!s.empty()) {
      expect(s, ':');
      if (!read_fixed(s, 2, om)) return std::nullopt;
    }
    if (oh > 23 || om > 59) return std::nullopt;
    offset = sign * (oh * 3600 + om * 60);
  } else {
    return std::nullopt;
  }
  if (!s.empty()) return std::nullopt;

  year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) return std::nullopt;
  sys_seconds local = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
  return local - seconds{offset};
}

}  // namespace miniconf
