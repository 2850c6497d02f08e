#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace miniconf {

using UtcInstant = std::chrono::sys_seconds;

/// Optional sink for progress and warning lines. An empty sink discards.
using LogSink = std::function<void(std::string_view)>;

inline void emit(const LogSink& log, std::string_view line) {
  if (log) log(line);
}

struct Organizer {
  std::string name;
  std::string affiliation;
  std::string url;

  friend bool operator==(const Organizer&, const Organizer&) = default;
};

struct ConferenceConfig {
  std::string name;
  std::string tagline;
  std::string default_timezone;
  std::string base_url;
  std::optional<std::string> chat_server_url;
  // Must contain the literal "{channel}" when set.
  std::optional<std::string> chat_embed_template;
  std::map<std::string, bool> page_toggles;
  std::vector<Organizer> organizers;
  std::optional<std::string> welcome_video_url;

  /// Pages are enabled unless explicitly toggled off.
  bool page_enabled(std::string_view page) const;

  friend bool operator==(const ConferenceConfig&, const ConferenceConfig&) = default;
};

struct PaperRecord {
  std::string uid;
  std::string title;
  std::vector<std::string> authors;
  std::string abstract;
  std::vector<std::string> keywords;
  std::vector<std::string> session_uids;
  std::optional<std::string> pdf_url;
  std::optional<std::string> video_url;
  // Output-relative, e.g. "images/foo.png" or the placeholder asset.
  std::optional<std::string> image_path;
  std::string chat_channel;

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

enum class EventKind { keynote, social, paper_session, qa };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

struct EventRecord {
  std::string uid;
  std::string title;
  EventKind kind = EventKind::keynote;
  UtcInstant start_utc{};
  UtcInstant end_utc{};
  std::optional<std::string> link_url;
  std::optional<std::string> description;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct ConferenceBundle {
  ConferenceConfig config;
  std::vector<PaperRecord> papers;
  std::vector<EventRecord> events;
  // Directory the bundle was loaded from; images are copied from here.
  std::filesystem::path source_dir;

  const EventRecord* find_event(std::string_view uid) const;
};

/// True for non-empty strings matching [a-z0-9_-]+.
bool is_slug(std::string_view text);

/// "2020-04-27T23:30:00Z"
std::string format_utc(UtcInstant t);

/// Parses ISO-8601 date-time with an explicit offset ("Z" or "+hh:mm").
/// Seconds are optional. Returns nullopt on any syntax or range error.
std::optional<UtcInstant> parse_iso8601(std::string_view text);

}  // namespace miniconf
