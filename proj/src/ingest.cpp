#include "miniconf/ingest.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "miniconf/chat.hpp"
#include "miniconf/csv.hpp"
#include "miniconf/schedule.hpp"

namespace fs = std::filesystem;

namespace miniconf {

std::string ValidationIssue::to_string() const {
  std::string out = file;
  if (!location.empty()) out += fmt::format(" ({})", location);
  return out + ": " + message;
}

void ValidationReport::merge(const ValidationReport& other) {
  errors.insert(errors.end(), other.errors.begin(), other.errors.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

namespace {

std::string summarize(const ValidationReport& report) {
  std::string msg = fmt::format("conference input rejected with {} error(s)", report.errors.size());
  for (const auto& e : report.errors) msg += "\n  " + e.to_string();
  return msg;
}

}  // namespace

IngestError::IngestError(ValidationReport report)
    : std::runtime_error(summarize(report)), report_(std::move(report)) {}

namespace {

// Source rows for bundle entries, used to cite file lines in messages.
struct RowIndex {
  std::vector<std::size_t> paper_lines;
  std::vector<std::size_t> event_lines;
};

std::string where(const RowIndex* rows, bool paper, std::size_t i) {
  if (!rows) return fmt::format("{} #{}", paper ? "paper" : "event", i + 1);
  return fmt::format("row {}", paper ? rows->paper_lines[i] : rows->event_lines[i]);
}

ValidationReport validate_impl(const ConferenceBundle& b, const RowIndex* rows,
                               bool check_config = true) {
  ValidationReport r;
  auto error = [&](std::string file, std::string loc, std::string msg) {
    r.errors.push_back({std::move(file), std::move(loc), std::move(msg)});
  };

  const auto& c = b.config;
  if (check_config && c.name.empty()) error(kConfigFile, "key name", "name must be non-empty");
  if (check_config && c.base_url.empty()) error(kConfigFile, "key base_url", "base_url must be set");
  if (check_config && !is_known_timezone(c.default_timezone))
    error(kConfigFile, "key default_timezone",
          fmt::format("unknown timezone '{}'", c.default_timezone));
  if (check_config && c.chat_embed_template && c.chat_embed_template->find("{channel}") == std::string::npos)
    error(kConfigFile, "key chat_embed_template", "template must contain '{channel}'");

  std::map<std::string, std::size_t> event_seen;
  for (std::size_t i = 0; i < b.events.size(); ++i) {
    const auto& e = b.events[i];
    auto loc = where(rows, false, i);
    if (!is_slug(e.uid))
      error(kEventsFile, loc, fmt::format("uid '{}' does not match [a-z0-9_-]+", e.uid));
    auto [it, fresh] = event_seen.emplace(e.uid, i);
    if (!fresh)
      error(kEventsFile, loc,
            fmt::format("duplicate uid '{}' ({} and {})", e.uid, where(rows, false, it->second),
                        loc));
    if (e.title.empty()) error(kEventsFile, loc, "title must be non-empty");
    if (!(e.start_utc < e.end_utc))
      error(kEventsFile, loc, fmt::format("event '{}' must start before it ends", e.uid));
  }

  std::map<std::string, std::size_t> paper_seen;
  for (std::size_t i = 0; i < b.papers.size(); ++i) {
    const auto& p = b.papers[i];
    auto loc = where(rows, true, i);
    if (!is_slug(p.uid))
      error(kPapersFile, loc, fmt::format("uid '{}' does not match [a-z0-9_-]+", p.uid));
    auto [it, fresh] = paper_seen.emplace(p.uid, i);
    if (!fresh)
      error(kPapersFile, loc,
            fmt::format("duplicate uid '{}' ({} and {})", p.uid, where(rows, true, it->second),
                        loc));
    if (p.title.empty()) error(kPapersFile, loc, "title must be non-empty");
    if (p.authors.empty()) error(kPapersFile, loc, "authors must be non-empty");
    for (const auto& s : p.session_uids) {
      const EventRecord* e = b.find_event(s);
      if (!e)
        error(kPapersFile, loc,
              fmt::format("paper '{}' references unknown session '{}'", p.uid, s));
      else if (e->kind != EventKind::paper_session)
        error(kPapersFile, loc,
              fmt::format("paper '{}' references '{}', which is not a paper-session", p.uid, s));
    }
    if (!p.pdf_url && !p.video_url)
      r.warnings.push_back({kPapersFile, loc,
                            fmt::format("paper '{}' has neither pdf_url nor video_url", p.uid)});
  }
  return r;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::string> nonempty(std::string s) {
  if (s.empty()) return std::nullopt;
  return s;
}

// Maps header names to column indices and reports missing/unknown columns.
class Table {
 public:
  Table(std::string file, std::vector<csv::Record> records, std::vector<std::string> required,
        std::vector<std::string> optional, ValidationReport& report)
      : file_(std::move(file)), report_(report) {
    if (records.empty()) {
      report.errors.push_back({file_, "row 1", "missing header row"});
      valid_ = false;
      return;
    }
    const auto& header = records.front().fields;
    width_ = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
      auto name = csv::trim(header[i]);
      bool known = std::find(required.begin(), required.end(), name) != required.end() ||
                   std::find(optional.begin(), optional.end(), name) != optional.end();
      if (!known) {
        report.warnings.push_back({file_, "row 1", fmt::format("ignoring unknown column '{}'", name)});
        continue;
      }
      columns_[name] = i;
    }
    for (const auto& name : required) {
      if (!columns_.count(name)) {
        report.errors.push_back({file_, "row 1", fmt::format("missing required column '{}'", name)});
        valid_ = false;
      }
    }
    rows_.assign(std::make_move_iterator(records.begin() + 1),
                 std::make_move_iterator(records.end()));
  }

  bool valid() const { return valid_; }
  const std::vector<csv::Record>& rows() const { return rows_; }

  // False (and an error recorded) if the row has the wrong field count.
  bool check_width(const csv::Record& row) const {
    if (row.fields.size() == width_) return true;
    report_.errors.push_back({file_, fmt::format("row {}", row.line),
                              fmt::format("expected {} fields, found {}", width_, row.fields.size())});
    return false;
  }

  std::string get(const csv::Record& row, const std::string& column) const {
    auto it = columns_.find(column);
    if (it == columns_.end()) return {};
    return row.fields[it->second];
  }

 private:
  std::string file_;
  ValidationReport& report_;
  std::map<std::string, std::size_t> columns_;
  std::vector<csv::Record> rows_;
  std::size_t width_ = 0;
  bool valid_ = true;
};

std::optional<Table> open_table(const fs::path& dir, const std::string& file,
                                std::vector<std::string> required, std::vector<std::string> optional,
                                ValidationReport& report) {
  auto text = read_file(dir / file);
  if (!text) {
    report.errors.push_back({file, "", "missing file"});
    return std::nullopt;
  }
  try {
    Table t(file, csv::parse(*text), std::move(required), std::move(optional), report);
    if (!t.valid()) return std::nullopt;
    return t;
  } catch (const csv::ParseError& e) {
    report.errors.push_back({file, fmt::format("line {}", e.line()), e.what()});
    return std::nullopt;
  }
}

std::string scalar(const YAML::Node& node, const char* key) {
  auto v = node[key];
  if (!v || v.IsNull()) return {};
  if (!v.IsScalar()) throw YAML::Exception(v.Mark(), fmt::format("'{}' must be a string", key));
  return v.as<std::string>();
}

ConferenceConfig parse_config(const std::string& text, ValidationReport& report) {
  static const std::set<std::string> known_keys = {
      "name", "tagline", "default_timezone", "base_url", "chat_server_url",
      "chat_embed_template", "page_toggles", "organizers", "welcome_video_url"};
  static const std::set<std::string> known_pages = {"calendar", "papers", "visualization"};

  ConferenceConfig c;
  YAML::Node root = YAML::Load(text);
  if (!root.IsMap()) throw YAML::Exception(root.Mark(), "top level must be a mapping");

  for (const auto& kv : root) {
    auto key = kv.first.as<std::string>();
    if (!known_keys.count(key))
      report.warnings.push_back({kConfigFile, "key " + key, "ignoring unknown key"});
  }
  c.name = scalar(root, "name");
  c.tagline = scalar(root, "tagline");
  c.default_timezone = scalar(root, "default_timezone");
  if (c.default_timezone.empty()) c.default_timezone = "UTC";
  c.base_url = scalar(root, "base_url");
  c.chat_server_url = nonempty(scalar(root, "chat_server_url"));
  c.chat_embed_template = nonempty(scalar(root, "chat_embed_template"));
  c.welcome_video_url = nonempty(scalar(root, "welcome_video_url"));

  if (auto toggles = root["page_toggles"]; toggles && !toggles.IsNull()) {
    if (!toggles.IsMap()) throw YAML::Exception(toggles.Mark(), "page_toggles must be a mapping");
    for (const auto& kv : toggles) {
      auto page = kv.first.as<std::string>();
      if (!known_pages.count(page))
        report.warnings.push_back({kConfigFile, "key page_toggles." + page, "unknown page"});
      c.page_toggles[page] = kv.second.as<bool>();
    }
  }
  if (auto orgs = root["organizers"]; orgs && !orgs.IsNull()) {
    if (!orgs.IsSequence()) throw YAML::Exception(orgs.Mark(), "organizers must be a list");
    for (const auto& o : orgs) {
      if (!o.IsMap()) throw YAML::Exception(o.Mark(), "organizer entries must be mappings");
      c.organizers.push_back({scalar(o, "name"), scalar(o, "affiliation"), scalar(o, "url")});
    }
  }
  return c;
}

}  // namespace

ValidationReport validate(const ConferenceBundle& bundle) { return validate_impl(bundle, nullptr); }

ConferenceBundle load_conference(const fs::path& input_dir, ValidationReport* out_report) {
  ValidationReport report;
  ConferenceBundle bundle;
  bundle.source_dir = input_dir;
  RowIndex rows;
  bool config_ok = true;
  bool tables_ok = true;

  if (!fs::is_directory(input_dir)) {
    report.errors.push_back({input_dir.string(), "", "input directory does not exist"});
    throw IngestError(std::move(report));
  }

  if (auto text = read_file(input_dir / kConfigFile); !text) {
    report.errors.push_back({kConfigFile, "", "missing file"});
    config_ok = false;
  } else {
    try {
      bundle.config = parse_config(*text, report);
    } catch (const YAML::Exception& e) {
      report.errors.push_back({kConfigFile, fmt::format("line {}", e.mark.line + 1), e.msg});
      config_ok = false;
    }
  }

  if (auto table = open_table(input_dir, kEventsFile, {"uid", "title", "kind", "start", "end"},
                              {"link_url", "description"}, report)) {
    for (const auto& row : table->rows()) {
      if (!table->check_width(row)) continue;
      EventRecord e;
      auto loc = fmt::format("row {}", row.line);
      e.uid = csv::trim(table->get(row, "uid"));
      e.title = csv::trim(table->get(row, "title"));
      auto kind_text = csv::trim(table->get(row, "kind"));
      bool ok = true;
      if (auto kind = parse_event_kind(kind_text)) {
        e.kind = *kind;
      } else {
        report.errors.push_back({kEventsFile, loc, fmt::format("unknown event kind '{}'", kind_text)});
        ok = false;
      }
      for (auto [column, slot] : {std::pair{"start", &e.start_utc}, std::pair{"end", &e.end_utc}}) {
        auto text = csv::trim(table->get(row, column));
        if (auto t = parse_iso8601(text)) {
          *slot = *t;
        } else {
          report.errors.push_back(
              {kEventsFile, loc, fmt::format("malformed timestamp '{}' in column '{}'", text, column)});
          ok = false;
        }
      }
      e.link_url = nonempty(csv::trim(table->get(row, "link_url")));
      e.description = nonempty(table->get(row, "description"));
      if (!ok) continue;
      bundle.events.push_back(std::move(e));
      rows.event_lines.push_back(row.line);
    }
  } else {
    tables_ok = false;
  }

  if (auto table = open_table(input_dir, kPapersFile,
                              {"uid", "title", "authors", "abstract", "keywords", "session_uids"},
                              {"pdf_url", "video_url"}, report)) {
    for (const auto& row : table->rows()) {
      if (!table->check_width(row)) continue;
      PaperRecord p;
      p.uid = csv::trim(table->get(row, "uid"));
      p.title = csv::trim(table->get(row, "title"));
      p.authors = csv::split_list(table->get(row, "authors"));
      p.abstract = csv::trim(table->get(row, "abstract"));
      p.keywords = csv::split_list(table->get(row, "keywords"));
      p.session_uids = csv::split_list(table->get(row, "session_uids"));
      p.pdf_url = nonempty(csv::trim(table->get(row, "pdf_url")));
      p.video_url = nonempty(csv::trim(table->get(row, "video_url")));
      p.chat_channel = channel_name(p);
      bundle.papers.push_back(std::move(p));
      rows.paper_lines.push_back(row.line);
    }
  } else {
    tables_ok = false;
  }

  // Cross-file checks need both tables; a session reference into an
  // events.csv that failed to load would only be noise.
  if (tables_ok) report.merge(validate_impl(bundle, &rows, config_ok));

  if (!report.ok()) throw IngestError(std::move(report));
  if (out_report) *out_report = std::move(report);
  return bundle;
}

}  // namespace miniconf
