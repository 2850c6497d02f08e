#include "miniconf/site.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "assets.hpp"
#include "miniconf/images.hpp"
#include "miniconf/keywords.hpp"
#include "miniconf/schedule.hpp"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace miniconf {

std::string_view to_string(EntryKind kind) {
  switch (kind) {
    case EntryKind::page: return "page";
    case EntryKind::data: return "data";
    case EntryKind::asset: return "asset";
  }
  return "page";
}

bool SiteManifest::contains(std::string_view path) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const ManifestEntry& e) { return e.path == path; });
}

std::size_t SiteManifest::count_prefix(std::string_view prefix) const {
  return std::count_if(entries.begin(), entries.end(), [&](const ManifestEntry& e) {
    return std::string_view(e.path).substr(0, prefix.size()) == prefix;
  });
}

std::vector<Point2> normalize_layout(const std::vector<Point2>& points) {
  if (points.empty()) return {};
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double xr = xmax - xmin, yr = ymax - ymin;
  const double scale = std::max(xr, yr);
  std::vector<Point2> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    out.push_back({xr > 0.0 ? (p.x - xmin) / scale : 0.5, yr > 0.0 ? (p.y - ymin) / scale : 0.5});
  }
  return out;
}

namespace {

ojson optional_json(const std::optional<std::string>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::optional<std::string> optional_string(const ojson& obj, const char* key) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  return obj[key].get<std::string>();
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

void check_layout(const ConferenceBundle& bundle, const Layout& layout) {
  if (layout.size() != bundle.papers.size())
    throw SiteError(fmt::format("layout has {} point(s) but the conference has {} paper(s)",
                                layout.size(), bundle.papers.size()));
}

ojson layout_array(const std::vector<std::string>& uids, const Layout& layout) {
  auto norm = normalize_layout(layout.y);
  ojson arr = ojson::array();
  for (std::size_t i = 0; i < uids.size(); ++i)
    arr.push_back(ojson{{"uid", uids[i]}, {"x", norm[i].x}, {"y", norm[i].y}});
  return arr;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SiteError(fmt::format("cannot read {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ojson parse_json_file(const fs::path& path) {
  try {
    return ojson::parse(read_text(path));
  } catch (const ojson::exception& e) {
    throw SiteError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<LayoutEntry> parse_layout(const ojson& arr, const std::string& origin) {
  if (!arr.is_array()) throw SiteError(origin + ": expected an array");
  std::vector<LayoutEntry> out;
  for (const auto& item : arr) {
    try {
      out.push_back({item.at("uid").get<std::string>(),
                     {item.at("x").get<double>(), item.at("y").get<double>()}});
    } catch (const ojson::exception& e) {
      throw SiteError(fmt::format("{}: {}", origin, e.what()));
    }
  }
  return out;
}

}  // namespace

std::string layout_json(const std::vector<std::string>& uids, const Layout& layout) {
  if (uids.size() != layout.size())
    throw SiteError(fmt::format("{} uid(s) for {} layout point(s)", uids.size(), layout.size()));
  return dump(layout_array(uids, layout));
}

std::vector<OutputFile> emit_data_bundles(const ConferenceBundle& bundle, const Layout& layout) {
  check_layout(bundle, layout);
  std::vector<OutputFile> files;

  ojson papers = ojson::array();
  std::vector<std::string> uids;
  for (const auto& p : bundle.papers) {
    uids.push_back(p.uid);
    papers.push_back(ojson{{"uid", p.uid},
                           {"title", p.title},
                           {"authors", p.authors},
                           {"abstract", p.abstract},
                           {"keywords", p.keywords},
                           {"session_uids", p.session_uids},
                           {"pdf_url", optional_json(p.pdf_url)},
                           {"video_url", optional_json(p.video_url)},
                           {"image_path", optional_json(p.image_path)},
                           {"chat_channel", p.chat_channel}});
  }
  files.push_back({"data/papers.json", dump(papers), EntryKind::data, "papers.csv"});

  ojson events = ojson::array();
  for (const auto& e : bundle.events) {
    events.push_back(ojson{{"uid", e.uid},
                           {"title", e.title},
                           {"kind", std::string(to_string(e.kind))},
                           {"start_utc", format_utc(e.start_utc)},
                           {"end_utc", format_utc(e.end_utc)},
                           {"link_url", optional_json(e.link_url)},
                           {"description", optional_json(e.description)}});
  }
  files.push_back({"data/events.json", dump(events), EntryKind::data, "events.csv"});

  files.push_back({"data/layout.json", dump(layout_array(uids, layout)), EntryKind::data,
                   "projection"});

  const auto& c = bundle.config;
  ojson toggles = ojson::object();
  for (const auto& [page, on] : c.page_toggles) toggles[page] = on;
  ojson config{{"name", c.name},
               {"default_timezone", c.default_timezone},
               {"chat_server_url", optional_json(c.chat_server_url)},
               {"page_toggles", toggles}};
  files.push_back({"data/config.json", dump(config), EntryKind::data, "conference.yml"});
  return files;
}

std::vector<LayoutEntry> load_layout_json(const fs::path& layout_file) {
  return parse_layout(parse_json_file(layout_file), layout_file.string());
}

LoadedDataBundles load_data_bundles(const fs::path& site_dir) {
  const fs::path data = site_dir / "data";
  LoadedDataBundles out;
  try {
    auto config = parse_json_file(data / "config.json");
    out.name = config.at("name").get<std::string>();
    out.default_timezone = config.at("default_timezone").get<std::string>();
    out.chat_server_url = optional_string(config, "chat_server_url");
    for (const auto& [page, on] : config.at("page_toggles").items()) out.page_toggles[page] = on.get<bool>();

    for (const auto& p : parse_json_file(data / "papers.json")) {
      PaperRecord r;
      r.uid = p.at("uid").get<std::string>();
      r.title = p.at("title").get<std::string>();
      r.authors = p.at("authors").get<std::vector<std::string>>();
      r.abstract = p.at("abstract").get<std::string>();
      r.keywords = p.at("keywords").get<std::vector<std::string>>();
      r.session_uids = p.at("session_uids").get<std::vector<std::string>>();
      r.pdf_url = optional_string(p, "pdf_url");
      r.video_url = optional_string(p, "video_url");
      r.image_path = optional_string(p, "image_path");
      r.chat_channel = p.at("chat_channel").get<std::string>();
      out.papers.push_back(std::move(r));
    }

    for (const auto& e : parse_json_file(data / "events.json")) {
      EventRecord r;
      r.uid = e.at("uid").get<std::string>();
      r.title = e.at("title").get<std::string>();
      auto kind = parse_event_kind(e.at("kind").get<std::string>());
      if (!kind) throw SiteError(fmt::format("events.json: unknown kind for '{}'", r.uid));
      r.kind = *kind;
      auto start = parse_iso8601(e.at("start_utc").get<std::string>());
      auto end = parse_iso8601(e.at("end_utc").get<std::string>());
      if (!start || !end) throw SiteError(fmt::format("events.json: bad timestamp for '{}'", r.uid));
      r.start_utc = *start;
      r.end_utc = *end;
      r.link_url = optional_string(e, "link_url");
      r.description = optional_string(e, "description");
      out.events.push_back(std::move(r));
    }
  } catch (const ojson::exception& e) {
    throw SiteError(fmt::format("malformed data bundle in {}: {}", data.string(), e.what()));
  }
  out.layout = load_layout_json(data / "layout.json");
  return out;
}

Layout layout_for_bundle(const ConferenceBundle& bundle, const std::vector<LayoutEntry>& entries) {
  std::map<std::string, Point2> by_uid;
  for (const auto& e : entries)
    if (!by_uid.emplace(e.uid, e.position).second)
      throw SiteError(fmt::format("layout lists '{}' twice", e.uid));
  if (by_uid.size() != bundle.papers.size())
    throw SiteError(fmt::format("layout has {} entries, conference has {} papers", by_uid.size(),
                                bundle.papers.size()));
  Layout layout;
  for (const auto& p : bundle.papers) {
    auto it = by_uid.find(p.uid);
    if (it == by_uid.end()) throw SiteError(fmt::format("layout has no entry for '{}'", p.uid));
    layout.y.push_back(it->second);
  }
  return layout;
}

std::vector<std::string> template_names() {
  return {"base", "calendar", "event", "index", "paper", "papers", "visualization"};
}

std::string builtin_template(std::string_view name) { return std::string(assets::template_text(name)); }

namespace {

Html tag(std::string_view name, std::string_view attrs, const Html& inner) {
  return Html::trusted(fmt::format("<{}{}{}>{}</{}>", name, attrs.empty() ? "" : " ", attrs,
                                   inner.str(), name));
}

Html link(std::string_view href, std::string_view text, std::string_view cls = {}) {
  std::string attrs = fmt::format("href=\"{}\"", html_escape(href));
  if (!cls.empty()) attrs += fmt::format(" class=\"{}\"", cls);
  return tag("a", attrs, Html::text(text));
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

Html keyword_list(const std::vector<std::string>& keywords) {
  if (keywords.empty()) return {};
  Html items;
  for (const auto& k : keywords) items += tag("li", "", Html::text(k));
  return tag("ul", "class=\"keywords\"", items);
}

class SiteBuilder {
 public:
  SiteBuilder(const ConferenceBundle& bundle, const Layout& layout, const RenderOptions& options)
      : bundle_(bundle), layout_(layout) {
    for (const auto& name : template_names()) {
      std::string text = builtin_template(name);
      std::string source = "template:" + name;
      if (options.template_dir) {
        auto custom = *options.template_dir / (name + ".html");
        if (fs::exists(custom)) {
          text = read_text(custom);
          source = "template:" + custom.filename().string();
        }
      }
      templates_.emplace(name, std::pair{PageTemplate(name, text), source});
    }
    for (const auto& e : bundle.events) events_by_uid_[e.uid] = &e;
  }

  std::vector<OutputFile> build() {
    std::vector<OutputFile> files;
    files.push_back(index_page());
    if (enabled("calendar")) files.push_back(calendar_page());
    if (enabled("papers")) files.push_back(papers_page());
    if (enabled("visualization")) files.push_back(visualization_page());
    for (std::size_t i = 0; i < bundle_.papers.size(); ++i) files.push_back(paper_page(i));
    for (const auto& e : bundle_.events)
      if (e.kind != EventKind::paper_session) files.push_back(event_page(e));
    files.push_back({"conference.ics", export_ical(bundle_), EntryKind::data, "events.csv"});
    for (auto& f : emit_data_bundles(bundle_, layout_)) files.push_back(std::move(f));
    for (auto& a : assets::static_assets())
      files.push_back({a.path, std::move(a.bytes), EntryKind::asset, "builtin"});
    return files;
  }

 private:
  bool enabled(std::string_view page) const { return bundle_.config.page_enabled(page); }

  static std::string root_for(std::string_view path) {
    std::string root;
    for (char c : path)
      if (c == '/') root += "../";
    return root;
  }

  Html nav(const std::string& root) const {
    std::vector<std::pair<std::string, std::string>> items = {{"index.html", "Home"}};
    if (enabled("calendar")) items.emplace_back("calendar.html", "Schedule");
    if (enabled("papers")) items.emplace_back("papers.html", "Papers");
    if (enabled("visualization")) items.emplace_back("visualization.html", "Paper map");
    Html out;
    for (const auto& [href, text] : items) out += link(root + href, text);
    return out;
  }

  const PageTemplate& tmpl(const std::string& name) const { return templates_.at(name).first; }

  OutputFile page(std::string path, std::string_view title, const std::string& body_template,
                  Slots body_slots, std::string source) const {
    const std::string root = root_for(path);
    Html content = Html::trusted(tmpl(body_template).render(body_slots));
    Slots slots{{"title", std::string(title)},
                {"conference", bundle_.config.name},
                {"root", root},
                {"nav", nav(root)},
                {"content", content}};
    auto text = tmpl("base").render(slots);
    source += "+" + templates_.at(body_template).second;
    return {std::move(path), std::move(text), EntryKind::page, std::move(source)};
  }

  // <time> carrying the UTC instant and a prerendered default-zone reading.
  Html time_tag(UtcInstant t, std::string_view zone) const {
    auto local = to_local(t, zone);
    return tag("time",
               fmt::format("datetime=\"{}\" data-local title=\"{}\"", format_utc(t), local.iso()),
               Html::text(local.hhmm()));
  }

  Html session_link(const std::string& root, const EventRecord& session) const {
    if (enabled("papers"))
      return link(fmt::format("{}papers.html#session-{}", root, session.uid), session.title);
    return Html::text(session.title);
  }

  Html event_title_link(const std::string& root, const EventRecord& e) const {
    if (e.kind == EventKind::paper_session) return session_link(root, e);
    return link(fmt::format("{}events/{}.html", root, e.uid), e.title);
  }

  Html paper_card(const PaperRecord& p) const {
    Html inner;
    std::string img = p.image_path.value_or(kPlaceholderImage);
    inner += Html::trusted(fmt::format("<img src=\"{}\" alt=\"\" loading=\"lazy\">", html_escape(img)));
    inner += tag("h3", "", link(fmt::format("papers/{}.html", p.uid), p.title));
    inner += tag("p", "class=\"authors\"", Html::text(join(p.authors, ", ")));
    return tag("li", fmt::format("class=\"card\" data-uid=\"{}\"", html_escape(p.uid)), inner);
  }

  OutputFile index_page() const {
    const auto& c = bundle_.config;
    Html welcome;
    if (c.welcome_video_url)  // trusted config value, inserted raw
      welcome = Html::trusted(fmt::format(
          "<iframe class=\"welcome-video\" src=\"{}\" allowfullscreen></iframe>", *c.welcome_video_url));

    Html steps;
    if (enabled("calendar"))
      steps += tag("li", "", Html::trusted(link("calendar.html", "Schedule").str() +
                                           " lists every keynote, social event and paper session in "
                                           "your own timezone."));
    if (enabled("papers"))
      steps += tag("li", "", Html::trusted(link("papers.html", "Papers").str() +
                                           " lets you browse all accepted papers; each has its own "
                                           "page with video, slides and a chat room."));
    if (enabled("visualization"))
      steps += tag("li", "", Html::trusted(link("visualization.html", "Paper map").str() +
                                           " arranges papers by topic so you can explore related "
                                           "work."));
    steps += tag("li", "", Html::trusted(link("conference.ics", "Calendar file").str() +
                                         " imports the full schedule into your calendar app."));
    Html quick = tag("ul", "", steps);

    Html orgs;
    if (c.organizers.empty()) {
      orgs = tag("p", "class=\"empty\"", Html::text("To be announced."));
    } else {
      Html items;
      for (const auto& o : c.organizers) {
        Html entry = o.url.empty() ? Html::text(o.name) : link(o.url, o.name);
        if (!o.affiliation.empty()) entry += Html::text(" (" + o.affiliation + ")");
        items += tag("li", "", entry);
      }
      orgs = tag("ul", "class=\"organizer-list\"", items);
    }

    return page("index.html", "Home", "index",
                {{"name", c.name}, {"tagline", c.tagline}, {"welcome", welcome},
                 {"quick_start", quick}, {"organizers", orgs}},
                "conference.yml");
  }

  OutputFile calendar_page() const {
    const auto& zone = bundle_.config.default_timezone;
    auto days = localize_schedule(bundle_.events, zone);
    Html body;
    if (days.empty()) body = tag("p", "class=\"empty\"", Html::text("No events scheduled yet."));
    for (const auto& day : days) {
      Html items;
      for (const auto& le : day.events) {
        Html row = time_tag(le.event.start_utc, zone);
        row += tag("span", "class=\"kind\"", Html::text(to_string(le.event.kind)));
        row += event_title_link("", le.event);
        items += tag("li", fmt::format("class=\"event\" data-uid=\"{}\"", html_escape(le.event.uid)), row);
      }
      Html section = tag("h2", "", Html::text(day.day_key.iso()));
      section += tag("ul", "class=\"events\"", items);
      body += tag("section", fmt::format("class=\"day\" data-day=\"{}\"", day.day_key.iso()), section);
    }
    return page("calendar.html", "Schedule", "calendar", {{"zone", zone}, {"days", body}},
                "events.csv");
  }

  OutputFile papers_page() const {
    Html cards;
    for (const auto& p : bundle_.papers) cards += paper_card(p);
    Html list = bundle_.papers.empty()
                    ? tag("p", "class=\"empty\"", Html::text("No papers yet."))
                    : tag("ul", "class=\"cards\"", cards);

    Html sessions;
    for (const auto& e : bundle_.events) {
      if (e.kind != EventKind::paper_session) continue;
      Html items;
      for (const auto& p : bundle_.papers)
        if (std::find(p.session_uids.begin(), p.session_uids.end(), e.uid) != p.session_uids.end())
          items += tag("li", "", link(fmt::format("papers/{}.html", p.uid), p.title));
      Html section = tag("h3", "", Html::text(e.title));
      section += tag("ul", "", items);
      sessions += tag("section", fmt::format("id=\"session-{}\" class=\"session\"", e.uid), section);
    }
    if (sessions.empty()) sessions = tag("p", "class=\"empty\"", Html::text("No paper sessions."));

    return page("papers.html", "Papers", "papers",
                {{"count", std::to_string(bundle_.papers.size())}, {"cards", list}, {"sessions", sessions}},
                "papers.csv");
  }

  OutputFile visualization_page() const {
    constexpr double kSize = 1000.0, kMargin = 20.0;
    auto norm = normalize_layout(layout_.y);
    Html dots;
    for (std::size_t i = 0; i < bundle_.papers.size(); ++i) {
      const auto& p = bundle_.papers[i];
      double cx = kMargin + norm[i].x * (kSize - 2 * kMargin);
      double cy = kMargin + norm[i].y * (kSize - 2 * kMargin);
      dots += Html::trusted(fmt::format(
          "<a href=\"papers/{0}.html\"><circle data-uid=\"{0}\" cx=\"{1:.2f}\" cy=\"{2:.2f}\" "
          "r=\"6\"><title>{3}</title></circle></a>",
          html_escape(p.uid), cx, cy, html_escape(p.title)));
    }
    Html map = Html::trusted(fmt::format(
        "<svg class=\"paper-map\" viewBox=\"0 0 {0} {0}\" xmlns=\"http://www.w3.org/2000/svg\">{1}</svg>",
        kSize, dots.str()));
    Html top;
    for (const auto& k : aggregate_keywords(bundle_.papers))
      top += tag("li", fmt::format("data-count=\"{}\"", k.count),
                 Html::text(fmt::format("{} ({})", k.keyword, k.count)));
    Html keywords = top.empty() ? tag("p", "class=\"empty\"", Html::text("No keywords."))
                                : tag("ul", "class=\"keywords\"", top);
    return page("visualization.html", "Paper map", "visualization",
                {{"count", std::to_string(bundle_.papers.size())}, {"map", map}, {"keywords", keywords}},
                "layout");
  }

  OutputFile paper_page(std::size_t index) const {
    const auto& p = bundle_.papers[index];
    const std::string path = fmt::format("papers/{}.html", p.uid);
    const std::string root = "../";

    std::string img = p.image_path.value_or(kPlaceholderImage);
    Html image = Html::trusted(
        fmt::format("<img class=\"paper-figure\" src=\"{}{}\" alt=\"\">", root, html_escape(img)));

    Html media;
    if (p.video_url)
      media += Html::trusted(fmt::format("<iframe class=\"video\" src=\"{}\" allowfullscreen></iframe>",
                                         html_escape(*p.video_url)));
    if (p.pdf_url) media += tag("p", "", link(*p.pdf_url, "Paper (PDF)", "pdf"));

    Html sessions;
    if (!p.session_uids.empty()) {
      Html items;
      for (const auto& s : p.session_uids) {
        auto it = events_by_uid_.find(s);
        if (it == events_by_uid_.end()) continue;
        Html entry = session_link(root, *it->second);
        entry += Html::text(" ");
        entry += time_tag(it->second->start_utc, bundle_.config.default_timezone);
        items += tag("li", "", entry);
      }
      sessions = tag("h2", "", Html::text("Live sessions"));
      sessions += tag("ul", "class=\"sessions\"", items);
    }

    Html chat;
    if (const auto& tpl = bundle_.config.chat_embed_template) {
      std::string target = *tpl;
      for (auto pos = target.find("{channel}"); pos != std::string::npos;
           pos = target.find("{channel}", pos + p.chat_channel.size()))
        target.replace(pos, 9, p.chat_channel);
      chat = Html::trusted(fmt::format(
          "<iframe class=\"chat-embed\" data-channel=\"{0}\" src=\"{1}\" title=\"Chat: {0}\"></iframe>",
          html_escape(p.chat_channel), html_escape(target)));
    } else {
      chat = tag("div", fmt::format("class=\"chat-embed\" data-channel=\"{}\"", html_escape(p.chat_channel)),
                 Html::text("Chat channel: " + p.chat_channel));
    }

    return page(path, p.title, "paper",
                {{"title", p.title},
                 {"authors", join(p.authors, ", ")},
                 {"image", image},
                 {"abstract", p.abstract},
                 {"keywords", keyword_list(p.keywords)},
                 {"media", media},
                 {"sessions", sessions},
                 {"chat", chat}},
                "papers.csv:" + p.uid);
  }

  OutputFile event_page(const EventRecord& e) const {
    const auto& zone = bundle_.config.default_timezone;
    auto start = to_local(e.start_utc, zone);
    Html when = tag("p", "class=\"when\"",
                    Html::trusted(fmt::format("{} {} &ndash; {} ({})", html_escape(start.date.iso()),
                                              time_tag(e.start_utc, zone).str(),
                                              time_tag(e.end_utc, zone).str(), html_escape(zone))));
    Html description;
    if (e.description) description = tag("p", "class=\"description\"", Html::text(*e.description));
    Html link_html;
    if (e.link_url) link_html = tag("p", "", link(*e.link_url, "Join the event", "join"));
    return page(fmt::format("events/{}.html", e.uid), e.title, "event",
                {{"title", e.title},
                 {"kind", std::string(to_string(e.kind))},
                 {"when", when},
                 {"description", description},
                 {"link", link_html}},
                "events.csv:" + e.uid);
  }

  const ConferenceBundle& bundle_;
  const Layout& layout_;
  std::map<std::string, std::pair<PageTemplate, std::string>> templates_;
  std::map<std::string, const EventRecord*> events_by_uid_;
};

void write_file(const fs::path& path, std::string_view content) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw SiteError(fmt::format("cannot create {}: {}", path.parent_path().string(), ec.message()));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SiteError(fmt::format("cannot write {}", path.string()));
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) throw SiteError(fmt::format("failed writing {}", path.string()));
}

}  // namespace

SiteManifest render_site(const ConferenceBundle& bundle, const Layout& layout, const fs::path& outdir,
                         const RenderOptions& options) {
  check_layout(bundle, layout);
  auto files = SiteBuilder(bundle, layout, options).build();

  // Paper figures are copied from the input tree.
  std::set<std::string> images;
  for (const auto& p : bundle.papers)
    if (p.image_path && p.image_path->rfind(std::string(kImagesDir) + "/", 0) == 0)
      images.insert(*p.image_path);
  for (const auto& rel : images) {
    auto src = bundle.source_dir / rel;
    std::ifstream in(src, std::ios::binary);
    if (!in) throw SiteError(fmt::format("paper image {} is missing", src.string()));
    std::ostringstream ss;
    ss << in.rdbuf();
    files.push_back({rel, ss.str(), EntryKind::asset, rel});
  }

  SiteManifest manifest;
  for (const auto& f : files) manifest.entries.push_back({f.path, f.kind, f.source});
  manifest.entries.push_back({kManifestPath, EntryKind::data, "manifest"});
  std::sort(manifest.entries.begin(), manifest.entries.end(),
            [](const ManifestEntry& a, const ManifestEntry& b) { return a.path < b.path; });
  for (std::size_t i = 1; i < manifest.entries.size(); ++i)
    if (manifest.entries[i].path == manifest.entries[i - 1].path)
      throw SiteError(fmt::format("two outputs map to {}", manifest.entries[i].path));

  ojson mj = ojson::array();
  for (const auto& e : manifest.entries)
    mj.push_back(ojson{{"path", e.path}, {"kind", std::string(to_string(e.kind))}, {"source", e.source}});

  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec || !fs::is_directory(outdir))
    throw SiteError(fmt::format("cannot create output directory {}", outdir.string()));
  for (const auto& f : files) write_file(outdir / f.path, f.content);
  write_file(outdir / kManifestPath, dump(mj));
  return manifest;
}

}  // namespace miniconf
