#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "miniconf/model.hpp"
#include "miniconf/projection.hpp"
#include "miniconf/template.hpp"

namespace miniconf {

class SiteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EntryKind { page, data, asset };
std::string_view to_string(EntryKind kind);

struct ManifestEntry {
  std::string path;  // output-relative, '/'-separated
  EntryKind kind = EntryKind::page;
  std::string source;
  bool operator==(const ManifestEntry&) const = default;
};

/// Every emitted file, ordered by path.
struct SiteManifest {
  std::vector<ManifestEntry> entries;

  bool contains(std::string_view path) const;
  std::size_t count_prefix(std::string_view prefix) const;
};

inline constexpr const char* kManifestPath = "data/manifest.json";

/// An in-memory output file.
struct OutputFile {
  std::string path;
  std::string content;
  EntryKind kind = EntryKind::data;
  std::string source;
};

/// Maps coordinates into [0,1]^2 with one scale for both axes. The larger
/// range spans [0,1]; an axis with zero range sits at 0.5.
std::vector<Point2> normalize_layout(const std::vector<Point2>& points);

/// data/papers.json, data/events.json, data/layout.json, data/config.json.
/// Keys in fixed order; bytes depend only on the inputs.
/// Throws SiteError when the layout and paper counts differ.
std::vector<OutputFile> emit_data_bundles(const ConferenceBundle& bundle, const Layout& layout);

struct LayoutEntry {
  std::string uid;
  Point2 position;
};

/// What the frontend sees after loading the data bundles.
struct LoadedDataBundles {
  std::string name;
  std::string default_timezone;
  std::optional<std::string> chat_server_url;
  std::map<std::string, bool> page_toggles;
  std::vector<PaperRecord> papers;
  std::vector<EventRecord> events;
  std::vector<LayoutEntry> layout;
};

/// Reads the JSON bundles back from `<site>/data`. Throws SiteError.
LoadedDataBundles load_data_bundles(const std::filesystem::path& site_dir);

/// Reads only `<site>/data/layout.json`. Throws SiteError.
std::vector<LayoutEntry> load_layout_json(const std::filesystem::path& layout_file);

/// Serialises a layout to the layout.json schema (normalised coordinates).
std::string layout_json(const std::vector<std::string>& uids, const Layout& layout);

/// Reorders `entries` to follow bundle paper order. Throws SiteError when the
/// uid sets differ.
Layout layout_for_bundle(const ConferenceBundle& bundle, const std::vector<LayoutEntry>& entries);

struct RenderOptions {
  // Directory of <name>.html files that replace the built-in templates.
  std::optional<std::filesystem::path> template_dir;
};

/// Names of the built-in page templates.
std::vector<std::string> template_names();
std::string builtin_template(std::string_view name);

/// Writes the whole static site and returns its manifest (also written to
/// data/manifest.json). Throws SiteError or TemplateError.
SiteManifest render_site(const ConferenceBundle& bundle, const Layout& layout,
                         const std::filesystem::path& outdir, const RenderOptions& options = {});

}  // namespace miniconf
