#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "miniconf/chat.hpp"
#include "miniconf/conformance.hpp"
#include "miniconf/embedding.hpp"
#include "miniconf/images.hpp"
#include "miniconf/ingest.hpp"
#include "miniconf/keywords.hpp"
#include "miniconf/pipeline.hpp"
#include "miniconf/projection.hpp"
#include "miniconf/schedule.hpp"
#include "miniconf/site.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace miniconf;

namespace {

using Rows = std::vector<std::vector<double>>;

SquareMatrix to_square(const Rows& rows) {
  SquareMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw py::value_error("matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Rows to_rows(const SquareMatrix& m) {
  Rows out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i].assign(m.row(i).begin(), m.row(i).end());
  return out;
}

using Pairs = std::vector<std::pair<double, double>>;

std::vector<Point2> to_points(const Pairs& pairs) {
  std::vector<Point2> out;
  for (auto [x, y] : pairs) out.push_back({x, y});
  return out;
}

Pairs to_pairs(const std::vector<Point2>& points) {
  Pairs out;
  for (auto p : points) out.emplace_back(p.x, p.y);
  return out;
}

// The callable outlives the call it is passed to, so a borrowed handle is enough.
LogSink py_log(const py::object& log) {
  if (log.is_none()) return {};
  return [h = log.ptr()](std::string_view line) {
    py::gil_scoped_acquire gil;
    try {
      py::handle callback = h;
      callback(py::str(line.data(), line.size()));
    } catch (py::error_already_set& e) {
      e.discard_as_unraisable("miniconf log callback");
    }
  };
}

std::string utc_text(UtcInstant t) { return format_utc(t); }

UtcInstant utc_parse(const std::string& text) {
  auto t = parse_iso8601(text);
  if (!t) throw py::value_error("expected an ISO-8601 timestamp with offset: " + text);
  return *t;
}

py::dict counts_dict(const ImageAttachCounts& c) {
  return py::dict("map"_a = c.from_map, "png"_a = c.from_png, "jpg"_a = c.from_jpg,
                  "placeholder"_a = c.placeholder);
}

py::list manifest_list(const SiteManifest& m) {
  py::list out;
  for (const auto& e : m.entries)
    out.append(py::make_tuple(e.path, std::string(to_string(e.kind)), e.source));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Static site generator for virtual conferences";

  auto base = py::register_exception<std::runtime_error>(m, "MiniconfError", PyExc_RuntimeError);
  py::register_exception<IngestError>(m, "IngestError", base.ptr());
  py::register_exception<WordVectorError>(m, "WordVectorError", base.ptr());
  py::register_exception<ProjectionError>(m, "ProjectionError", base.ptr());
  py::register_exception<ImageAttachError>(m, "ImageAttachError", base.ptr());
  py::register_exception<SiteError>(m, "SiteError", base.ptr());
  py::register_exception<TemplateError>(m, "TemplateError", base.ptr());
  py::register_exception<ChatAuthError>(m, "ChatAuthError", base.ptr());
  py::register_exception<ChatConfigError>(m, "ChatConfigError", PyExc_ValueError);
  py::register_exception<UnknownTimezoneError>(m, "UnknownTimezoneError", PyExc_ValueError);

  // Model

  py::class_<Organizer>(m, "Organizer")
      .def(py::init<>())
      .def_readwrite("name", &Organizer::name)
      .def_readwrite("affiliation", &Organizer::affiliation)
      .def_readwrite("url", &Organizer::url)
      .def(py::self == py::self);

  py::class_<ConferenceConfig>(m, "ConferenceConfig")
      .def(py::init<>())
      .def_readwrite("name", &ConferenceConfig::name)
      .def_readwrite("tagline", &ConferenceConfig::tagline)
      .def_readwrite("default_timezone", &ConferenceConfig::default_timezone)
      .def_readwrite("base_url", &ConferenceConfig::base_url)
      .def_readwrite("chat_server_url", &ConferenceConfig::chat_server_url)
      .def_readwrite("chat_embed_template", &ConferenceConfig::chat_embed_template)
      .def_readwrite("page_toggles", &ConferenceConfig::page_toggles)
      .def_readwrite("organizers", &ConferenceConfig::organizers)
      .def_readwrite("welcome_video_url", &ConferenceConfig::welcome_video_url)
      .def("page_enabled", &ConferenceConfig::page_enabled)
      .def(py::self == py::self);

  py::class_<PaperRecord>(m, "PaperRecord")
      .def(py::init<>())
      .def(py::init([](std::string uid, std::string title, std::vector<std::string> authors,
                       std::string abstract, std::vector<std::string> keywords) {
             PaperRecord p;
             p.uid = std::move(uid);
             p.title = std::move(title);
             p.authors = std::move(authors);
             p.abstract = std::move(abstract);
             p.keywords = std::move(keywords);
             p.chat_channel = channel_name(p);
             return p;
           }),
           "uid"_a, "title"_a = "", "authors"_a = std::vector<std::string>{}, "abstract"_a = "",
           "keywords"_a = std::vector<std::string>{})
      .def_readwrite("uid", &PaperRecord::uid)
      .def_readwrite("title", &PaperRecord::title)
      .def_readwrite("authors", &PaperRecord::authors)
      .def_readwrite("abstract", &PaperRecord::abstract)
      .def_readwrite("keywords", &PaperRecord::keywords)
      .def_readwrite("session_uids", &PaperRecord::session_uids)
      .def_readwrite("pdf_url", &PaperRecord::pdf_url)
      .def_readwrite("video_url", &PaperRecord::video_url)
      .def_readwrite("image_path", &PaperRecord::image_path)
      .def_readwrite("chat_channel", &PaperRecord::chat_channel)
      .def(py::self == py::self)
      .def("__repr__", [](const PaperRecord& p) { return "<PaperRecord " + p.uid + ">"; });

  py::enum_<EventKind>(m, "EventKind")
      .value("keynote", EventKind::keynote)
      .value("social", EventKind::social)
      .value("paper_session", EventKind::paper_session)
      .value("qa", EventKind::qa);

  py::class_<EventRecord>(m, "EventRecord")
      .def(py::init<>())
      .def_readwrite("uid", &EventRecord::uid)
      .def_readwrite("title", &EventRecord::title)
      .def_readwrite("kind", &EventRecord::kind)
      .def_property(
          "start_utc", [](const EventRecord& e) { return utc_text(e.start_utc); },
          [](EventRecord& e, const std::string& t) { e.start_utc = utc_parse(t); })
      .def_property(
          "end_utc", [](const EventRecord& e) { return utc_text(e.end_utc); },
          [](EventRecord& e, const std::string& t) { e.end_utc = utc_parse(t); })
      .def_readwrite("link_url", &EventRecord::link_url)
      .def_readwrite("description", &EventRecord::description)
      .def(py::self == py::self)
      .def("__repr__", [](const EventRecord& e) { return "<EventRecord " + e.uid + ">"; });

  py::class_<ConferenceBundle>(m, "ConferenceBundle")
      .def(py::init<>())
      .def_readwrite("config", &ConferenceBundle::config)
      .def_readwrite("papers", &ConferenceBundle::papers)
      .def_readwrite("events", &ConferenceBundle::events)
      .def_readwrite("source_dir", &ConferenceBundle::source_dir);

  // Ingest

  py::class_<ValidationIssue>(m, "ValidationIssue")
      .def_readonly("file", &ValidationIssue::file)
      .def_readonly("location", &ValidationIssue::location)
      .def_readonly("message", &ValidationIssue::message)
      .def("__str__", &ValidationIssue::to_string);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("errors", &ValidationReport::errors)
      .def_readonly("warnings", &ValidationReport::warnings)
      .def("ok", &ValidationReport::ok);

  m.def("load_conference", [](const std::filesystem::path& dir) { return load_conference(dir); }, "input_dir"_a,
        "Load and validate an input directory. Raises IngestError listing every problem.");
  m.def(
      "check_conference",
      [](const std::filesystem::path& dir) {
        ValidationReport report;
        try {
          load_conference(dir, &report);
        } catch (const IngestError& e) {
          report = e.report();
        }
        return report;
      },
      "input_dir"_a, "Validation report for an input directory; never raises for bad input.");
  m.def("validate", &validate, "bundle"_a);

  // Schedule

  py::class_<LocalizedEvent>(m, "LocalizedEvent")
      .def_readonly("event", &LocalizedEvent::event)
      .def_property_readonly("local_start", [](const LocalizedEvent& e) { return e.local_start.iso(); })
      .def_property_readonly("local_end", [](const LocalizedEvent& e) { return e.local_end.iso(); })
      .def_property_readonly("day_key", [](const LocalizedEvent& e) { return e.day_key.iso(); });

  m.def(
      "localize_schedule",
      [](const std::vector<EventRecord>& events, const std::string& zone) {
        std::vector<std::pair<std::string, std::vector<LocalizedEvent>>> out;
        for (auto& day : localize_schedule(events, zone)) out.emplace_back(day.day_key.iso(), std::move(day.events));
        return out;
      },
      "events"_a, "zone"_a, "List of (YYYY-MM-DD, [LocalizedEvent]) in day order.");
  m.def("export_ical", &export_ical, "bundle"_a);
  m.def("is_known_timezone", &is_known_timezone, "zone"_a);

  // Embedding

  py::class_<WordVectorTable>(m, "WordVectorTable")
      .def(py::init<std::size_t>(), "dimension"_a)
      .def_property_readonly("dimension", &WordVectorTable::dimension)
      .def("__len__", &WordVectorTable::size)
      .def("insert", &WordVectorTable::insert, "token"_a, "vector"_a)
      .def(
          "find",
          [](const WordVectorTable& t, const std::string& token) -> std::optional<std::vector<double>> {
            if (const auto* v = t.find(token)) return *v;
            return std::nullopt;
          },
          "token"_a)
      .def("scaled", &WordVectorTable::scaled, "factor"_a);

  m.def("parse_word_vectors", &parse_word_vectors, "text"_a);
  m.def("load_word_vectors", &load_word_vectors, "path"_a);
  m.def("tokenize", &tokenize, "text"_a);

  py::class_<DocumentEmbedding>(m, "DocumentEmbedding")
      .def(py::init<>())
      .def_readwrite("paper_uid", &DocumentEmbedding::paper_uid)
      .def_readwrite("vector", &DocumentEmbedding::vector)
      .def_readwrite("coverage", &DocumentEmbedding::coverage);

  m.def("embed_document", &embed_document, "abstract"_a, "table"_a);
  m.def(
      "embed_corpus",
      [](const ConferenceBundle& b, const WordVectorTable& t, py::object log) {
        auto sink = py_log(log);
        py::gil_scoped_release release;
        return embed_corpus(b, t, sink).rows;
      },
      "bundle"_a, "table"_a, "log"_a = py::none());

  // Projection

  py::class_<TsneParams>(m, "TsneParams")
      .def(py::init<>())
      .def_readwrite("perplexity", &TsneParams::perplexity)
      .def_readwrite("iterations", &TsneParams::iterations)
      .def_readwrite("learning_rate", &TsneParams::learning_rate)
      .def_readwrite("momentum_early", &TsneParams::momentum_early)
      .def_readwrite("momentum_late", &TsneParams::momentum_late)
      .def_readwrite("momentum_switch_iter", &TsneParams::momentum_switch_iter)
      .def_readwrite("early_exaggeration_factor", &TsneParams::early_exaggeration_factor)
      .def_readwrite("early_exaggeration_iters", &TsneParams::early_exaggeration_iters)
      .def_readwrite("seed", &TsneParams::seed);

  py::class_<Layout>(m, "Layout")
      .def(py::init<>())
      .def_property(
          "y", [](const Layout& l) { return to_pairs(l.y); }, [](Layout& l, const Pairs& p) { l.y = to_points(p); })
      .def_readwrite("final_kl", &Layout::final_kl)
      .def_readwrite("seed", &Layout::seed)
      .def("__len__", &Layout::size);

  py::class_<RowCalibration>(m, "RowCalibration")
      .def_readonly("beta", &RowCalibration::beta)
      .def_readonly("p_cond", &RowCalibration::p_cond)
      .def_readonly("perplexity", &RowCalibration::perplexity)
      .def_readonly("iterations", &RowCalibration::iterations)
      .def_readonly("converged", &RowCalibration::converged);

  m.def("pairwise_sq_distances", [](const Rows& v) { return to_rows(pairwise_sq_distances(v)); }, "vectors"_a);
  m.def(
      "calibrate_row",
      [](const std::vector<double>& row, std::size_t self, double perplexity, double tol, int max_iter) {
        return calibrate_row(row, self, perplexity, tol, max_iter);
      },
      "d2_row"_a, "self_index"_a, "perplexity"_a, "tol"_a = 1e-5, "max_iter"_a = 64);
  m.def(
      "conditional_affinities",
      [](const Rows& d2, double perplexity) { return to_rows(conditional_affinities(to_square(d2), perplexity)); },
      "d2"_a, "perplexity"_a);
  m.def("symmetrize", [](const Rows& p) { return to_rows(symmetrize(to_square(p))); }, "p_cond"_a);
  m.def("kl_divergence", [](const Rows& p, const Pairs& y) { return kl_divergence(to_square(p), to_points(y)); },
        "p"_a, "y"_a);
  m.def(
      "tsne_gradient",
      [](const Rows& p, const Pairs& y, double ex) { return to_pairs(tsne_gradient(to_square(p), to_points(y), ex)); },
      "p"_a, "y"_a, "exaggeration"_a = 1.0);
  m.def("initial_layout", [](std::size_t n, std::uint64_t seed) { return to_pairs(initial_layout(n, seed)); },
        "n"_a, "seed"_a);
  m.def(
      "tsne_optimize",
      [](const Rows& p, const TsneParams& params, py::object log) {
        auto sink = py_log(log);
        auto sq = to_square(p);
        py::gil_scoped_release release;
        return tsne_optimize(sq, params, sink);
      },
      "p"_a, "params"_a = TsneParams{}, "log"_a = py::none());
  m.def(
      "project_corpus",
      [](const std::vector<DocumentEmbedding>& e, const TsneParams& params, py::object log) {
        auto sink = py_log(log);
        py::gil_scoped_release release;
        return project_corpus(e, params, sink);
      },
      "embeddings"_a, "params"_a = TsneParams{}, "log"_a = py::none());

  // Keywords

  m.def(
      "aggregate_keywords",
      [](const std::vector<PaperRecord>& papers, std::size_t top_k) {
        std::vector<std::pair<std::string, std::size_t>> out;
        for (auto& kc : aggregate_keywords(papers, top_k)) out.emplace_back(kc.keyword, kc.count);
        return out;
      },
      "papers"_a, "top_k"_a = kDefaultTopK, "List of (keyword, paper count), most frequent first.");
  m.def("normalize_keyword", &normalize_keyword, "keyword"_a);

  // Images

  m.def(
      "attach_images",
      [](ConferenceBundle b, const std::filesystem::path& dir) {
        auto r = attach_images(std::move(b), dir);
        return py::make_tuple(std::move(r.bundle), counts_dict(r.counts));
      },
      "bundle"_a, "input_dir"_a, "Returns (bundle with image paths, counts per source).");

  // Site

  m.def("normalize_layout", [](const Pairs& p) { return to_pairs(normalize_layout(to_points(p))); }, "points"_a);
  m.def(
      "render_site",
      [](const ConferenceBundle& b, const Layout& l, const std::filesystem::path& out,
         std::optional<std::filesystem::path> template_dir) {
        RenderOptions o;
        o.template_dir = std::move(template_dir);
        return manifest_list(render_site(b, l, out, o));
      },
      "bundle"_a, "layout"_a, "outdir"_a, "template_dir"_a = py::none(),
      "Write the site; returns the manifest as (path, kind, source) tuples.");

  // Chat

  m.def("channel_name", &channel_name, "paper"_a);

  py::class_<ProvisionReport>(m, "ProvisionReport")
      .def_readonly("created", &ProvisionReport::created)
      .def_property_readonly("already_existed", [](const ProvisionReport& r) { return r.already_existed; })
      .def_property_readonly("failed",
                             [](const ProvisionReport& r) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& f : r.failed) out.emplace_back(f.channel, f.message);
                               return out;
                             })
      .def("total", &ProvisionReport::total);

  m.def(
      "provision_channels",
      [](const std::vector<PaperRecord>& papers, const std::string& base_url, const std::string& token,
         int max_retries, int timeout_ms, int initial_backoff_ms, int max_in_flight, py::object log) {
        ChatServerClient c;
        c.base_url = base_url;
        c.auth_token = token;
        c.max_retries = max_retries;
        c.timeout = std::chrono::milliseconds(timeout_ms);
        c.initial_backoff = std::chrono::milliseconds(initial_backoff_ms);
        c.max_in_flight = max_in_flight;
        auto sink = py_log(log);
        py::gil_scoped_release release;
        return provision_channels(papers, c, sink);
      },
      "papers"_a, "base_url"_a, "token"_a, "max_retries"_a = 3, "timeout_ms"_a = 5000,
      "initial_backoff_ms"_a = 200, "max_in_flight"_a = 1, "log"_a = py::none());

  m.def(
      "conformance_fixtures",
      [](const ConferenceBundle& b, std::vector<std::string> zones, std::size_t subsets, std::uint64_t seed) {
        ConformanceOptions o{std::move(zones), subsets, seed};
        std::vector<std::pair<std::string, std::string>> out;
        for (auto& f : conformance_fixtures(b, o)) out.emplace_back(f.path, std::move(f.content));
        return out;
      },
      "bundle"_a, "zones"_a = std::vector<std::string>{}, "random_subsets"_a = 10, "seed"_a = 1,
      "Reference schedule and keyword outputs as (path, json text) pairs.");

  // Pipeline

  m.def(
      "build_site",
      [](const std::filesystem::path& in, const std::filesystem::path& out, const TsneParams& params,
         bool skip_projection, bool provision_chat, const std::string& chat_token,
         std::optional<std::filesystem::path> template_dir, py::object log) {
        BuildOptions o;
        o.input_dir = in;
        o.output_dir = out;
        o.tsne = params;
        o.skip_projection = skip_projection;
        o.provision_chat = provision_chat;
        o.chat_token = chat_token;
        o.render.template_dir = std::move(template_dir);
        auto sink = py_log(log);
        BuildResult r;
        {
          py::gil_scoped_release release;
          r = build_site(o, sink);
        }
        py::dict d;
        d["warnings"] = r.report.warnings;
        d["images"] = counts_dict(r.images);
        d["layout"] = r.layout;
        d["chat"] = r.chat ? py::cast(*r.chat) : py::none();
        d["manifest"] = manifest_list(r.manifest);
        return d;
      },
      "input_dir"_a, "output_dir"_a, "params"_a = TsneParams{}, "skip_projection"_a = false,
      "provision_chat"_a = false, "chat_token"_a = "", "template_dir"_a = py::none(), "log"_a = py::none(),
      "Run ingest, images, projection, optional chat provisioning and rendering.");
}
