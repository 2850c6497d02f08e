#include <doctest.h>

#include <algorithm>

#include "miniconf/ingest.hpp"
#include "miniconf/site.hpp"
#include "../support/fixtures.hpp"

using namespace miniconf;
namespace ts = testing_support;

namespace {

ValidationReport report_for(const std::filesystem::path& dir) {
  try {
    ValidationReport r;
    load_conference(dir, &r);
    return r;
  } catch (const IngestError& e) {
    return e.report();
  }
}

bool any_error_contains(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.errors.begin(), r.errors.end(),
                     [&](const ValidationIssue& i) { return i.to_string().find(needle) != std::string::npos; });
}

Layout zero_layout(std::size_t n) {
  Layout l;
  l.y.assign(n, Point2{});
  return l;
}

}  // namespace

TEST_SUITE("ingest") {
  TEST_CASE("small fixture loads with typed fields") {
    ValidationReport report;
    auto b = load_conference(ts::fixture("conf3"), &report);
    CHECK(report.ok());
    CHECK(b.config.name == "Small Workshop: Round Trip");
    CHECK(b.config.default_timezone == "Europe/Berlin");
    REQUIRE(b.papers.size() == 3);
    REQUIRE(b.events.size() == 2);
    CHECK(b.papers[0].abstract == "An abstract with \"quotes\", commas and unicode: caf\xc3\xa9.");
    CHECK(b.papers[0].session_uids == std::vector<std::string>{"posters"});
    CHECK(b.papers[2].authors == std::vector<std::string>{"Dan Brown", "Eve Black"});
    CHECK(b.papers[2].keywords == std::vector<std::string>{"gamma", "delta"});
    CHECK(b.papers[1].chat_channel == "paper-p2");
    CHECK(b.events[0].description == "Line one\nline two");
    CHECK(b.events[1].kind == EventKind::paper_session);
    CHECK(format_utc(b.events[1].start_utc) == "2021-06-01T08:00:00Z");
  }

  TEST_CASE("header-only tables give an empty bundle") {
    auto b = load_conference(ts::fixture("empty"));
    CHECK(b.papers.empty());
    CHECK(b.events.empty());
  }

  TEST_CASE("loading twice is deterministic") {
    auto a = load_conference(ts::fixture("conf12"));
    auto b = load_conference(ts::fixture("conf12"));
    CHECK(a.config == b.config);
    CHECK(a.papers == b.papers);
    CHECK(a.events == b.events);
  }

  TEST_CASE("duplicate uid names both rows") {
    auto r = report_for(ts::fixture("invalid/duplicate_uid"));
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].message.find("duplicate uid") != std::string::npos);
    CHECK(r.errors[0].message.find("row 2") != std::string::npos);
    CHECK(r.errors[0].message.find("row 4") != std::string::npos);
  }

  TEST_CASE("dangling session reference cites paper and target") {
    auto r = report_for(ts::fixture("invalid/dangling_ref"));
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].file == kPapersFile);
    CHECK(r.errors[0].message.find("p1") != std::string::npos);
    CHECK(r.errors[0].message.find("'nope'") != std::string::npos);
  }

  TEST_CASE("timestamp without offset is rejected") {
    auto r = report_for(ts::fixture("invalid/bad_timestamp"));
    REQUIRE_FALSE(r.ok());
    CHECK(any_error_contains(r, "malformed timestamp '2021-06-01 08:00'"));
  }

  TEST_CASE("unknown timezone") {
    auto r = report_for(ts::fixture("invalid/unknown_timezone"));
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].message.find("Mars/Olympus_Mons") != std::string::npos);
  }

  TEST_CASE("missing events file") {
    auto r = report_for(ts::fixture("invalid/missing_file"));
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].file == kEventsFile);
    CHECK(r.errors[0].message == "missing file");
  }

  TEST_CASE("nonexistent input directory") {
    CHECK_THROWS_AS(load_conference("/nonexistent/miniconf-input"), IngestError);
  }

  TEST_CASE("all problems are reported together") {
    ts::TempDir tmp;
    auto dir = tmp / "in";
    ts::copy_fixture("conf3", dir);
    ts::spit(dir / "papers.csv",
             "uid,title,authors,abstract,keywords,session_uids,extra\n"
             "Bad Uid,T,A,,,,x\n"
             "ok,,,,,keynote-1,x\n"
             "short,T\n");
    auto r = report_for(dir);
    CHECK(any_error_contains(r, "uid 'Bad Uid'"));
    CHECK(any_error_contains(r, "title must be non-empty"));
    CHECK(any_error_contains(r, "authors must be non-empty"));
    CHECK(any_error_contains(r, "not a paper-session"));
    CHECK(any_error_contains(r, "(row 4): expected 7 fields"));
    CHECK(std::any_of(r.warnings.begin(), r.warnings.end(),
                      [](const ValidationIssue& w) { return w.message.find("'extra'") != std::string::npos; }));
  }

  TEST_CASE("event must start before it ends and kind must be known") {
    ts::TempDir tmp;
    auto dir = tmp / "in";
    ts::copy_fixture("conf3", dir);
    ts::spit(dir / "events.csv",
             "uid,title,kind,start,end\n"
             "posters,P,paper-session,2021-06-01T10:00Z,2021-06-01T10:00Z\n"
             "x,X,workshop,2021-06-01T10:00Z,2021-06-01T11:00Z\n");
    auto r = report_for(dir);
    CHECK(any_error_contains(r, "must start before it ends"));
    CHECK(any_error_contains(r, "unknown event kind 'workshop'"));
  }

  TEST_CASE("missing required column") {
    ts::TempDir tmp;
    auto dir = tmp / "in";
    ts::copy_fixture("conf3", dir);
    ts::spit(dir / "papers.csv", "uid,title,authors,abstract,keywords\n");
    CHECK(any_error_contains(report_for(dir), "missing required column 'session_uids'"));
  }

  TEST_CASE("config problems") {
    ts::TempDir tmp;
    auto dir = tmp / "in";
    ts::copy_fixture("conf3", dir);
    ts::spit(dir / "conference.yml",
             "name: ''\nbase_url: https://x.example.org\nchat_embed_template: https://c/{room}\n"
             "page_toggles:\n  schedule: false\ncolour: blue\n");
    auto r = report_for(dir);
    CHECK(any_error_contains(r, "name must be non-empty"));
    CHECK(any_error_contains(r, "must contain '{channel}'"));
    CHECK(r.warnings.size() >= 2);

    ts::spit(dir / "conference.yml", "name: [unclosed\n");
    CHECK(report_for(dir).errors.size() == 1);
  }

  TEST_CASE("valid fixture validates clean and media warnings are enumerated") {
    auto b = load_conference(ts::fixture("conf3"));
    auto r = validate(b);
    CHECK(r.errors.empty());
    CHECK(r.warnings.empty());

    auto big = load_conference(ts::fixture("conf12"));
    std::size_t expected = 0;
    for (const auto& p : big.papers) expected += !p.pdf_url && !p.video_url;
    auto r12 = validate(big);
    CHECK(r12.errors.empty());
    CHECK(expected == 1);
    CHECK(r12.warnings.size() == expected);
  }

  TEST_CASE("validate on an in-memory bundle") {
    auto b = load_conference(ts::fixture("conf3"));
    b.papers[1].session_uids = {"nope"};
    auto r = validate(b);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].message.find("'p2'") != std::string::npos);
    CHECK(r.errors[0].message.find("'nope'") != std::string::npos);
  }

  TEST_CASE("round trip through the data bundles") {
    for (const char* name : {"conf3", "conf12", "empty"}) {
      CAPTURE(name);
      auto b = load_conference(ts::fixture(name));
      ts::TempDir tmp;
      for (const auto& f : emit_data_bundles(b, zero_layout(b.papers.size())))
        ts::spit(tmp / f.path, f.content);
      auto back = load_data_bundles(tmp.path());
      CHECK(back.papers == b.papers);
      CHECK(back.events == b.events);
      CHECK(back.name == b.config.name);
      CHECK(back.default_timezone == b.config.default_timezone);
      CHECK(back.chat_server_url == b.config.chat_server_url);
      CHECK(back.page_toggles == b.config.page_toggles);
      // Second generation of the bundle is byte-identical.
      ConferenceBundle again = b;
      again.papers = back.papers;
      again.events = back.events;
      auto first = emit_data_bundles(b, zero_layout(b.papers.size()));
      auto second = emit_data_bundles(again, zero_layout(b.papers.size()));
      REQUIRE(first.size() == second.size());
      for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i].content == second[i].content);
    }
  }
}
