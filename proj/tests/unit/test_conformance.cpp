#include <doctest.h>

#include <json.hpp>

#include "miniconf/conformance.hpp"
#include "miniconf/ingest.hpp"
#include "miniconf/keywords.hpp"
#include "miniconf/schedule.hpp"
#include "../support/fixtures.hpp"

using namespace miniconf;
namespace ts = testing_support;

TEST_SUITE("conformance") {
  TEST_CASE("reference files agree with the modules they describe") {
    auto b = load_conference(ts::fixture("conf12"));
    ConformanceOptions opts;
    opts.zones = {"Asia/Tokyo", "UTC"};
    auto files = conformance_fixtures(b, opts);
    REQUIRE(files.size() == 2);
    auto keywords = nlohmann::json::parse(files[0].content);
    auto schedule = nlohmann::json::parse(files[1].content);

    CHECK(schedule.size() == 3);
    for (const auto& [zone, days] : schedule.items()) {
      auto ref = localize_schedule(b.events, zone);
      REQUIRE(days.size() == ref.size());
      for (std::size_t d = 0; d < ref.size(); ++d) {
        CHECK(days[d]["day"] == ref[d].day_key.iso());
        REQUIRE(days[d]["events"].size() == ref[d].events.size());
        for (std::size_t i = 0; i < ref[d].events.size(); ++i) {
          CHECK(days[d]["events"][i]["uid"] == ref[d].events[i].event.uid);
          CHECK(days[d]["events"][i]["local_start"] == ref[d].events[i].local_start.iso());
        }
      }
    }

    CHECK(keywords.size() == 1 + 2 + opts.random_subsets);
    for (const auto& sel : keywords) {
      std::vector<PaperRecord> chosen;
      for (const auto& uid : sel["uids"])
        for (const auto& p : b.papers)
          if (p.uid == uid) chosen.push_back(p);
      CHECK(chosen.size() == sel["uids"].size());
      auto ref = aggregate_keywords(chosen, sel["top_k"].get<std::size_t>());
      REQUIRE(sel["summary"].size() == ref.size());
      for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(sel["summary"][i]["keyword"] == ref[i].keyword);
        CHECK(sel["summary"][i]["count"] == ref[i].count);
      }
    }
    CHECK(keywords[1]["name"] == "session:session-generative");
    CHECK(keywords[0]["uids"].size() == 12);
  }

  TEST_CASE("deterministic") {
    auto b = load_conference(ts::fixture("conf12"));
    auto a = conformance_fixtures(b), c = conformance_fixtures(b);
    CHECK(a[0].content == c[0].content);
    CHECK(a[1].content == c[1].content);
  }
}
