#include "miniconf/conformance.hpp"

#include <algorithm>
#include <random>

#include <json.hpp>

#include "miniconf/keywords.hpp"
#include "miniconf/schedule.hpp"

namespace miniconf {

namespace {

using ojson = nlohmann::ordered_json;

ojson schedule_json(const ConferenceBundle& bundle, const std::string& zone) {
  ojson days = ojson::array();
  for (const auto& day : localize_schedule(bundle.events, zone)) {
    ojson events = ojson::array();
    for (const auto& e : day.events)
      events.push_back(
          {{"uid", e.event.uid}, {"local_start", e.local_start.iso()}, {"local_end", e.local_end.iso()}});
    days.push_back({{"day", day.day_key.iso()}, {"events", std::move(events)}});
  }
  return days;
}

ojson selection_json(std::string name, const std::vector<const PaperRecord*>& papers) {
  ojson uids = ojson::array();
  for (const auto* p : papers) uids.push_back(p->uid);
  ojson summary = ojson::array();
  for (const auto& kc : aggregate_keywords(papers, kDefaultTopK))
    summary.push_back({{"keyword", kc.keyword}, {"count", kc.count}});
  return {{"name", std::move(name)}, {"uids", std::move(uids)}, {"top_k", kDefaultTopK},
          {"summary", std::move(summary)}};
}

}  // namespace

std::vector<OutputFile> conformance_fixtures(const ConferenceBundle& bundle, const ConformanceOptions& options) {
  std::vector<std::string> zones = {bundle.config.default_timezone, "UTC"};
  for (const auto& z : options.zones)
    if (std::find(zones.begin(), zones.end(), z) == zones.end()) zones.push_back(z);

  ojson schedule = ojson::object();
  for (const auto& z : zones) schedule[z] = schedule_json(bundle, z);

  std::vector<const PaperRecord*> all;
  for (const auto& p : bundle.papers) all.push_back(&p);
  ojson selections = ojson::array();
  selections.push_back(selection_json("all", all));
  for (const auto& e : bundle.events) {
    if (e.kind != EventKind::paper_session) continue;
    std::vector<const PaperRecord*> members;
    for (const auto* p : all)
      if (std::find(p->session_uids.begin(), p->session_uids.end(), e.uid) != p->session_uids.end())
        members.push_back(p);
    selections.push_back(selection_json("session:" + e.uid, members));
  }
  // Raw engine output only: the engine's sequence is fixed by the standard.
  std::mt19937_64 rng(options.seed);
  for (std::size_t s = 0; s < options.random_subsets; ++s) {
    std::vector<const PaperRecord*> subset;
    for (const auto* p : all)
      if (rng() & 1u) subset.push_back(p);
    selections.push_back(selection_json("random:" + std::to_string(s), subset));
  }

  return {{"conformance/keywords.json", selections.dump(2) + "\n", EntryKind::data, "papers.csv"},
          {"conformance/schedule.json", schedule.dump(2) + "\n", EntryKind::data, "events.csv"}};
}

}  // namespace miniconf
