#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "miniconf/model.hpp"
#include "miniconf/site.hpp"

namespace miniconf {

/// Reference outputs a frontend implementation is checked against.
///
/// `conformance/schedule.json`: for each zone, the localized daily schedule
/// as [{day, events: [{uid, local_start, local_end}]}].
/// `conformance/keywords.json`: [{name, uids, top_k, summary: [{keyword, count}]}]
/// for the whole corpus, each paper session and `random_subsets` seeded
/// selections.
struct ConformanceOptions {
  std::vector<std::string> zones;  // the default zone and UTC are always included
  std::size_t random_subsets = 10;
  std::uint64_t seed = 1;
};

std::vector<OutputFile> conformance_fixtures(const ConferenceBundle& bundle,
                                             const ConformanceOptions& options = {});

}  // namespace miniconf
