#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "miniconf/model.hpp"

namespace miniconf {

struct KeywordCount {
  std::string keyword;
  std::size_t count = 0;
  bool operator==(const KeywordCount&) const = default;
};

/// Counts descending, ties by keyword ascending.
using KeywordSummary = std::vector<KeywordCount>;

inline constexpr std::size_t kDefaultTopK = 15;

/// Casefolds and trims keywords, counts the papers carrying each one (a
/// paper contributes a keyword at most once) and keeps the top_k entries.
KeywordSummary aggregate_keywords(const std::vector<PaperRecord>& papers,
                                  std::size_t top_k = kDefaultTopK);

/// Same counting over pointers into a larger collection.
KeywordSummary aggregate_keywords(const std::vector<const PaperRecord*>& papers,
                                  std::size_t top_k = kDefaultTopK);

/// ASCII lowercase + whitespace trim.
std::string normalize_keyword(std::string_view keyword);

}  // namespace miniconf
