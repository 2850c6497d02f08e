#include "miniconf/keywords.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "miniconf/csv.hpp"

namespace miniconf {

std::string normalize_keyword(std::string_view keyword) {
  auto out = csv::trim(keyword);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
  return out;
}

KeywordSummary aggregate_keywords(const std::vector<const PaperRecord*>& papers, std::size_t top_k) {
  if (top_k == 0) throw std::invalid_argument("top_k must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const PaperRecord* p : papers) {
    std::set<std::string> distinct;
    for (const auto& k : p->keywords) {
      auto norm = normalize_keyword(k);
      if (!norm.empty()) distinct.insert(std::move(norm));
    }
    for (const auto& k : distinct) ++counts[k];
  }

  KeywordSummary summary;
  summary.reserve(counts.size());
  for (auto& [k, c] : counts) summary.push_back({k, c});
  // counts is keyword-ordered already, so a stable sort keeps ties ascending.
  std::stable_sort(summary.begin(), summary.end(),
                   [](const KeywordCount& a, const KeywordCount& b) { return a.count > b.count; });
  if (summary.size() > top_k) summary.resize(top_k);
  return summary;
}

KeywordSummary aggregate_keywords(const std::vector<PaperRecord>& papers, std::size_t top_k) {
  std::vector<const PaperRecord*> ptrs;
  ptrs.reserve(papers.size());
  for (const auto& p : papers) ptrs.push_back(&p);
  return aggregate_keywords(ptrs, top_k);
}

}  // namespace miniconf
