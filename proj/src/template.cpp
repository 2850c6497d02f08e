#include "miniconf/template.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace miniconf {

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

bool valid_slot_name(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

PageTemplate::PageTemplate(std::string name, std::string_view text) : name_(std::move(name)) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto open = text.find("{{", pos);
    if (open == std::string_view::npos) {
      segments_.push_back({false, std::string(text.substr(pos))});
      break;
    }
    auto close = text.find("}}", open + 2);
    if (close == std::string_view::npos)
      throw TemplateError(fmt::format("template '{}': unclosed '{{{{'", name_));
    auto slot = text.substr(open + 2, close - open - 2);
    while (!slot.empty() && slot.front() == ' ') slot.remove_prefix(1);
    while (!slot.empty() && slot.back() == ' ') slot.remove_suffix(1);
    if (!valid_slot_name(slot))
      throw TemplateError(fmt::format("template '{}': bad slot name '{}'", name_, slot));
    if (open > pos) segments_.push_back({false, std::string(text.substr(pos, open - pos))});
    segments_.push_back({true, std::string(slot)});
    if (std::find(required_.begin(), required_.end(), slot) == required_.end())
      required_.emplace_back(slot);
    pos = close + 2;
  }
}

std::string PageTemplate::render(const Slots& slots) const {
  for (const auto& r : required_)
    if (!slots.count(r)) throw TemplateError(fmt::format("template '{}': slot '{}' not filled", name_, r));

  std::string out;
  for (const auto& seg : segments_) {
    if (!seg.is_slot) {
      out += seg.text;
      continue;
    }
    const auto& value = slots.at(seg.text);
    if (const auto* s = std::get_if<std::string>(&value))
      out += html_escape(*s);
    else
      out += std::get<Html>(value).str();
  }
  return out;
}

}  // namespace miniconf
