#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace miniconf {

std::string html_escape(std::string_view text);

/// Markup that is already safe to insert verbatim.
class Html {
 public:
  Html() = default;
  static Html trusted(std::string markup) { return Html(std::move(markup)); }
  static Html text(std::string_view plain) { return Html(html_escape(plain)); }

  const std::string& str() const { return markup_; }
  bool empty() const { return markup_.empty(); }

  Html& operator+=(const Html& other) {
    markup_ += other.markup_;
    return *this;
  }

 private:
  explicit Html(std::string markup) : markup_(std::move(markup)) {}
  std::string markup_;
};

/// Plain strings are escaped on insertion; Html values go in as-is.
using SlotValue = std::variant<std::string, Html>;
using Slots = std::map<std::string, SlotValue>;

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text with `{{slot}}` placeholders. Every placeholder is required.
class PageTemplate {
 public:
  PageTemplate(std::string name, std::string_view text);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& required_slots() const { return required_; }

  /// Throws TemplateError naming the first unfilled slot.
  std::string render(const Slots& slots) const;

 private:
  struct Segment {
    bool is_slot;
    std::string text;  // literal text or slot name
  };
  std::string name_;
  std::vector<Segment> segments_;
  std::vector<std::string> required_;
};

}  // namespace miniconf
