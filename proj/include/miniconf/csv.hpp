#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace miniconf::csv {

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Comma-separated, double-quote quoting ("" escapes a quote), LF or CRLF
/// record terminators. A leading UTF-8 BOM is skipped. Blank lines are
/// skipped. Throws ParseError on an unterminated quote or stray characters
/// after a closing quote.
std::vector<Record> parse(std::string_view text);

/// Splits an in-cell list on '|', trimming whitespace and dropping empties.
std::vector<std::string> split_list(std::string_view cell);

std::string trim(std::string_view s);

}  // namespace miniconf::csv
