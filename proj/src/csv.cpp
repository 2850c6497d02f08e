#include "miniconf/csv.hpp"

namespace miniconf::csv {

std::string trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view cell) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= cell.size()) {
    auto bar = cell.find('|', pos);
    if (bar == std::string_view::npos) bar = cell.size();
    auto item = trim(cell.substr(pos, bar - pos));
    if (!item.empty()) out.push_back(std::move(item));
    pos = bar + 1;
  }
  return out;
}

std::vector<Record> parse(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<Record> records;
  Record current;
  std::string field;
  std::size_t line = 1;
  std::size_t i = 0;
  bool record_open = false;
  const std::size_t n = text.size();

  auto end_record = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
    bool blank = current.fields.size() == 1 && current.fields[0].empty();
    if (!blank) records.push_back(std::move(current));
    current = Record{};
    record_open = false;
  };

  while (i < n) {
    if (!record_open) {
      current.line = line;
      record_open = true;
    }
    char c = text[i];
    if (c == '"' && field.empty()) {
      // Quoted field.
      std::size_t start_line = line;
      ++i;
      bool closed = false;
      while (i < n) {
        char q = text[i];
        if (q == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        if (q == '\n') ++line;
        field.push_back(q);
        ++i;
      }
      if (!closed) throw ParseError(start_line, "unterminated quoted field");
      if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
        throw ParseError(line, "unexpected character after closing quote");
      continue;
    }
    if (c == ',') {
      current.fields.push_back(std::move(field));
      field.clear();
      ++i;
    } else if (c == '\r' && i + 1 < n && text[i + 1] == '\n') {
      end_record();
      i += 2;
      ++line;
    } else if (c == '\n') {
      end_record();
      ++i;
      ++line;
    } else {
      field.push_back(c);
      ++i;
    }
  }
  if (record_open) end_record();
  return records;
}

}  // namespace miniconf::csv
