#include "miniconf/embedding.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace miniconf {

namespace {

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; }

bool is_token_byte(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u >= 0x80;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = ascii_lower(c);
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) parts.push_back(line.substr(i, j - i));
    i = j;
  }
  return parts;
}

bool parse_double(std::string_view s, double& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_uint(std::string_view s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

WordVectorTable::WordVectorTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw WordVectorError("word vector dimension must be positive");
}

bool WordVectorTable::insert(std::string_view token, std::vector<double> vector) {
  if (token.empty()) throw WordVectorError("empty token");
  if (vector.size() != dimension_)
    throw WordVectorError(fmt::format("token '{}' has {} components, expected {}", token,
                                      vector.size(), dimension_));
  return entries_.emplace(lowercase(token), std::move(vector)).second;
}

const std::vector<double>* WordVectorTable::find(std::string_view token) const {
  auto it = entries_.find(std::string(token));
  return it == entries_.end() ? nullptr : &it->second;
}

WordVectorTable WordVectorTable::scaled(double factor) const {
  WordVectorTable out(dimension_);
  out.entries_ = entries_;
  for (auto& [_, v] : out.entries_)
    for (auto& x : v) x *= factor;
  return out;
}

WordVectorTable parse_word_vectors(std::string_view text) {
  std::optional<WordVectorTable> table;
  std::size_t expected_dim = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    auto parts = split_ws(line);
    if (parts.empty()) continue;

    std::size_t count = 0, dim = 0;
    if (line_no == 1 && parts.size() == 2 && parse_uint(parts[0], count) && parse_uint(parts[1], dim)) {
      if (dim == 0) throw WordVectorError("line 1: header declares dimension 0");
      expected_dim = dim;
      continue;
    }
    if (parts.size() < 2) throw WordVectorError(fmt::format("line {}: token without vector", line_no));
    std::vector<double> v(parts.size() - 1);
    for (std::size_t i = 1; i < parts.size(); ++i)
      if (!parse_double(parts[i], v[i - 1]))
        throw WordVectorError(fmt::format("line {}: '{}' is not a finite number", line_no, parts[i]));
    if (!table) {
      if (expected_dim && expected_dim != v.size())
        throw WordVectorError(fmt::format("line {}: {} components, header says {}", line_no,
                                          v.size(), expected_dim));
      table.emplace(v.size());
    }
    if (v.size() != table->dimension())
      throw WordVectorError(fmt::format("line {}: {} components, expected {}", line_no, v.size(),
                                        table->dimension()));
    table->insert(parts[0], std::move(v));  // first occurrence wins
  }
  if (!table) throw WordVectorError("word vector file contains no vectors");
  return std::move(*table);
}

WordVectorTable load_word_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WordVectorError(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_word_vectors(ss.str());
  } catch (const WordVectorError& e) {
    throw WordVectorError(fmt::format("{}: {}", path.filename().string(), e.what()));
  }
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (is_token_byte(c)) {
      current.push_back(ascii_lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

DocumentEmbedding embed_document(std::string_view abstract, const WordVectorTable& table) {
  const auto tokens = tokenize(abstract);
  // Accumulate per distinct token in sorted order: the sum is then
  // bit-identical under any permutation of the input tokens.
  std::map<std::string_view, std::size_t> counts;
  std::size_t found = 0;
  for (const auto& t : tokens) {
    if (table.find(t)) {
      ++counts[t];
      ++found;
    }
  }

  DocumentEmbedding out;
  out.vector.assign(table.dimension(), 0.0);
  if (found == 0) return out;

  for (const auto& [token, count] : counts) {
    const auto& v = *table.find(token);
    for (std::size_t k = 0; k < v.size(); ++k) out.vector[k] += double(count) * v[k];
  }
  double norm2 = 0.0;
  for (auto& x : out.vector) {
    x /= double(found);
    norm2 += x * x;
  }
  double norm = std::sqrt(norm2);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    // Known tokens whose vectors cancel exactly: nothing to normalise.
    std::fill(out.vector.begin(), out.vector.end(), 0.0);
    out.coverage = 0.0;
    return out;
  }
  for (auto& x : out.vector) x /= norm;
  out.coverage = double(found) / double(tokens.size());
  return out;
}

CorpusEmbedding embed_corpus(const ConferenceBundle& bundle, const WordVectorTable& table,
                             const LogSink& log) {
  CorpusEmbedding out;
  out.rows.reserve(bundle.papers.size());
  for (const auto& p : bundle.papers) {
    auto e = embed_document(p.abstract, table);
    e.paper_uid = p.uid;
    if (e.coverage < 0.5) out.low_coverage.push_back(p.uid);
    out.rows.push_back(std::move(e));
  }
  if (!out.low_coverage.empty()) {
    std::string list;
    for (const auto& uid : out.low_coverage) list += (list.empty() ? "" : ", ") + uid;
    emit(log, fmt::format("warning: {} paper(s) with vocabulary coverage below 0.5: {}",
                          out.low_coverage.size(), list));
  }
  return out;
}

}  // namespace miniconf
