#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "miniconf/model.hpp"

namespace miniconf {

class WordVectorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pretrained word vectors: lowercase token -> d-vector.
class WordVectorTable {
 public:
  explicit WordVectorTable(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Token is lowercased. Returns false (and keeps the old vector) on a
  /// duplicate. Throws WordVectorError on a dimension mismatch or empty token.
  bool insert(std::string_view token, std::vector<double> vector);

  const std::vector<double>* find(std::string_view token) const;

  /// Copy with every vector multiplied by `factor`.
  WordVectorTable scaled(double factor) const;

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, std::vector<double>> entries_;
};

/// Reads `token v1 ... vd` lines. A first line consisting of exactly two
/// integers is taken as a `<count> <d>` header. Throws WordVectorError with
/// the offending line number on malformed input.
WordVectorTable load_word_vectors(const std::filesystem::path& path);
WordVectorTable parse_word_vectors(std::string_view text);

/// Lowercases ASCII and splits on every non-alphanumeric byte. Bytes >= 0x80
/// are kept inside tokens so UTF-8 words survive intact.
std::vector<std::string> tokenize(std::string_view text);

struct DocumentEmbedding {
  std::string paper_uid;
  std::vector<double> vector;
  double coverage = 0.0;  // fraction of tokens found in the table
};

/// Mean of the in-table token vectors, L2-normalised. Zero vector with
/// coverage 0 when no token is known.
DocumentEmbedding embed_document(std::string_view abstract, const WordVectorTable& table);

struct CorpusEmbedding {
  std::vector<DocumentEmbedding> rows;      // bundle paper order
  std::vector<std::string> low_coverage;    // uids with coverage < 0.5
};

CorpusEmbedding embed_corpus(const ConferenceBundle& bundle, const WordVectorTable& table,
                             const LogSink& log = {});

}  // namespace miniconf
