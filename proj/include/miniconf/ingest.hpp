#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "miniconf/model.hpp"

namespace miniconf {

struct ValidationIssue {
  std::string file;
  std::string location;  // "row 3", "key default_timezone", "paper gan-paper", ...
  std::string message;

  std::string to_string() const;
  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool ok() const { return errors.empty(); }
  void merge(const ValidationReport& other);
};

/// Raised when inputs cannot form a valid bundle. Carries the full report.
class IngestError : public std::runtime_error {
 public:
  explicit IngestError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

inline constexpr const char* kConfigFile = "conference.yml";
inline constexpr const char* kPapersFile = "papers.csv";
inline constexpr const char* kEventsFile = "events.csv";

/// Reads conference.yml, papers.csv and events.csv from `input_dir`.
///
/// All problems found are collected before failing, so the thrown
/// IngestError lists every parse error and invariant violation rather than
/// only the first. When `report` is given, it receives the warnings of a
/// successful load (unknown columns, missing media, ...).
ConferenceBundle load_conference(const std::filesystem::path& input_dir,
                                 ValidationReport* report = nullptr);

/// Checks every bundle invariant. Never throws; problems are data.
ValidationReport validate(const ConferenceBundle& bundle);

}  // namespace miniconf
