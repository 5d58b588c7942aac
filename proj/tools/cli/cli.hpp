#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace pqcat::cli {

/// One result line. Keys serialize sorted; integers that can exceed a
/// machine word are decimal strings.
struct OutputRecord {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json result;
  std::string provenance;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

nlohmann::json to_json(const OutputRecord& record);
OutputRecord record_from_json(const nlohmann::json& j);

enum class Format { jsonl, csv };

/// jsonl: one object per line. csv: a header of flattened keys (nested
/// objects joined with '.', arrays joined with ';') and one row per record.
/// An empty list writes nothing.
void emit(const std::vector<OutputRecord>& records, Format format, std::ostream& out);

enum ExitCode : int {
  kSuccess = 0,
  kDomainError = 1,
  kResourceError = 2,
  kUsage = 64,
};

/// Parses args (without the program name), runs one subcommand and writes
/// its records to out. Diagnostics and usage go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pqcat::cli
