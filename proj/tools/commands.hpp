#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "condsplit/doccano.hpp"
#include "condsplit/rule_splitter.hpp"

namespace condsplit::cli {

// Stable exit codes for pipeline use.
enum ExitCode : int {
  kSuccess = 0,
  kIoError = 1,
  kDataError = 2,
};

struct RunConfig {
  std::string input = "-";
  std::string output = "-";
  std::string format = "text";     // split: text|doccano; convert: doccano|iob
  std::string to_format = "iob";   // convert target
  ParseMode mode = ParseMode::Strict;
  bool extended_patterns = false;
  std::vector<std::string> patterns;  // subset of imperative-and, interrogative, for-phrase
  std::optional<std::string> lexicon_dir;
  std::size_t min_weak_cues = 1;
  std::string report = "table";    // evaluate/stats: table|json; graph: dot|json
  std::size_t jobs = 1;
  bool trace = false;
  bool iob_metadata = true;
  std::string model = "rule-based";
  // evaluate
  std::string gold;
  std::string pred;
  std::vector<std::string> labels = {"CD", "AC", "CS"};
  std::optional<std::string> errors_output;
  // stats: "name=path" or bare paths named after their file stem
  std::vector<std::string> splits;
};

// Splitter built from the pattern, lexicon and labeling settings.
RuleSplitter make_splitter(const RunConfig& config);

int cmd_split(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_convert(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_graph(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& log);

// Parses argv and dispatches. `out` receives data written to "-", `log`
// receives diagnostics.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

}  // namespace condsplit::cli
