#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "treecount/comparator.hpp"
#include "treecount/conllu.hpp"
#include "treecount/extractor.hpp"
#include "treecount/normalizer.hpp"

namespace treecount::cli {

enum ExitCode { kOk = 0, kDataError = 1, kUsageError = 2 };

/// Environment variable naming the default output directory.
inline constexpr const char* kOutdirEnv = "TREECOUNT_OUTDIR";

/// Settings shared by the subcommands. Precedence: command-line flags, then
/// config-file keys, then built-in defaults.
struct RunConfig {
  ExtractionConfig extraction;
  PruneSpec prune;
  std::size_t segment_size = 1000;
  PercentDiffMode mode = PercentDiffMode::footnote;
  double min_g2 = 0.0;
  std::size_t top_n = 200;
  std::size_t min_freq = 2;
  ParseMode parse_mode = ParseMode::strict;
  unsigned workers = 1;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// key=value lines (node_type, labeled, label_subtypes, fixed, segment_size,
/// prune_labels); "#" starts a comment. Unknown keys and bad values throw
/// ConfigError naming the line.
void apply_config_file(std::istream& in, RunConfig& cfg);
void apply_config_path(const std::string& path, RunConfig& cfg);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace treecount::cli
