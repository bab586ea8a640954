#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treecount/comparator.hpp"
#include "treecount/conllu.hpp"

namespace treecount {

struct ReproduceOptions {
  std::optional<std::string> gum;  // GUM treebank (file or directory of .conllu)
  std::optional<std::string> ssj;  // written Slovenian
  std::optional<std::string> sst;  // spoken Slovenian
  std::string outdir;
  PercentDiffMode mode = PercentDiffMode::paper_magnitudes;
  ParseMode parse_mode = ParseMode::strict;
  unsigned workers = 1;
  std::size_t segment_size = 1000;
  std::size_t min_freq = 2;
  std::size_t top_n = 200;
  std::size_t keyness_rows = 10;
};

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct GoldenCheck {
  int criterion = 0;  // acceptance criterion number
  std::string name;
  CheckStatus status = CheckStatus::skipped;
  std::string expected;
  std::string observed;
};

struct ManifestEntry {
  std::string file;  // relative to outdir
  std::string artifact;
  std::string description;
};

struct ReproduceResult {
  std::vector<ManifestEntry> manifest;
  std::vector<GoldenCheck> checks;

  bool all_passed() const;
};

/// Full pipeline: split GUM, build both normalized variants of every corpus,
/// extract inventories and write every report plus manifest.tsv and
/// summary.tsv into options.outdir. Throws std::invalid_argument when no
/// corpus is given.
ReproduceResult reproduce(const ReproduceOptions& options);

}  // namespace treecount
