#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "treecount/comparator.hpp"
#include "treecount/inventory.hpp"
#include "treecount/normalizer.hpp"

namespace treecount {

// Plot-ready TSV writers. Every table starts with a single header line;
// "#" lines are comments.

struct NamedInventory {
  std::string name;
  const Inventory* inventory = nullptr;
};

struct NamedSeries {
  std::string name;
  const SttrSeries* series = nullptr;
};

void write_stats_tsv(const std::vector<NamedInventory>& invs, std::ostream& out);
void write_head_shares_tsv(const std::vector<NamedInventory>& invs, std::ostream& out);
void write_sttr_summary_tsv(const std::vector<NamedSeries>& series, std::ostream& out);
void write_sttr_segments_tsv(const std::vector<NamedSeries>& series, std::ostream& out);
void write_sttr_test_tsv(const std::vector<std::pair<std::string, SttrComparison>>& tests,
                         std::ostream& out);
void write_overlap_tsv(const std::vector<OverlapReport>& reports, std::ostream& out);
void write_keyness_tsv(const std::vector<KeynessRow>& rows, std::ostream& out);
void write_composition_tsv(const std::vector<CompositionRow>& rows, std::ostream& out);
void write_normalization_tsv(const std::string& corpus, const NormalizationStats& st,
                             std::ostream& out);

/// p-values and other small magnitudes: always 3 significant digits, "1.23E-05".
std::string format_scientific(double value);
std::string format_share(double value);

/// A parsed TSV table: comment lines skipped, first line is the header.
struct TsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Throws std::runtime_error when a row's width differs from the header.
TsvTable read_tsv(std::istream& in);

}  // namespace treecount
