#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "treecount/conllu.hpp"
#include "treecount/extractor.hpp"

namespace treecount {

struct InventoryEntry {
  std::size_t count = 0;
  std::string head_symbol;
  int node_count = 0;
};

/// Frequency list of canonical trees. Every word heads exactly one
/// structure, so token_total equals the source treebank's word total.
struct Inventory {
  std::string corpus_id;
  ExtractionConfig config;
  std::size_t token_total = 0;
  std::unordered_map<std::string, InventoryEntry> entries;

  void add(const CanonicalTree& tree, std::size_t count = 1);
  std::size_t count_of(const std::string& text) const;
  std::size_t types() const { return entries.size(); }
};

/// Mismatched configurations between two inventories.
class ConfigMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require_same_config(const Inventory& a, const Inventory& b);

/// `workers` > 1 extracts sentence chunks concurrently and merges them.
Inventory build_inventory(const Treebank& tb, const ExtractionConfig& cfg, unsigned workers = 1);

Inventory merge_inventories(const Inventory& a, const Inventory& b);

/// Entries ordered by descending count, then ascending canonical text.
std::vector<std::pair<std::string, InventoryEntry>> sorted_entries(const Inventory& inv);

struct InventoryStats {
  std::size_t types = 0;
  std::size_t tokens = 0;
  std::size_t hapax_count = 0;
  double hapax_share = 0.0;
  double ttr = 0.0;
  std::map<std::string, double> head_symbol_shares;
};

InventoryStats inventory_stats(const Inventory& inv);

struct SttrSeries {
  std::size_t segment_size = 1000;
  std::vector<std::size_t> segment_tokens;
  std::vector<double> per_segment_ttr;
  double mean = 0.0;
  /// Student-t 95% half-width over segments; 0 when there is one segment.
  double ci95_half_width = 0.0;
};

/// Segmented TTR over the structure stream in corpus order. Segments span
/// sentence and document boundaries; a trailing partial segment is kept.
/// Throws std::invalid_argument on an empty treebank or segment_size 0.
SttrSeries segmented_ttr(const Treebank& tb, const ExtractionConfig& cfg,
                         std::size_t segment_size = 1000);
SttrSeries sttr_from_values(std::vector<double> ttrs, std::vector<std::size_t> sizes,
                            std::size_t segment_size);

// Inventory TSV: "# token_total = N", "# config = ...", then the header
// "tree\tnode_count\thead_symbol\tabs_freq\trel_freq_per_million".
void write_inventory_tsv(const Inventory& inv, std::ostream& out);
std::string inventory_tsv_string(const Inventory& inv);
/// Throws std::runtime_error with the offending line number.
Inventory read_inventory_tsv(std::istream& in, std::string corpus_id);
Inventory read_inventory_file(const std::string& path);

}  // namespace treecount
