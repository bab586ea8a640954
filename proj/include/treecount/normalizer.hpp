#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "treecount/conllu.hpp"

namespace treecount {

/// Core dependency labels whose branches are deleted. Subtypes are ignored
/// on both sides: "discourse:filler" is pruned by "discourse".
struct PruneSpec {
  std::set<std::string> labels;

  static PruneSpec punct_free() { return {{"punct"}}; }
  static PruneSpec disfluency_free() { return {{"punct", "reparandum", "discourse"}}; }

  /// "punct-free" | "disfluency-free" | "none"; throws std::invalid_argument.
  static PruneSpec preset(const std::string& name);
  /// Comma-separated label list, e.g. "punct,reparandum".
  static PruneSpec from_list(const std::string& csv);

  bool empty() const { return labels.empty(); }
  bool matches(std::string_view deprel) const;
  std::string to_list() const;
};

struct NormalizationStats {
  std::size_t words_before = 0;
  std::size_t words_after = 0;
  std::size_t sentences_dropped = 0;
  /// Keyed by the core label of the branch root that caused the removal.
  std::map<std::string, std::size_t> tokens_removed_by_label;

  std::size_t tokens_removed() const;
  NormalizationStats& operator+=(const NormalizationStats& other);
};

/// Deletes every branch rooted in a token whose core deprel is in `spec`.
/// Returns std::nullopt when the root is removed or nothing survives.
std::optional<Sentence> prune_branches(const Sentence& s, const PruneSpec& spec,
                                       NormalizationStats* stats = nullptr);

struct NormalizedTreebank {
  Treebank treebank;
  NormalizationStats stats;
};

NormalizedTreebank normalize_treebank(const Treebank& tb, const PruneSpec& spec);

}  // namespace treecount
