#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "treecount/conllu.hpp"

namespace treecount {

enum class NodeType { upos, xpos, form, lemma, deprel, none };

std::string_view to_string(NodeType t);
/// Throws std::invalid_argument for unknown names.
NodeType node_type_from_string(std::string_view name);

/// Extraction settings. The defaults are UPOS nodes, labelled arcs, collapsed
/// label subtypes and word order treated as distinctive.
struct ExtractionConfig {
  NodeType node_type = NodeType::upos;
  bool labeled = true;
  bool label_subtypes = false;
  bool fixed = true;

  bool operator==(const ExtractionConfig&) const = default;

  /// "node_type=upos labeled=yes label_subtypes=no fixed=yes"
  std::string describe() const;
  /// Inverse of describe(); throws std::invalid_argument.
  static ExtractionConfig parse(std::string_view description);
};

/// One-line encoding of a delexicalized (sub)tree, e.g. "DET <det NOUN".
struct CanonicalTree {
  std::string text;
  int node_count = 0;
  std::string head_symbol;

  bool operator==(const CanonicalTree&) const = default;
};

/// Encodes the complete subtree rooted at token `root`. Throws
/// std::out_of_range when the id is not in the sentence.
CanonicalTree serialize_subtree(const Sentence& s, int root, const ExtractionConfig& cfg);

/// One structure per token, in token order.
std::vector<CanonicalTree> extract_sentence(const Sentence& s, const ExtractionConfig& cfg);

/// Node symbol of a token under `cfg` ("_" for NodeType::none).
std::string node_symbol(const Token& t, const ExtractionConfig& cfg);
/// Arc label of a token under `cfg` (empty when unlabelled).
std::string arc_label(const Token& t, const ExtractionConfig& cfg);

/// Recovers the head symbol of a canonical text by skipping the
/// parenthesised groups and "<label" operators that precede it.
std::string head_symbol_of(std::string_view text);

}  // namespace treecount
