#pragma once

#include <iosfwd>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "treecount/conllu.hpp"

namespace treecount {

struct PartitionRule {
  std::string pattern;  // ECMAScript regex, searched in the document id
  std::string subset;
};

/// Ordered rules; the first matching rule assigns the document.
class PartitionSpec {
 public:
  enum class Default { error, unassigned_bucket };

  PartitionSpec() = default;
  PartitionSpec(std::vector<PartitionRule> rules, Default fallback = Default::error);

  /// GUM genre infixes mapped to "spoken" and "written".
  static PartitionSpec gum();
  /// Every document goes to `subset`.
  static PartitionSpec identity(std::string subset = "all");
  /// Lines "pattern<TAB>subset"; blank lines and "#" comments are skipped.
  static PartitionSpec parse(std::istream& in, Default fallback = Default::error);
  static PartitionSpec from_file(const std::string& path, Default fallback = Default::error);

  const std::vector<PartitionRule>& rules() const { return rules_; }
  Default fallback() const { return fallback_; }

  /// Subset name for a document id; "unassigned" for unmatched ids under the
  /// bucket default. Throws std::runtime_error under Default::error.
  std::string assign(const std::string& doc_id) const;

 private:
  std::vector<PartitionRule> rules_;
  std::vector<std::regex> compiled_;
  Default fallback_ = Default::error;
};

inline constexpr const char* kUnassignedSubset = "unassigned";

/// Splits whole documents into subsets; each subset keeps the input order
/// and is named `<corpus_id>-<subset>`.
std::map<std::string, Treebank> partition_treebank(const Treebank& tb, const PartitionSpec& spec);

}  // namespace treecount
