#include "treecount/partition.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>

namespace treecount {

PartitionSpec::PartitionSpec(std::vector<PartitionRule> rules, Default fallback)
    : rules_(std::move(rules)), fallback_(fallback) {
  compiled_.reserve(rules_.size());
  for (const auto& r : rules_) {
    try {
      compiled_.emplace_back(r.pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      throw std::invalid_argument("bad partition pattern '" + r.pattern + "': " + e.what());
    }
  }
}

PartitionSpec PartitionSpec::gum() {
  return PartitionSpec({
      {"^GUM_(interview|conversation|podcast|vlog|court|speech)_", "spoken"},
      {"^GUM_(news|academic|fiction|whow|bio|essay|letter|textbook|voyage)_", "written"},
  });
}

PartitionSpec PartitionSpec::identity(std::string subset) {
  return PartitionSpec({{"", std::move(subset)}});
}

PartitionSpec PartitionSpec::parse(std::istream& in, Default fallback) {
  std::vector<PartitionRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab + 1 == line.size())
      throw std::invalid_argument("partition spec line " + std::to_string(line_no) +
                                  ": expected 'pattern<TAB>subset'");
    rules.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return PartitionSpec(std::move(rules), fallback);
}

PartitionSpec PartitionSpec::from_file(const std::string& path, Default fallback) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse(in, fallback);
}

std::string PartitionSpec::assign(const std::string& doc_id) const {
  for (std::size_t i = 0; i < rules_.size(); ++i)
    if (std::regex_search(doc_id, compiled_[i])) return rules_[i].subset;
  if (fallback_ == Default::unassigned_bucket) return kUnassignedSubset;
  throw std::runtime_error("document '" + doc_id + "' matches no partition rule");
}

std::map<std::string, Treebank> partition_treebank(const Treebank& tb, const PartitionSpec& spec) {
  std::map<std::string, Treebank> out;
  for (const auto& doc : tb.documents()) {
    if (doc.id.empty()) throw std::runtime_error("document without an id cannot be partitioned");
    const auto subset = spec.assign(doc.id);
    auto [it, inserted] = out.try_emplace(subset, tb.corpus_id() + "-" + subset);
    it->second.documents().push_back(doc);
  }
  return out;
}

}  // namespace treecount
