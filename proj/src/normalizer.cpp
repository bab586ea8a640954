#include "treecount/normalizer.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace treecount {

PruneSpec PruneSpec::preset(const std::string& name) {
  if (name == "punct-free") return punct_free();
  if (name == "disfluency-free") return disfluency_free();
  if (name == "none") return {};
  throw std::invalid_argument("unknown prune preset '" + name + "'");
}

PruneSpec PruneSpec::from_list(const std::string& csv) {
  PruneSpec spec;
  std::istringstream in(csv);
  std::string label;
  while (std::getline(in, label, ',')) {
    auto core = std::string(core_label(label));
    if (!core.empty()) spec.labels.insert(core);
  }
  return spec;
}

bool PruneSpec::matches(std::string_view deprel) const {
  return labels.count(std::string(core_label(deprel))) != 0;
}

std::string PruneSpec::to_list() const {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += ',';
    out += l;
  }
  return out;
}

std::size_t NormalizationStats::tokens_removed() const {
  std::size_t n = 0;
  for (const auto& [label, count] : tokens_removed_by_label) n += count;
  return n;
}

NormalizationStats& NormalizationStats::operator+=(const NormalizationStats& other) {
  words_before += other.words_before;
  words_after += other.words_after;
  sentences_dropped += other.sentences_dropped;
  for (const auto& [label, count] : other.tokens_removed_by_label)
    tokens_removed_by_label[label] += count;
  return *this;
}

namespace {

// Parses "a-b" into its bounds; returns false for empty nodes ("k.m").
bool range_bounds(const std::string& line, int& first, int& last) {
  auto tab = line.find('\t');
  auto id = std::string_view(line).substr(0, tab);
  auto dash = id.find('-');
  if (dash == std::string_view::npos) return false;
  first = std::stoi(std::string(id.substr(0, dash)));
  last = std::stoi(std::string(id.substr(dash + 1)));
  return true;
}

}  // namespace

std::optional<Sentence> prune_branches(const Sentence& s, const PruneSpec& spec,
                                       NormalizationStats* stats) {
  const std::size_t n = s.tokens.size();
  // Index of the topmost pruned ancestor-or-self of each token, or -1.
  std::vector<int> branch_root(n, -1);
  bool any_removed = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (int cur = static_cast<int>(i) + 1; cur != 0; cur = s.tokens[cur - 1].head)
      if (spec.matches(s.tokens[cur - 1].deprel)) branch_root[i] = cur - 1;
    any_removed = any_removed || branch_root[i] >= 0;
  }

  if (stats) {
    stats->words_before += n;
    for (std::size_t i = 0; i < n; ++i)
      if (branch_root[i] >= 0)
        ++stats->tokens_removed_by_label[std::string(core_label(s.tokens[branch_root[i]].deprel))];
  }

  if (!any_removed) {
    if (stats) stats->words_after += n;
    if (n == 0) return std::nullopt;
    return s;
  }

  std::vector<int> new_id(n + 1, 0);
  int next = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (branch_root[i] < 0) new_id[i + 1] = next++;
  const int survivors = next - 1;

  const int root = s.root_id();
  if (survivors == 0 || root == 0 || new_id[root] == 0) {
    if (stats) ++stats->sentences_dropped;
    return std::nullopt;
  }
  if (stats) stats->words_after += static_cast<std::size_t>(survivors);

  Sentence out;
  out.sent_id = s.sent_id;
  out.doc_id = s.doc_id;
  out.comments = s.comments;
  out.tokens.reserve(static_cast<std::size_t>(survivors));
  for (std::size_t i = 0; i < n; ++i) {
    if (branch_root[i] >= 0) continue;
    Token t = s.tokens[i];
    t.id = new_id[i + 1];
    t.head = t.head == 0 ? 0 : new_id[t.head];
    out.tokens.push_back(std::move(t));
  }

  // Range lines survive only when every covered word survives; empty nodes
  // reference old ids in DEPS and are dropped.
  for (const auto& p : s.passthrough) {
    int first = 0, last = 0;
    if (!range_bounds(p.line, first, last)) continue;
    if (first < 1 || last > static_cast<int>(n) || first > last) continue;
    bool intact = true;
    for (int id = first; id <= last; ++id) intact = intact && new_id[id] != 0;
    if (!intact) continue;
    auto tab = p.line.find('\t');
    std::string line = std::to_string(new_id[first]) + "-" + std::to_string(new_id[last]) +
                       (tab == std::string::npos ? "" : p.line.substr(tab));
    out.passthrough.push_back({static_cast<std::size_t>(new_id[first] - 1), std::move(line)});
  }
  return out;
}

NormalizedTreebank normalize_treebank(const Treebank& tb, const PruneSpec& spec) {
  NormalizedTreebank result{Treebank(tb.corpus_id()), {}};
  auto& docs = result.treebank.documents();
  docs.reserve(tb.documents().size());
  for (const auto& doc : tb.documents()) {
    Document out{doc.id, doc.declared, {}};
    std::vector<std::string> carried;  // newdoc comments of dropped leading sentences
    for (const auto& s : doc.sentences) {
      auto pruned = prune_branches(s, spec, &result.stats);
      if (!pruned) {
        if (out.sentences.empty())
          for (const auto& c : s.comments)
            if (c.rfind("# newdoc", 0) == 0) carried.push_back(c);
        continue;
      }
      if (!carried.empty()) {
        pruned->comments.insert(pruned->comments.begin(), carried.begin(), carried.end());
        carried.clear();
      }
      out.sentences.push_back(std::move(*pruned));
    }
    docs.push_back(std::move(out));
  }
  return result;
}

}  // namespace treecount
