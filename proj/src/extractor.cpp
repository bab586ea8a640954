#include "treecount/extractor.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace treecount {

namespace {

constexpr std::string_view kNodeTypeNames[] = {"upos", "xpos", "form", "lemma", "deprel", "none"};

std::string_view yes_no(bool b) { return b ? "yes" : "no"; }

bool parse_yes_no(std::string_view key, std::string_view value) {
  if (value == "yes" || value == "true" || value == "1") return true;
  if (value == "no" || value == "false" || value == "0") return false;
  throw std::invalid_argument("bad value '" + std::string(value) + "' for " + std::string(key) +
                              " (expected yes/no)");
}

// Rendered subtrees of one sentence, built leaves-first so every token's
// encoding is assembled from its dependents' encodings exactly once.
class SentenceEncoder {
 public:
  SentenceEncoder(const Sentence& s, const ExtractionConfig& cfg)
      : s_(s), cfg_(cfg), children_(s.size() + 1), text_(s.size() + 1), nodes_(s.size() + 1) {
    for (const auto& t : s.tokens) children_[t.head].push_back(t.id);
    symbols_.reserve(s.size() + 1);
    labels_.reserve(s.size() + 1);
    symbols_.emplace_back();
    labels_.emplace_back();
    for (const auto& t : s.tokens) {
      symbols_.push_back(node_symbol(t, cfg));
      labels_.push_back(arc_label(t, cfg));
    }

    // Preorder from the artificial root 0, then encode in reverse.
    std::vector<int> order;
    order.reserve(s.size());
    std::vector<int> stack(children_[0].begin(), children_[0].end());
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      order.push_back(id);
      stack.insert(stack.end(), children_[id].begin(), children_[id].end());
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) encode(*it);
  }

  CanonicalTree tree(int id) const { return {text_[id], nodes_[id], symbols_[id]}; }

 private:
  std::string wrapped(int id) const {
    return children_[id].empty() ? text_[id] : "(" + text_[id] + ")";
  }

  void encode(int id) {
    std::string out;
    int count = 1;
    const auto& deps = children_[id];
    if (cfg_.fixed) {
      for (int d : deps) {
        if (d > id) break;
        out += wrapped(d);
        out += " <";
        out += labels_[d];
        out += ' ';
        count += nodes_[d];
      }
      out += symbols_[id];
      for (int d : deps) {
        if (d < id) continue;
        out += " >";
        out += labels_[d];
        out += ' ';
        out += wrapped(d);
        count += nodes_[d];
      }
    } else {
      std::vector<std::pair<std::string_view, std::string>> parts;
      parts.reserve(deps.size());
      for (int d : deps) {
        parts.emplace_back(labels_[d], wrapped(d));
        count += nodes_[d];
      }
      std::sort(parts.begin(), parts.end());
      out += symbols_[id];
      for (const auto& [label, text] : parts) {
        out += " >";
        out += label;
        out += ' ';
        out += text;
      }
    }
    text_[id] = std::move(out);
    nodes_[id] = count;
  }

  const Sentence& s_;
  const ExtractionConfig& cfg_;
  std::vector<std::vector<int>> children_;  // ascending ids; index 0 = artificial root
  std::vector<std::string> symbols_;
  std::vector<std::string> labels_;
  std::vector<std::string> text_;
  std::vector<int> nodes_;
};

}  // namespace

std::string_view to_string(NodeType t) { return kNodeTypeNames[static_cast<int>(t)]; }

NodeType node_type_from_string(std::string_view name) {
  for (int i = 0; i < 6; ++i)
    if (kNodeTypeNames[i] == name) return static_cast<NodeType>(i);
  throw std::invalid_argument("unknown node_type '" + std::string(name) + "'");
}

std::string ExtractionConfig::describe() const {
  std::string out = "node_type=";
  out += to_string(node_type);
  out += " labeled=";
  out += yes_no(labeled);
  out += " label_subtypes=";
  out += yes_no(label_subtypes);
  out += " fixed=";
  out += yes_no(fixed);
  return out;
}

ExtractionConfig ExtractionConfig::parse(std::string_view description) {
  ExtractionConfig cfg;
  std::istringstream in{std::string(description)};
  std::string item;
  while (in >> item) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed config item '" + item + "'");
    auto key = std::string_view(item).substr(0, eq);
    auto value = std::string_view(item).substr(eq + 1);
    if (key == "node_type") cfg.node_type = node_type_from_string(value);
    else if (key == "labeled" || key == "labelled") cfg.labeled = parse_yes_no(key, value);
    else if (key == "label_subtypes") cfg.label_subtypes = parse_yes_no(key, value);
    else if (key == "fixed") cfg.fixed = parse_yes_no(key, value);
    else throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
  return cfg;
}

std::string node_symbol(const Token& t, const ExtractionConfig& cfg) {
  switch (cfg.node_type) {
    case NodeType::upos: return t.upos;
    case NodeType::xpos: return t.xpos;
    case NodeType::form: return t.form;
    case NodeType::lemma: return t.lemma;
    case NodeType::deprel:
      return cfg.label_subtypes ? t.deprel : std::string(core_label(t.deprel));
    case NodeType::none: return "_";
  }
  return "_";
}

std::string arc_label(const Token& t, const ExtractionConfig& cfg) {
  if (!cfg.labeled) return {};
  return cfg.label_subtypes ? t.deprel : std::string(core_label(t.deprel));
}

CanonicalTree serialize_subtree(const Sentence& s, int root, const ExtractionConfig& cfg) {
  if (root < 1 || root > static_cast<int>(s.size()))
    throw std::out_of_range("token id " + std::to_string(root) + " not in sentence");
  return SentenceEncoder(s, cfg).tree(root);
}

std::vector<CanonicalTree> extract_sentence(const Sentence& s, const ExtractionConfig& cfg) {
  SentenceEncoder enc(s, cfg);
  std::vector<CanonicalTree> out;
  out.reserve(s.size());
  for (const auto& t : s.tokens) out.push_back(enc.tree(t.id));
  return out;
}

std::string head_symbol_of(std::string_view text) {
  // Split into top-level elements; a group "( ... )" is one element.
  std::vector<std::string_view> elems;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (text[i] == '(') {
      int depth = 0;
      for (; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        else if (text[i] == ')' && --depth == 0) {
          ++i;
          break;
        }
      }
    } else {
      while (i < text.size() && text[i] != ' ') ++i;
    }
    elems.push_back(text.substr(start, i - start));
  }
  auto is_op = [](std::string_view e) { return !e.empty() && (e[0] == '<' || e[0] == '>'); };
  for (std::size_t k = 0; k < elems.size(); ++k) {
    if (is_op(elems[k]) || elems[k].front() == '(') continue;
    if (k + 1 < elems.size() && elems[k + 1].front() == '<') continue;
    if (k > 0 && elems[k - 1].front() == '>') continue;
    return std::string(elems[k]);
  }
  return {};
}

}  // namespace treecount
