#include "treecount/inventory.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <boost/math/distributions/students_t.hpp>

#include "treecount/format.hpp"

namespace treecount {

void Inventory::add(const CanonicalTree& tree, std::size_t count) {
  auto [it, inserted] = entries.try_emplace(tree.text);
  if (inserted) {
    it->second.head_symbol = tree.head_symbol;
    it->second.node_count = tree.node_count;
  }
  it->second.count += count;
}

std::size_t Inventory::count_of(const std::string& text) const {
  auto it = entries.find(text);
  return it == entries.end() ? 0 : it->second.count;
}

void require_same_config(const Inventory& a, const Inventory& b) {
  if (!(a.config == b.config))
    throw ConfigMismatch("inventory configurations differ: '" + a.config.describe() + "' vs '" +
                         b.config.describe() + "'");
}

namespace {

void accumulate(Inventory& inv, const Sentence& s) {
  for (auto& tree : extract_sentence(s, inv.config)) {
    auto [it, inserted] = inv.entries.try_emplace(std::move(tree.text));
    if (inserted) {
      it->second.head_symbol = std::move(tree.head_symbol);
      it->second.node_count = tree.node_count;
    }
    ++it->second.count;
  }
}

void merge_into(Inventory& into, const Inventory& from) {
  for (const auto& [text, entry] : from.entries) {
    auto [it, inserted] = into.entries.try_emplace(text, entry);
    if (!inserted) it->second.count += entry.count;
  }
  into.token_total += from.token_total;
}

}  // namespace

Inventory build_inventory(const Treebank& tb, const ExtractionConfig& cfg, unsigned workers) {
  Inventory inv{tb.corpus_id(), cfg, tb.word_total(), {}};
  if (workers <= 1) {
    tb.for_each_sentence([&](const Sentence& s) { accumulate(inv, s); });
    return inv;
  }

  std::vector<const Sentence*> sentences;
  sentences.reserve(tb.sentence_count());
  tb.for_each_sentence([&](const Sentence& s) { sentences.push_back(&s); });

  std::vector<Inventory> partial(workers, Inventory{tb.corpus_id(), cfg, 0, {}});
  {
    std::vector<std::jthread> threads;
    const std::size_t chunk = (sentences.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        const std::size_t begin = std::min(sentences.size(), w * chunk);
        const std::size_t end = std::min(sentences.size(), begin + chunk);
        for (std::size_t i = begin; i < end; ++i) accumulate(partial[w], *sentences[i]);
      });
    }
  }
  for (const auto& p : partial) merge_into(inv, p);
  return inv;
}

Inventory merge_inventories(const Inventory& a, const Inventory& b) {
  require_same_config(a, b);
  Inventory out = a;
  merge_into(out, b);
  return out;
}

std::vector<std::pair<std::string, InventoryEntry>> sorted_entries(const Inventory& inv) {
  std::vector<std::pair<std::string, InventoryEntry>> rows(inv.entries.begin(), inv.entries.end());
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    if (x.second.count != y.second.count) return x.second.count > y.second.count;
    return x.first < y.first;
  });
  return rows;
}

InventoryStats inventory_stats(const Inventory& inv) {
  InventoryStats st;
  st.types = inv.entries.size();
  st.tokens = inv.token_total;
  std::map<std::string, std::size_t> by_head;
  for (const auto& [text, e] : inv.entries) {
    if (e.count == 1) ++st.hapax_count;
    by_head[e.head_symbol] += e.count;
  }
  if (st.types > 0) st.hapax_share = static_cast<double>(st.hapax_count) / static_cast<double>(st.types);
  if (st.tokens > 0) {
    st.ttr = static_cast<double>(st.types) / static_cast<double>(st.tokens);
    for (const auto& [head, n] : by_head)
      st.head_symbol_shares[head] = static_cast<double>(n) / static_cast<double>(st.tokens);
  }
  return st;
}

SttrSeries sttr_from_values(std::vector<double> ttrs, std::vector<std::size_t> sizes,
                            std::size_t segment_size) {
  SttrSeries series;
  series.segment_size = segment_size;
  series.per_segment_ttr = std::move(ttrs);
  series.segment_tokens = std::move(sizes);
  const auto k = series.per_segment_ttr.size();
  if (k == 0) return series;
  double sum = 0.0;
  for (double v : series.per_segment_ttr) sum += v;
  series.mean = sum / static_cast<double>(k);
  if (k >= 2) {
    double ss = 0.0;
    for (double v : series.per_segment_ttr) ss += (v - series.mean) * (v - series.mean);
    const double sd = std::sqrt(ss / static_cast<double>(k - 1));
    boost::math::students_t dist(static_cast<double>(k - 1));
    series.ci95_half_width = boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(k));
  }
  return series;
}

SttrSeries segmented_ttr(const Treebank& tb, const ExtractionConfig& cfg, std::size_t segment_size) {
  if (segment_size == 0) throw std::invalid_argument("segment size must be positive");
  if (tb.word_total() == 0) throw std::invalid_argument("segmented TTR of an empty treebank");

  std::vector<double> ttrs;
  std::vector<std::size_t> sizes;
  std::unordered_set<std::string> seen;
  std::size_t in_segment = 0;
  auto close_segment = [&] {
    ttrs.push_back(static_cast<double>(seen.size()) / static_cast<double>(in_segment));
    sizes.push_back(in_segment);
    seen.clear();
    in_segment = 0;
  };
  tb.for_each_sentence([&](const Sentence& s) {
    for (auto& tree : extract_sentence(s, cfg)) {
      seen.insert(std::move(tree.text));
      if (++in_segment == segment_size) close_segment();
    }
  });
  if (in_segment > 0) close_segment();
  return sttr_from_values(std::move(ttrs), std::move(sizes), segment_size);
}

void write_inventory_tsv(const Inventory& inv, std::ostream& out) {
  out << "# token_total = " << inv.token_total << '\n';
  out << "# config = " << inv.config.describe() << '\n';
  out << "tree\tnode_count\thead_symbol\tabs_freq\trel_freq_per_million\n";
  const double total = static_cast<double>(inv.token_total);
  for (const auto& [text, e] : sorted_entries(inv)) {
    const double rel = total > 0 ? static_cast<double>(e.count) / total * 1e6 : 0.0;
    out << text << '\t' << e.node_count << '\t' << e.head_symbol << '\t' << e.count << '\t'
        << format_fixed(rel, 4) << '\n';
  }
}

std::string inventory_tsv_string(const Inventory& inv) {
  std::ostringstream out;
  write_inventory_tsv(inv, out);
  return out.str();
}

namespace {

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

[[noreturn]] void tsv_error(std::size_t line, const std::string& message) {
  throw std::runtime_error("inventory TSV line " + std::to_string(line) + ": " + message);
}

}  // namespace

Inventory read_inventory_tsv(std::istream& in, std::string corpus_id) {
  Inventory inv;
  inv.corpus_id = std::move(corpus_id);
  bool have_total = false, have_header = false;
  std::size_t sum = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      std::string value = line.substr(eq + 1);
      value.erase(0, value.find_first_not_of(' '));
      if (key == "token_total") {
        if (!parse_number(std::string_view(value), inv.token_total)) tsv_error(line_no, "bad token_total");
        have_total = true;
      } else if (key == "config") {
        try {
          inv.config = ExtractionConfig::parse(value);
        } catch (const std::invalid_argument& e) {
          tsv_error(line_no, e.what());
        }
      }
      continue;
    }
    if (!have_header) {
      if (line != "tree\tnode_count\thead_symbol\tabs_freq\trel_freq_per_million")
        tsv_error(line_no, "unexpected header");
      have_header = true;
      continue;
    }
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (std::size_t tab; (tab = rest.find('\t')) != std::string_view::npos;) {
      f.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    f.push_back(rest);
    if (f.size() != 5) tsv_error(line_no, "expected 5 columns");
    InventoryEntry e;
    e.head_symbol = std::string(f[2]);
    if (!parse_number(f[1], e.node_count) || e.node_count < 1) tsv_error(line_no, "bad node_count");
    if (!parse_number(f[3], e.count) || e.count < 1) tsv_error(line_no, "bad abs_freq");
    sum += e.count;
    if (!inv.entries.emplace(std::string(f[0]), std::move(e)).second)
      tsv_error(line_no, "duplicate tree");
  }
  if (!have_total) tsv_error(line_no, "missing '# token_total' header");
  if (!have_header) tsv_error(line_no, "missing column header");
  if (sum != inv.token_total)
    tsv_error(line_no, "frequencies sum to " + std::to_string(sum) + " but token_total is " +
                           std::to_string(inv.token_total));
  return inv;
}

Inventory read_inventory_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_inventory_tsv(in, std::filesystem::path(path).stem().string());
}

}  // namespace treecount
