#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "test_support.hpp"
#include "treecount/inventory.hpp"

using namespace treecount;
using namespace treecount::testing;

namespace {

Treebank single_word_corpus(const std::vector<std::string>& tags) {
  std::vector<Sentence> sentences;
  for (const auto& tag : tags) sentences.push_back(make_sentence({{"w", tag, 0, "root"}}));
  return make_treebank(sentences);
}

Treebank random_treebank(std::mt19937& rng, int sentences, int max_len, const std::string& id = "doc") {
  std::vector<Sentence> out;
  for (int i = 0; i < sentences; ++i) out.push_back(random_sentence(rng, 1 + static_cast<int>(rng() % max_len)));
  return make_treebank(out, id);
}

std::size_t count_sum(const Inventory& inv) {
  std::size_t n = 0;
  for (const auto& [text, e] : inv.entries) n += e.count;
  return n;
}

bool same_counts(const Inventory& a, const Inventory& b) {
  if (a.token_total != b.token_total || a.entries.size() != b.entries.size()) return false;
  for (const auto& [text, e] : a.entries)
    if (b.count_of(text) != e.count) return false;
  return true;
}

}  // namespace

TEST_CASE("build_inventory counts every structure once per word") {
  auto tb = make_treebank({figure1_sentence(), figure1_sentence()});
  auto inv = build_inventory(tb, ExtractionConfig{});
  CHECK(inv.token_total == 16);
  CHECK(count_sum(inv) == inv.token_total);
  CHECK(inv.count_of("DET <det NOUN") == 2);
  CHECK(inv.count_of("PRON") == 4);
  CHECK(inv.count_of("PUNCT") == 2);
  CHECK(inv.entries.at("DET <det NOUN").node_count == 2);
  CHECK(inv.entries.at("DET <det NOUN").head_symbol == "NOUN");
}

TEST_CASE("empty treebank gives an empty inventory") {
  auto inv = build_inventory(Treebank("e"), ExtractionConfig{});
  CHECK(inv.token_total == 0);
  CHECK(inv.entries.empty());
  CHECK(inventory_tsv_string(inv) ==
        "# token_total = 0\n# config = node_type=upos labeled=yes label_subtypes=no fixed=yes\n"
        "tree\tnode_count\thead_symbol\tabs_freq\trel_freq_per_million\n");
}

TEST_CASE("parallel extraction matches sequential extraction") {
  std::mt19937 rng(3);
  auto tb = random_treebank(rng, 300, 12);
  auto seq = build_inventory(tb, ExtractionConfig{}, 1);
  auto par = build_inventory(tb, ExtractionConfig{}, 4);
  CHECK(same_counts(seq, par));
  CHECK(inventory_tsv_string(seq) == inventory_tsv_string(par));
}

TEST_CASE("merge identities and algebra") {
  std::mt19937 rng(11);
  auto a = build_inventory(random_treebank(rng, 40, 6), ExtractionConfig{});
  auto b = build_inventory(random_treebank(rng, 40, 6), ExtractionConfig{});
  auto c = build_inventory(random_treebank(rng, 40, 6), ExtractionConfig{});
  Inventory empty{"e", ExtractionConfig{}, 0, {}};

  CHECK(same_counts(merge_inventories(a, empty), a));
  auto doubled = merge_inventories(a, a);
  CHECK(doubled.entries.size() == a.entries.size());
  for (const auto& [text, e] : a.entries) CHECK(doubled.count_of(text) == 2 * e.count);

  CHECK(same_counts(merge_inventories(a, b), merge_inventories(b, a)));
  CHECK(same_counts(merge_inventories(merge_inventories(a, b), c), merge_inventories(a, merge_inventories(b, c))));
  CHECK(count_sum(merge_inventories(a, b)) == a.token_total + b.token_total);

  ExtractionConfig other;
  other.fixed = false;
  Inventory d{"d", other, 0, {}};
  CHECK_THROWS_AS(merge_inventories(a, d), ConfigMismatch);
}

TEST_CASE("per-document inventories merge to the whole-corpus inventory") {
  std::mt19937 rng(19);
  Treebank whole("corpus");
  for (int d = 0; d < 5; ++d) {
    auto part = random_treebank(rng, 30, 9, "d" + std::to_string(d));
    whole.documents().push_back(part.documents()[0]);
  }
  Inventory merged{"corpus", ExtractionConfig{}, 0, {}};
  for (const auto& doc : whole.documents()) {
    Treebank single("corpus");
    single.documents().push_back(doc);
    merged = merge_inventories(merged, build_inventory(single, ExtractionConfig{}));
  }
  CHECK(same_counts(merged, build_inventory(whole, ExtractionConfig{})));
}

TEST_CASE("inventory statistics") {
  auto inv = build_inventory(single_word_corpus({"NOUN", "NOUN", "VERB", "ADJ"}), ExtractionConfig{});
  auto st = inventory_stats(inv);
  CHECK(st.types == 3);
  CHECK(st.tokens == 4);
  CHECK(st.hapax_count == 2);
  CHECK(st.hapax_share == doctest::Approx(2.0 / 3.0));
  CHECK(st.head_symbol_shares.at("NOUN") == doctest::Approx(0.5));

  auto unique = inventory_stats(build_inventory(single_word_corpus({"NOUN", "VERB", "ADJ"}), ExtractionConfig{}));
  CHECK(unique.hapax_count == unique.types);
  CHECK(unique.hapax_share == 1.0);

  std::mt19937 rng(23);
  auto random_stats = inventory_stats(build_inventory(random_treebank(rng, 100, 8), ExtractionConfig{}));
  double total = 0;
  for (const auto& [head, share] : random_stats.head_symbol_shares) total += share;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("head symbol of every entry re-parses from its text") {
  std::mt19937 rng(29);
  auto inv = build_inventory(random_treebank(rng, 200, 10), ExtractionConfig{});
  for (const auto& [text, e] : inv.entries) CHECK(head_symbol_of(text) == e.head_symbol);
}

TEST_CASE("STTR with a trailing partial segment") {
  std::vector<std::string> tags(2019, "NOUN");
  auto series = segmented_ttr(single_word_corpus(tags), ExtractionConfig{}, 1000);
  REQUIRE(series.per_segment_ttr.size() == 3);
  CHECK(series.segment_tokens == std::vector<std::size_t>{1000, 1000, 19});
  CHECK(series.per_segment_ttr[2] == doctest::Approx(1.0 / 19.0));
}

TEST_CASE("STTR of all-distinct structures is 1 with zero CI") {
  std::vector<std::string> tags;
  for (const auto* t : {"NOUN", "VERB", "ADJ", "ADV", "PRON", "DET"}) tags.push_back(t);
  auto series = segmented_ttr(single_word_corpus(tags), ExtractionConfig{}, 2);
  REQUIRE(series.per_segment_ttr.size() == 3);
  for (double v : series.per_segment_ttr) CHECK(v == 1.0);
  CHECK(series.mean == 1.0);
  CHECK(series.ci95_half_width == 0.0);
}

TEST_CASE("STTR mean matches a brute-force recount") {
  std::mt19937 rng(31);
  auto tb = random_treebank(rng, 60, 7);
  const std::size_t seg = 25;
  // Oracle: flatten structures, cut, count distinct strings per cut.
  std::vector<std::string> flat;
  tb.for_each_sentence([&](const Sentence& s) {
    OracleSerializer o(s, ExtractionConfig{});
    for (const auto& t : s.tokens) flat.push_back(o.print(t.id));
  });
  std::vector<double> expected;
  for (std::size_t i = 0; i < flat.size(); i += seg) {
    std::size_t end = std::min(flat.size(), i + seg);
    std::set<std::string> distinct(flat.begin() + static_cast<long>(i), flat.begin() + static_cast<long>(end));
    expected.push_back(static_cast<double>(distinct.size()) / static_cast<double>(end - i));
  }
  auto series = segmented_ttr(tb, ExtractionConfig{}, seg);
  REQUIRE(series.per_segment_ttr.size() == expected.size());
  double mean = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(series.per_segment_ttr[i] == doctest::Approx(expected[i]));
    CHECK(series.per_segment_ttr[i] >= 1.0 / static_cast<double>(series.segment_tokens[i]));
    CHECK(series.per_segment_ttr[i] <= 1.0);
    mean += expected[i];
  }
  CHECK(series.mean == doctest::Approx(mean / static_cast<double>(expected.size())));
}

TEST_CASE("constructed two-segment STTR") {
  // segment 1: NOUN NOUN VERB ADJ -> 3/4 ; segment 2: NOUN x4 -> 1/4
  auto tb = single_word_corpus({"NOUN", "NOUN", "VERB", "ADJ", "NOUN", "NOUN", "NOUN", "NOUN"});
  auto series = segmented_ttr(tb, ExtractionConfig{}, 4);
  CHECK(series.per_segment_ttr == std::vector<double>{0.75, 0.25});
  CHECK(series.mean == doctest::Approx(0.5));
}

TEST_CASE("STTR confidence interval uses the t quantile") {
  // scipy: t.ppf(0.975, 3) * stdev([0.5,0.6,0.7,0.55], ddof=1) / 2 = 0.13587654418982442
  auto series = sttr_from_values({0.5, 0.6, 0.7, 0.55}, {10, 10, 10, 10}, 10);
  CHECK(series.mean == doctest::Approx(0.5875));
  CHECK(series.ci95_half_width == doctest::Approx(0.13587654418982442).epsilon(1e-9));
}

TEST_CASE("one segment covering the corpus gives the overall TTR") {
  std::mt19937 rng(37);
  auto tb = random_treebank(rng, 50, 6);
  auto stats = inventory_stats(build_inventory(tb, ExtractionConfig{}));
  auto series = segmented_ttr(tb, ExtractionConfig{}, tb.word_total() + 5);
  REQUIRE(series.per_segment_ttr.size() == 1);
  CHECK(series.mean == doctest::Approx(stats.ttr));
}

TEST_CASE("STTR errors") {
  CHECK_THROWS_AS(segmented_ttr(Treebank("e"), ExtractionConfig{}, 1000), std::invalid_argument);
  CHECK_THROWS_AS(segmented_ttr(single_word_corpus({"X"}), ExtractionConfig{}, 0), std::invalid_argument);
}

TEST_CASE("inventory TSV is sorted and round-trips") {
  auto inv = build_inventory(single_word_corpus({"VERB", "NOUN", "NOUN", "ADJ", "VERB", "NOUN"}), ExtractionConfig{});
  const auto text = inventory_tsv_string(inv);
  CHECK(text ==
        "# token_total = 6\n"
        "# config = node_type=upos labeled=yes label_subtypes=no fixed=yes\n"
        "tree\tnode_count\thead_symbol\tabs_freq\trel_freq_per_million\n"
        "NOUN\t1\tNOUN\t3\t500000.0000\n"
        "VERB\t1\tVERB\t2\t333333.3333\n"
        "ADJ\t1\tADJ\t1\t166666.6667\n");
  std::istringstream in(text);
  auto back = read_inventory_tsv(in, "x");
  CHECK(same_counts(back, inv));
  CHECK(back.config == inv.config);
  CHECK(inventory_tsv_string(back) == text);

  std::mt19937 rng(41);
  ExtractionConfig cfg;
  cfg.label_subtypes = true;
  auto random_inv = build_inventory(random_treebank(rng, 100, 9), cfg);
  std::istringstream in2(inventory_tsv_string(random_inv));
  CHECK(inventory_tsv_string(read_inventory_tsv(in2, "y")) == inventory_tsv_string(random_inv));
}

TEST_CASE("inventory TSV reader rejects inconsistent files") {
  std::istringstream bad_sum("# token_total = 5\ntree\tnode_count\thead_symbol\tabs_freq\trel_freq_per_million\nNOUN\t1\tNOUN\t3\t1\n");
  CHECK_THROWS_AS(read_inventory_tsv(bad_sum, "x"), std::runtime_error);
  std::istringstream no_total("tree\tnode_count\thead_symbol\tabs_freq\trel_freq_per_million\n");
  CHECK_THROWS_AS(read_inventory_tsv(no_total, "x"), std::runtime_error);
  std::istringstream bad_cols("# token_total = 1\ntree\tnode_count\thead_symbol\tabs_freq\trel_freq_per_million\nNOUN\t1\n");
  CHECK_THROWS_AS(read_inventory_tsv(bad_cols, "x"), std::runtime_error);
}
