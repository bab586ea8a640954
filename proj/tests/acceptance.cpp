// One line per acceptance criterion: PASS, FAIL or SKIP.
// Corpus-dependent criteria read TREECOUNT_GUM, TREECOUNT_SSJ and TREECOUNT_SST
// (a .conllu file or a directory of them) and are skipped when unset.

#include <sys/resource.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "test_support.hpp"
#include "treecount/comparator.hpp"
#include "treecount/inventory.hpp"
#include "treecount/normalizer.hpp"
#include "treecount/reproduce.hpp"

using namespace treecount;
using namespace treecount::testing;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& status, const std::string& detail) {
  std::cout << status << "  criterion " << criterion << ": " << detail << '\n';
  if (status == "FAIL") ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s.precision(precision);
  s << std::fixed << v;
  return s.str();
}

// ---- criteria 1-7 ----------------------------------------------------------

void data_criteria() {
  static const std::map<int, std::string> names = {
      {1, "normalized word totals"},     {2, "punct-free type counts"},
      {3, "top NOUN-headed structures"}, {4, "hapax share > 0.90"},
      {5, "type overlap"},               {6, "keyness magnitudes"},
      {7, "STTR spoken < written"},
  };
  ReproduceOptions opt;
  if (const char* p = std::getenv("TREECOUNT_GUM"); p && *p) opt.gum = p;
  if (const char* p = std::getenv("TREECOUNT_SSJ"); p && *p) opt.ssj = p;
  if (const char* p = std::getenv("TREECOUNT_SST"); p && *p) opt.sst = p;
  if (!opt.gum && !opt.ssj && !opt.sst) {
    for (const auto& [c, name] : names)
      report(c, "SKIP", name + " (set TREECOUNT_GUM, TREECOUNT_SSJ, TREECOUNT_SST)");
    return;
  }
  opt.outdir = (fs::temp_directory_path() / ("treecount_acceptance_" + std::to_string(::getpid()))).string();
  const auto t0 = Clock::now();
  ReproduceResult result;
  try {
    result = reproduce(opt);
  } catch (const std::exception& e) {
    for (const auto& [c, name] : names) report(c, "FAIL", name + ": " + e.what());
    return;
  }
  const double elapsed = seconds_since(t0);

  for (const auto& [c, name] : names) {
    int pass = 0, fail = 0, skipped = 0;
    std::string first_failure;
    for (const auto& check : result.checks) {
      if (check.criterion != c) continue;
      switch (check.status) {
        case CheckStatus::pass: ++pass; break;
        case CheckStatus::skipped: ++skipped; break;
        case CheckStatus::fail:
          ++fail;
          if (first_failure.empty())
            first_failure = check.name + " expected " + check.expected + " got " + check.observed;
          break;
      }
    }
    std::string detail = name + " (" + std::to_string(pass) + " passed, " + std::to_string(fail) + " failed, " +
                         std::to_string(skipped) + " skipped)";
    if (c == 1) {
      detail += ", full run " + fmt(elapsed, 1) + " s";
      if (elapsed >= 30.0) ++fail;
    }
    if (fail > 0) report(c, "FAIL", detail + (first_failure.empty() ? "" : ": " + first_failure));
    else if (skipped > 0 || pass == 0) report(c, "SKIP", detail);
    else report(c, "PASS", detail);
  }
  std::error_code ec;
  fs::remove_all(opt.outdir, ec);
}

// ---- criterion 8 -----------------------------------------------------------

bool property_suite(std::string& why) {
  std::mt19937 rng(8);
  const ExtractionConfig cfg;
  const PruneSpec spec{{"amod", "det"}};
  std::vector<Inventory> invs;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = random_sentence(rng, 1 + static_cast<int>(rng() % 8));
    const auto trees = extract_sentence(s, cfg);
    if (trees.size() != s.size()) return why = "extract_sentence size", false;
    OracleSerializer oracle(s, cfg);
    for (const auto& t : s.tokens) {
      if (trees[t.id - 1].text != oracle.print(t.id)) return why = "oracle mismatch: " + oracle.print(t.id), false;
      if (trees[t.id - 1].node_count != oracle.node_count(t.id)) return why = "node count", false;
    }
    if (auto once = prune_branches(s, spec)) {
      auto twice = prune_branches(*once, spec);
      if (!twice || write_treebank_string(make_treebank({*twice})) != write_treebank_string(make_treebank({*once})))
        return why = "pruning idempotence", false;
      std::size_t survivors = 0;
      for (const auto& t : s.tokens) {
        bool removed = false;
        for (int a = t.id; a != 0; a = s.tokens[a - 1].head) removed |= spec.matches(s.tokens[a - 1].deprel);
        survivors += !removed;
      }
      if (once->size() != survivors) return why = "descendant closure", false;
    }
    if (trial % 100 == 0) invs.push_back(build_inventory(make_treebank({s}), cfg));
    else invs.back() = merge_inventories(invs.back(), build_inventory(make_treebank({s}), cfg));
  }
  for (const auto& inv : invs) {
    std::size_t sum = 0;
    for (const auto& [text, e] : inv.entries) sum += e.count;
    if (sum != inv.token_total) return why = "sum of counts != token_total", false;
  }
  for (std::size_t i = 0; i + 2 < invs.size(); ++i) {
    const auto& a = invs[i];
    const auto& b = invs[i + 1];
    const auto& c = invs[i + 2];
    if (inventory_tsv_string(merge_inventories(merge_inventories(a, b), c)) !=
        inventory_tsv_string(merge_inventories(a, merge_inventories(b, c))))
      return why = "merge associativity", false;
    if (inventory_tsv_string(merge_inventories(a, b)) != inventory_tsv_string(merge_inventories(b, a)))
      return why = "merge commutativity", false;
  }
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n1 = 1 + rng() % 100000, n2 = 1 + rng() % 100000;
    const std::size_t a = rng() % std::min<std::size_t>(n1 + 1, 500), b = rng() % std::min<std::size_t>(n2 + 1, 500);
    const double g = log_likelihood_g2(a, n1, b, n2).g2;
    if (g < 0.0) return why = "G2 < 0", false;
    if (std::fabs(log_likelihood_g2(b, n2, a, n1).g2 - g) > 1e-9 * std::max(1.0, g)) return why = "G2 symmetry", false;
    if (log_likelihood_g2(a, n1, a * 3, n1 * 3).g2 != 0.0) return why = "G2 at equal proportions", false;
    if (b == 0) continue;
    const double d = percent_diff(a, n1, b, n2);
    if (percent_diff(b, n2, b, n2) != 0.0) return why = "%DIFF zero", false;
    const double r1 = per_million(a, n1), r2 = per_million(b, n2);
    if ((r1 > r2 && d <= 0) || (r1 < r2 && d >= 0)) return why = "%DIFF sign", false;
    if (std::fabs(percent_diff(5 * a, 5 * n1, 5 * b, 5 * n2) - d) > 1e-9 * std::max(1.0, std::fabs(d)))
      return why = "%DIFF scale invariance", false;
  }
  // mpmath reference value
  if (std::fabs(log_likelihood_g2(13, 67031, 0, 113199).g2 - 25.716043965378197) > 1e-6)
    return why = "G2(13, 67031, 0, 113199)", false;
  return true;
}

// ---- criterion 9 -----------------------------------------------------------

bool golden_strings(std::string& why) {
  struct Case {
    std::vector<Word> words;
    int root;
    std::string expected;
  };
  const std::vector<Case> cases = {
      {{{"the", "DET", 2, "det"}, {"fire", "NOUN", 0, "root"}}, 2, "DET <det NOUN"},
      {{{"in", "ADP", 3, "case"}, {"the", "DET", 3, "det"}, {"house", "NOUN", 0, "root"}},
       3,
       "ADP <case DET <det NOUN"},
      {{{"slani", "ADJ", 0, "root"}, {"ali", "CCONJ", 4, "cc"}, {"pa", "CCONJ", 2, "fixed"},
        {"sladki", "ADJ", 1, "conj"}},
       4,
       "(CCONJ >fixed CCONJ) <cc ADJ"},
      {{{"a", "DET", 3, "det"}, {"big", "ADJ", 3, "amod"}, {"part", "NOUN", 0, "root"}, {"of", "ADP", 5, "case"},
        {"it", "PRON", 3, "nmod"}},
       3,
       "DET <det ADJ <amod NOUN >nmod (ADP <case PRON)"},
      {{{"I", "PRON", 2, "nsubj"}, {"want", "VERB", 0, "root"}, {"to", "PART", 4, "mark"},
        {"see", "VERB", 2, "xcomp"}, {"it", "PRON", 4, "obj"}},
       2,
       "PRON <nsubj VERB >xcomp (PART <mark VERB >obj PRON)"},
  };
  for (const auto& c : cases) {
    const auto got = serialize_subtree(make_sentence(c.words), c.root, ExtractionConfig{}).text;
    if (got != c.expected) return why = "expected \"" + c.expected + "\" got \"" + got + "\"", false;
  }
  return true;
}

// ---- criterion 10 ----------------------------------------------------------

std::string synthetic_conllu(std::size_t target_words) {
  std::mt19937 rng(10);
  std::vector<Sentence> sentences;
  std::size_t words = 0;
  while (words < target_words) {
    const int n = static_cast<int>(std::min<std::size_t>(1 + rng() % 30, target_words - words));
    auto s = random_sentence(rng, n);
    s.sent_id = "s" + std::to_string(sentences.size() + 1);
    s.comments = {"# sent_id = " + s.sent_id};
    words += s.size();
    sentences.push_back(std::move(s));
  }
  return write_treebank_string(make_treebank(std::move(sentences), "synthetic"));
}

long peak_rss_kb() {
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  return ru.ru_maxrss;
}

}  // namespace

int main() {
  data_criteria();

  {
    const auto t0 = Clock::now();
    std::string why;
    const bool ok = property_suite(why);
    const double elapsed = seconds_since(t0);
    const bool fast = elapsed < 10.0;
    report(8, ok && fast ? "PASS" : "FAIL",
           "property suite " + fmt(elapsed) + " s (limit 10 s)" + (ok ? "" : ": " + why));
  }
  {
    std::string why;
    const bool ok = golden_strings(why);
    report(9, ok ? "PASS" : "FAIL", "five printed canonical strings" + (ok ? "" : ": " + why));
  }
  {
    constexpr std::size_t kWords = 212000;
    const auto text = synthetic_conllu(kWords);
    std::string outputs[2];
    double elapsed[2];
    for (int run = 0; run < 2; ++run) {
      const auto t0 = Clock::now();
      auto tb = parse_treebank_string(text, "synthetic").treebank;
      auto inv = build_inventory(tb, ExtractionConfig{}, 1);
      outputs[run] = inventory_tsv_string(inv);
      elapsed[run] = seconds_since(t0);
    }
    const double mb = static_cast<double>(peak_rss_kb()) / 1024.0;
    const bool ok = elapsed[0] < 10.0 && elapsed[1] < 10.0 && mb < 1024.0 && outputs[0] == outputs[1];
    report(10, ok ? "PASS" : "FAIL",
           std::to_string(kWords) + "-word parse+extract+inventory " + fmt(elapsed[0]) + " s / " + fmt(elapsed[1]) +
               " s single worker, peak RSS " + fmt(mb, 1) + " MB, reruns " +
               (outputs[0] == outputs[1] ? "byte-identical" : "DIFFER"));
  }
  return failures == 0 ? 0 : 1;
}
