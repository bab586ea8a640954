#include "treecount/reproduce.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>

#include "treecount/format.hpp"
#include "treecount/inventory.hpp"
#include "treecount/normalizer.hpp"
#include "treecount/partition.hpp"
#include "treecount/report.hpp"

namespace treecount {

namespace fs = std::filesystem;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "skipped";
}

bool ReproduceResult::all_passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::fail) return false;
  return true;
}

namespace {

enum Variant { kPunctFree = 0, kDisfluencyFree = 1 };
constexpr const char* kVariantNames[] = {"punct-free", "disfluency-free"};

struct Corpus {
  std::string name;  // gum-spoken, gum-written, ssj, sst
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t words = 0;
  Treebank variant[2];
  NormalizationStats norm[2];
  Inventory inventory[2];
  SttrSeries sttr[2];
};

struct Language {
  std::string code;  // en, sl
  const Corpus* spoken = nullptr;
  const Corpus* written = nullptr;
};

struct Expected {
  std::size_t words;
  std::size_t punct_free;
  std::size_t disfluency_free;
  std::size_t types;
  std::size_t documents;  // 0 = not checked
};

const std::map<std::string, Expected>& expected_counts() {
  static const std::map<std::string, Expected> table = {
      {"gum-written", {130990, 113354, 113199, 21759, 143}},
      {"gum-spoken", {80930, 69611, 67031, 13429, 74}},
      {"ssj", {267097, 227621, 227421, 43143, 0}},
      {"sst", {98396, 76341, 68281, 15284, 0}},
  };
  return table;
}

struct KeynessExpectation {
  std::string table;
  std::string language;
  Variant variant;
  std::size_t focus;
  std::size_t reference;
  std::string magnitude;
};

const std::vector<KeynessExpectation>& expected_keyness() {
  static const std::vector<KeynessExpectation> rows = {
      {"Table 5", "en", kDisfluencyFree, 13, 0, "2.20E+21"},
      {"Table 6", "sl", kDisfluencyFree, 11, 0, "3.66E+21"},
      {"Table C1", "en", kPunctFree, 19, 0, "3.09E+21"},
      {"Table C2", "sl", kPunctFree, 54, 0, "1.61E+22"},
  };
  return rows;
}

class Reproducer {
 public:
  explicit Reproducer(const ReproduceOptions& opt) : opt_(opt) {}

  ReproduceResult run() {
    if (!opt_.gum && !opt_.ssj && !opt_.sst)
      throw std::invalid_argument(
          "no corpora given: pass --gum, --ssj and/or --sst with paths to the UD treebanks "
          "(a .conllu file or a directory of .conllu files)");
    fs::create_directories(fs::path(opt_.outdir) / "inventories");

    load();
    write_corpus_stats();
    write_inventories();
    write_type_reports();
    write_sttr_reports();
    for (const auto& lang : languages_) write_language_reports(lang);
    golden_checks();
    write_manifest_and_summary();
    return std::move(result_);
  }

 private:
  void load() {
    if (opt_.gum) {
      auto gum = parse_treebank_path(*opt_.gum, "gum", opt_.parse_mode).treebank;
      auto parts = partition_treebank(gum, PartitionSpec::gum());
      for (const auto& subset : {"spoken", "written"}) {
        auto it = parts.find(subset);
        add_corpus(std::string("gum-") + subset, it == parts.end() ? Treebank("gum") : it->second);
      }
      languages_.push_back({"en", &corpora_.at("gum-spoken"), &corpora_.at("gum-written")});
    }
    if (opt_.ssj) add_corpus("ssj", parse_treebank_path(*opt_.ssj, "ssj", opt_.parse_mode).treebank);
    if (opt_.sst) add_corpus("sst", parse_treebank_path(*opt_.sst, "sst", opt_.parse_mode).treebank);
    if (opt_.ssj && opt_.sst) languages_.push_back({"sl", &corpora_.at("sst"), &corpora_.at("ssj")});
  }

  void add_corpus(const std::string& name, const Treebank& tb) {
    auto c = std::make_unique<Corpus>();
    c->name = name;
    c->documents = tb.documents().size();
    c->sentences = tb.sentence_count();
    c->words = tb.word_total();
    const PruneSpec specs[2] = {PruneSpec::punct_free(), PruneSpec::disfluency_free()};
    for (int v = 0; v < 2; ++v) {
      auto norm = normalize_treebank(tb, specs[v]);
      norm.treebank.set_corpus_id(name);
      c->variant[v] = std::move(norm.treebank);
      c->norm[v] = norm.stats;
      c->inventory[v] = build_inventory(c->variant[v], ExtractionConfig{}, opt_.workers);
      if (c->variant[v].word_total() > 0)
        c->sttr[v] = segmented_ttr(c->variant[v], ExtractionConfig{}, opt_.segment_size);
    }
    order_.push_back(name);
    corpora_.emplace(name, std::move(*c));
  }

  void emit(const std::string& file, const std::string& artifact, const std::string& description,
            const std::function<void(std::ostream&)>& body) {
    const auto path = fs::path(opt_.outdir) / file;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
    if (!out) throw std::runtime_error("write failure on " + path.string());
    result_.manifest.push_back({file, artifact, description});
  }

  void write_corpus_stats() {
    emit("corpus_stats.tsv", "Tables 1-2", "documents, sentences and word totals per variant",
         [&](std::ostream& out) {
           out << "corpus\tdocuments\tsentences\twords\twords_no_punct\twords_no_disfluency\n";
           for (const auto& name : order_) {
             const auto& c = corpora_.at(name);
             out << name << '\t' << c.documents << '\t' << c.sentences << '\t' << c.words << '\t'
                 << c.variant[kPunctFree].word_total() << '\t'
                 << c.variant[kDisfluencyFree].word_total() << '\n';
           }
         });
  }

  void write_inventories() {
    for (const auto& name : order_)
      for (int v = 0; v < 2; ++v)
        emit("inventories/" + name + "." + kVariantNames[v] + ".tsv", "inventory",
             name + " structure inventory (" + kVariantNames[v] + ")",
             [&](std::ostream& out) { write_inventory_tsv(corpora_.at(name).inventory[v], out); });
  }

  std::vector<NamedInventory> named_inventories(int v) const {
    std::vector<NamedInventory> out;
    for (const auto& name : order_) out.push_back({name, &corpora_.at(name).inventory[v]});
    return out;
  }

  std::vector<NamedSeries> named_series(int v) const {
    std::vector<NamedSeries> out;
    for (const auto& name : order_)
      if (!corpora_.at(name).sttr[v].per_segment_ttr.empty())
        out.push_back({name, &corpora_.at(name).sttr[v]});
    return out;
  }

  void write_type_reports() {
    emit("fig5_types.punct-free.tsv", "Figure 5", "types, tokens and hapax legomena",
         [&](std::ostream& out) { write_stats_tsv(named_inventories(kPunctFree), out); });
    emit("figB1_types.disfluency-free.tsv", "Figure B1", "types, tokens and hapax legomena",
         [&](std::ostream& out) { write_stats_tsv(named_inventories(kDisfluencyFree), out); });
  }

  void write_sttr_reports() {
    const char* figure[2] = {"Figure 6", "Figure B2"};
    const char* prefix[2] = {"fig6", "figB2"};
    for (int v = 0; v < 2; ++v) {
      const std::string suffix = std::string(".") + kVariantNames[v] + ".tsv";
      emit(std::string(prefix[v]) + "_sttr" + suffix, figure[v], "mean STTR with 95% CI",
           [&](std::ostream& out) { write_sttr_summary_tsv(named_series(v), out); });
      emit(std::string(prefix[v]) + "_sttr_segments" + suffix, figure[v], "per-segment TTR",
           [&](std::ostream& out) { write_sttr_segments_tsv(named_series(v), out); });
    }
    emit("sttr_tests.tsv", "STTR significance", "Welch t-test, spoken vs written STTR",
         [&](std::ostream& out) {
           std::vector<std::pair<std::string, SttrComparison>> tests;
           for (const auto& lang : languages_)
             for (int v = 0; v < 2; ++v)
               if (auto c = compare_sttr(lang, v)) tests.emplace_back(lang.code + "." + kVariantNames[v], *c);
           write_sttr_test_tsv(tests, out);
         });
  }

  static std::optional<SttrComparison> compare_sttr(const Language& lang, int v) {
    const auto& a = lang.spoken->sttr[v];
    const auto& b = lang.written->sttr[v];
    if (a.per_segment_ttr.size() < 2 || b.per_segment_ttr.size() < 2) return std::nullopt;
    return sttr_compare(a, b);
  }

  void write_language_reports(const Language& lang) {
    const char* composition_fig[2] = {"Figure 7", "Figure B3"};
    const char* overlap_fig[2] = {"Figure 8", "Figure B4"};
    const char* composition_prefix[2] = {"fig7", "figB3"};
    const char* overlap_prefix[2] = {"fig8", "figB4"};
    const bool en = lang.code == "en";
    const char* keyness_table_name[2] = {en ? "Table C1" : "Table C2", en ? "Table 5" : "Table 6"};
    const char* keyness_prefix[2] = {en ? "tableC1" : "tableC2", en ? "table5" : "table6"};

    for (int v = 0; v < 2; ++v) {
      const auto& spoken = lang.spoken->inventory[v];
      const auto& written = lang.written->inventory[v];
      const std::string suffix = "." + lang.code + "." + kVariantNames[v] + ".tsv";

      emit(std::string(composition_prefix[v]) + "_composition" + suffix, composition_fig[v],
           "head-POS share, spoken (a) vs written (b)",
           [&](std::ostream& out) { write_composition_tsv(composition_diff(spoken, written), out); });

      emit(std::string(overlap_prefix[v]) + "_overlap" + suffix, overlap_fig[v],
           "type overlap, spoken (a) vs written (b)", [&](std::ostream& out) {
             write_overlap_tsv({overlap_report(spoken, written, OverlapFilter::all()),
                                overlap_report(spoken, written, OverlapFilter::min_freq(opt_.min_freq)),
                                overlap_report(spoken, written, OverlapFilter::top(opt_.top_n))},
                               out);
           });

      if (spoken.token_total == 0 || written.token_total == 0) continue;
      emit(std::string(keyness_prefix[v]) + "_keyness" + suffix, keyness_table_name[v],
           "top structures of speech by %DIFF", [&](std::ostream& out) {
             auto rows = keyness_table(spoken, written, opt_.mode);
             if (rows.size() > opt_.keyness_rows) rows.resize(opt_.keyness_rows);
             write_keyness_tsv(rows, out);
           });
    }
  }

  const Corpus* corpus(const std::string& name) const {
    auto it = corpora_.find(name);
    return it == corpora_.end() ? nullptr : &it->second;
  }

  const Language* language(const std::string& code) const {
    for (const auto& l : languages_)
      if (l.code == code) return &l;
    return nullptr;
  }

  void check(int criterion, std::string name, bool available, const std::function<bool()>& ok,
             std::string expected, const std::function<std::string()>& observed) {
    GoldenCheck c{criterion, std::move(name), CheckStatus::skipped, std::move(expected), "-"};
    if (available) {
      c.observed = observed();
      c.status = ok() ? CheckStatus::pass : CheckStatus::fail;
    }
    result_.checks.push_back(std::move(c));
  }

  void golden_checks() {
    for (const auto& [name, exp] : expected_counts()) {
      const Corpus* c = corpus(name);
      if (exp.documents)
        check(1, name + " documents", c, [&] { return c->documents == exp.documents; },
              std::to_string(exp.documents), [&] { return std::to_string(c->documents); });
      check(1, name + " words", c, [&] { return c->words == exp.words; },
            std::to_string(exp.words), [&] { return std::to_string(c->words); });
      check(1, name + " words punct-free", c,
            [&] { return c->variant[kPunctFree].word_total() == exp.punct_free; },
            std::to_string(exp.punct_free),
            [&] { return std::to_string(c->variant[kPunctFree].word_total()); });
      check(1, name + " words disfluency-free", c,
            [&] { return c->variant[kDisfluencyFree].word_total() == exp.disfluency_free; },
            std::to_string(exp.disfluency_free),
            [&] { return std::to_string(c->variant[kDisfluencyFree].word_total()); });
    }
    for (const auto& [name, exp] : expected_counts()) {
      const Corpus* c = corpus(name);
      check(2, name + " types", c, [&] { return c->inventory[kPunctFree].types() == exp.types; },
            std::to_string(exp.types), [&] { return std::to_string(c->inventory[kPunctFree].types()); });
    }

    const std::pair<const char*, std::size_t> table4[] = {{"NOUN", 3638},
                                                          {"DET <det NOUN", 1507},
                                                          {"ADP <case NOUN", 1419},
                                                          {"ADP <case DET <det NOUN", 1342},
                                                          {"ADJ <amod NOUN", 636}};
    const Corpus* written_en = corpus("gum-written");
    for (const auto& [tree, freq] : table4)
      check(3, std::string("gum-written '") + tree + "'", written_en,
            [&] { return written_en->inventory[kPunctFree].count_of(tree) == freq; },
            std::to_string(freq),
            [&] { return std::to_string(written_en->inventory[kPunctFree].count_of(tree)); });

    for (const auto& [name, exp] : expected_counts()) {
      const Corpus* c = corpus(name);
      check(4, name + " hapax share", c,
            [&] { return inventory_stats(c->inventory[kPunctFree]).hapax_share > 0.90; }, "> 0.90",
            [&] { return format_share(inventory_stats(c->inventory[kPunctFree]).hapax_share); });
    }

    const std::tuple<const char*, double, std::size_t> overlap[] = {{"en", 0.112, 145}, {"sl", 0.091, 124}};
    for (const auto& [code, share, top] : overlap) {
      const Language* l = language(code);
      auto all = [&] {
        return overlap_report(l->spoken->inventory[kPunctFree], l->written->inventory[kPunctFree],
                              OverlapFilter::all());
      };
      auto top200 = [&] {
        return overlap_report(l->spoken->inventory[kPunctFree], l->written->inventory[kPunctFree],
                              OverlapFilter::top(200));
      };
      check(5, std::string(code) + " spoken types shared with writing", l,
            [&] { return std::fabs(all().share_of_a - share) <= 0.001 + 1e-12; },
            format_fixed(share * 100, 1) + "% +/- 0.1", [&] { return format_fixed(all().share_of_a * 100, 2) + "%"; });
      check(5, std::string(code) + " top-200 shared", l,
            [&] {
              auto n = static_cast<long>(top200().shared);
              return std::labs(n - static_cast<long>(top)) <= 3;
            },
            std::to_string(top) + " +/- 3", [&] { return std::to_string(top200().shared); });
    }

    for (const auto& k : expected_keyness()) {
      const Language* l = language(k.language);
      auto first = [&] {
        auto rows = keyness_table(l->spoken->inventory[k.variant], l->written->inventory[k.variant],
                                  PercentDiffMode::paper_magnitudes);
        return rows.empty() ? KeynessRow{} : rows.front();
      };
      check(6, k.table + " row 1", l,
            [&] {
              auto r = first();
              return r.freq_focus == k.focus && r.freq_reference == k.reference &&
                     format_report_number(r.percent_diff) == k.magnitude;
            },
            std::to_string(k.focus) + "/" + std::to_string(k.reference) + " " + k.magnitude,
            [&] {
              auto r = first();
              return std::to_string(r.freq_focus) + "/" + std::to_string(r.freq_reference) + " " +
                     format_report_number(r.percent_diff) + " '" + r.tree + "'";
            });
    }

    for (const auto* code : {"en", "sl"}) {
      const Language* l = language(code);
      check(7, std::string(code) + " STTR spoken < written, p < 0.001", l,
            [&] {
              auto c = compare_sttr(*l, kPunctFree);
              return c && c->difference < 0 && c->p_value < 0.001;
            },
            "difference < 0, p < 0.001", [&] {
              auto c = compare_sttr(*l, kPunctFree);
              if (!c) return std::string("too few segments");
              return format_share(c->difference) + ", p = " + format_scientific(c->p_value);
            });
    }
    for (const auto& name : order_) {
      const auto& s = corpora_.at(name).sttr[kDisfluencyFree];
      const std::size_t words = corpora_.at(name).variant[kDisfluencyFree].word_total();
      const std::size_t tail = words % opt_.segment_size;
      check(7, name + " trailing partial STTR segment kept", words > 0,
            [&] { return tail == 0 || (!s.segment_tokens.empty() && s.segment_tokens.back() == tail); },
            tail == 0 ? "no partial segment" : std::to_string(tail) + "-token last segment",
            [&] {
              return s.segment_tokens.empty() ? std::string("none")
                                              : std::to_string(s.segment_tokens.back()) + "-token last segment";
            });
    }
  }

  void write_manifest_and_summary() {
    emit("summary.tsv", "golden checks", "expected vs observed values", [&](std::ostream& out) {
      out << "criterion\tcheck\tstatus\texpected\tobserved\n";
      for (const auto& c : result_.checks)
        out << c.criterion << '\t' << c.name << '\t' << to_string(c.status) << '\t' << c.expected
            << '\t' << c.observed << '\n';
    });
    result_.manifest.push_back({"manifest.tsv", "manifest", "this file"});
    std::ofstream out(fs::path(opt_.outdir) / "manifest.tsv", std::ios::binary);
    out << "file\tartifact\tdescription\n";
    for (const auto& m : result_.manifest) out << m.file << '\t' << m.artifact << '\t' << m.description << '\n';
    if (!out) throw std::runtime_error("cannot write manifest.tsv");
  }

  const ReproduceOptions& opt_;
  ReproduceResult result_;
  std::map<std::string, Corpus> corpora_;
  std::vector<std::string> order_;
  std::vector<Language> languages_;
};

}  // namespace

ReproduceResult reproduce(const ReproduceOptions& options) { return Reproducer(options).run(); }

}  // namespace treecount
