#include "treecount/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "treecount/inventory.hpp"
#include "treecount/partition.hpp"
#include "treecount/report.hpp"
#include "treecount/reproduce.hpp"

namespace treecount::cli {

namespace fs = std::filesystem;

namespace {

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool parse_bool(const std::string& value, const std::string& what) {
  if (value == "yes" || value == "true" || value == "1") return true;
  if (value == "no" || value == "false" || value == "0") return false;
  throw ConfigError("bad value '" + value + "' for " + what + " (expected yes/no)");
}

std::size_t parse_size(const std::string& value, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != value.size() || value.empty() || value[0] == '-' || v == 0)
    throw ConfigError("bad value '" + value + "' for " + what + " (expected a positive integer)");
  return static_cast<std::size_t>(v);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Writes to `path`, or to `fallback` when the path is empty.
void with_output(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  body(out);
  if (!out) throw DataError("write failure on " + path);
}

std::string output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutdirEnv); env && *env) return env;
  throw UsageError(std::string("an output directory is required (-o or ") + kOutdirEnv + ")");
}

Treebank load_treebank(const std::string& path, const RunConfig& cfg, std::ostream& err) {
  if (!fs::exists(path)) throw DataError("no such file: " + path);
  auto corpus = fs::path(path).stem().string();
  ParseResult r;
  try {
    r = parse_treebank_path(path, corpus, cfg.parse_mode);
  } catch (const ParseError& e) {
    throw DataError(path + ": " + e.what());
  }
  for (const auto& d : r.diagnostics) err << path << ": " << to_string(d) << '\n';
  if (r.skipped_sentences > 0)
    err << path << ": skipped " << r.skipped_sentences << " invalid sentence(s)\n";
  return std::move(r.treebank);
}

Inventory load_inventory(const std::string& path) {
  if (!fs::exists(path)) throw DataError("no such file: " + path);
  try {
    return read_inventory_file(path);
  } catch (const std::runtime_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

// Extraction-related flags shared by extract and sttr.
struct ExtractionFlags {
  std::string config_path;
  std::string node_type, labeled, label_subtypes, fixed, prune_labels, preset;
  std::size_t segment_size = 0;

  void add_to(CLI::App* app, bool with_segments) {
    app->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
    app->add_option("--node-type", node_type, "upos|xpos|form|lemma|deprel|none");
    app->add_option("--labeled", labeled, "yes|no");
    app->add_option("--label-subtypes", label_subtypes, "yes|no");
    app->add_option("--fixed", fixed, "yes|no (word order distinctive)");
    app->add_option("--prune-labels", prune_labels, "prune these labels before extraction");
    app->add_option("--preset", preset, "prune preset: punct-free|disfluency-free|none");
    if (with_segments) app->add_option("--segment-size", segment_size, "STTR segment size");
  }

  void apply(RunConfig& cfg) const {
    if (!config_path.empty()) apply_config_path(config_path, cfg);
    try {
      if (!node_type.empty()) cfg.extraction.node_type = node_type_from_string(node_type);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (!labeled.empty()) cfg.extraction.labeled = parse_bool(labeled, "--labeled");
    if (!label_subtypes.empty()) cfg.extraction.label_subtypes = parse_bool(label_subtypes, "--label-subtypes");
    if (!fixed.empty()) cfg.extraction.fixed = parse_bool(fixed, "--fixed");
    if (!prune_labels.empty()) cfg.prune = PruneSpec::from_list(prune_labels);
    if (!preset.empty()) {
      try {
        cfg.prune = PruneSpec::preset(preset);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    if (segment_size > 0) cfg.segment_size = segment_size;
  }
};

Treebank prepared(const std::string& path, const RunConfig& cfg, std::ostream& err) {
  auto tb = load_treebank(path, cfg, err);
  if (cfg.prune.empty()) return tb;
  auto norm = normalize_treebank(tb, cfg.prune);
  return std::move(norm.treebank);
}

}  // namespace

void apply_config_file(std::istream& in, RunConfig& cfg) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      if (key == "node_type") cfg.extraction.node_type = node_type_from_string(value);
      else if (key == "labeled" || key == "labelled") cfg.extraction.labeled = parse_bool(value, key);
      else if (key == "label_subtypes") cfg.extraction.label_subtypes = parse_bool(value, key);
      else if (key == "fixed") cfg.extraction.fixed = parse_bool(value, key);
      else if (key == "segment_size") cfg.segment_size = parse_size(value, key);
      else if (key == "prune_labels") cfg.prune = PruneSpec::from_list(value);
      else throw ConfigError("unknown key '" + key + "'");
    } catch (const std::exception& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_path(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    apply_config_file(in, cfg);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extract and compare delexicalized dependency-tree inventories from CoNLL-U treebanks",
               "treecount"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all");

  RunConfig cfg;
  bool lenient = false;
  app.add_flag("--lenient", lenient, "skip invalid sentences instead of failing");
  app.add_option("-j,--workers", cfg.workers, "extraction worker threads")->check(CLI::Range(1u, 256u));

  // normalize
  auto* normalize = app.add_subcommand("normalize", "delete branches rooted in the given relations");
  std::string norm_in, norm_out, norm_stats, norm_labels, norm_preset;
  normalize->add_option("input", norm_in, "CoNLL-U file or directory")->required();
  normalize->add_option("-o,--output", norm_out, "output CoNLL-U (default stdout)");
  normalize->add_option("--stats", norm_stats, "write normalization statistics TSV");
  auto* drop_opt = normalize->add_option("--drop-labels", norm_labels, "comma-separated labels");
  normalize->add_option("--preset", norm_preset, "punct-free|disfluency-free|none")->excludes(drop_opt);

  // split
  auto* split = app.add_subcommand("split", "partition documents into subsets");
  std::string split_in, split_out, split_spec, split_preset;
  bool split_unassigned = false;
  split->add_option("input", split_in)->required();
  split->add_option("-o,--outdir", split_out, "output directory");
  auto* spec_opt = split->add_option("--spec", split_spec, "rules file: pattern<TAB>subset");
  split->add_option("--preset", split_preset, "gum")->excludes(spec_opt);
  split->add_flag("--unassigned", split_unassigned, "collect unmatched documents instead of failing");

  // extract
  auto* extract = app.add_subcommand("extract", "build a structure inventory");
  std::vector<std::string> extract_in;
  std::string extract_out;
  ExtractionFlags extract_flags;
  extract->add_option("inputs", extract_in, "CoNLL-U files (merged)")->required();
  extract->add_option("-o,--output", extract_out, "inventory TSV (default stdout)");
  extract_flags.add_to(extract, false);

  // stats
  auto* stats = app.add_subcommand("stats", "type/token/hapax statistics of inventories");
  std::vector<std::string> stats_in;
  std::string stats_out;
  bool stats_heads = false;
  stats->add_option("inventories", stats_in)->required();
  stats->add_option("-o,--output", stats_out);
  stats->add_flag("--heads", stats_heads, "report head-symbol shares instead");

  // sttr
  auto* sttr = app.add_subcommand("sttr", "segmented type-token ratio; two inputs adds a Welch test");
  std::vector<std::string> sttr_in;
  std::string sttr_out, sttr_segments, sttr_test;
  ExtractionFlags sttr_flags;
  sttr->add_option("inputs", sttr_in, "one or two CoNLL-U files")->required()->expected(1, 2);
  sttr->add_option("-o,--output", sttr_out, "summary TSV (default stdout)");
  sttr->add_option("--segments", sttr_segments, "per-segment TTR TSV");
  sttr->add_option("--test", sttr_test, "Welch test TSV (default: stderr)");
  sttr_flags.add_to(sttr, true);

  // compare
  auto* compare = app.add_subcommand("compare", "type overlap at three frequency filters");
  std::string cmp_a, cmp_b, cmp_out;
  compare->add_option("a", cmp_a)->required();
  compare->add_option("b", cmp_b)->required();
  compare->add_option("-o,--output", cmp_out);
  compare->add_option("--min-freq", cfg.min_freq)->check(CLI::PositiveNumber);
  compare->add_option("--top-n", cfg.top_n)->check(CLI::PositiveNumber);

  // keyness
  auto* keyness = app.add_subcommand("keyness", "%DIFF keyness with log-likelihood");
  std::string key_focus, key_ref, key_out, key_mode = "footnote";
  std::size_t key_limit = 0;
  keyness->add_option("focus", key_focus)->required();
  keyness->add_option("reference", key_ref)->required();
  keyness->add_option("-o,--output", key_out);
  keyness->add_option("--mode", key_mode, "footnote|paper-magnitudes")
      ->check(CLI::IsMember({"footnote", "paper-magnitudes"}));
  keyness->add_option("--min-g2", cfg.min_g2)->check(CLI::NonNegativeNumber);
  keyness->add_option("--limit", key_limit, "keep the first N rows (0 = all)");

  // compose
  auto* compose = app.add_subcommand("compose", "head-symbol composition differences");
  std::string comp_a, comp_b, comp_out;
  compose->add_option("a", comp_a)->required();
  compose->add_option("b", comp_b)->required();
  compose->add_option("-o,--output", comp_out);

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "run the full spoken/written comparison");
  std::string r_gum, r_ssj, r_sst, r_out, r_mode = "paper-magnitudes";
  repro->add_option("--gum", r_gum, "GUM treebank (file or directory)");
  repro->add_option("--ssj", r_ssj, "SSJ treebank (file or directory)");
  repro->add_option("--sst", r_sst, "SST treebank (file or directory)");
  repro->add_option("-o,--outdir", r_out);
  repro->add_option("--mode", r_mode)->check(CLI::IsMember({"footnote", "paper-magnitudes"}));
  repro->add_option("--segment-size", cfg.segment_size)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }
  if (lenient) cfg.parse_mode = ParseMode::lenient;

  try {
    if (normalize->parsed()) {
      PruneSpec spec = PruneSpec::punct_free();
      if (!norm_labels.empty()) spec = PruneSpec::from_list(norm_labels);
      if (!norm_preset.empty()) {
        try {
          spec = PruneSpec::preset(norm_preset);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      auto tb = load_treebank(norm_in, cfg, err);
      auto result = normalize_treebank(tb, spec);
      with_output(norm_out, out, [&](std::ostream& o) { write_treebank(result.treebank, o); });
      if (!norm_stats.empty())
        with_output(norm_stats, out,
                    [&](std::ostream& o) { write_normalization_tsv(tb.corpus_id(), result.stats, o); });
      err << "words " << result.stats.words_before << " -> " << result.stats.words_after
          << ", sentences dropped " << result.stats.sentences_dropped << '\n';
    } else if (split->parsed()) {
      if (split_spec.empty() && split_preset.empty()) throw UsageError("split needs --spec or --preset");
      if (!split_preset.empty() && split_preset != "gum") throw UsageError("unknown split preset '" + split_preset + "'");
      const auto dir = output_dir(split_out);
      const auto fallback = split_unassigned ? PartitionSpec::Default::unassigned_bucket
                                             : PartitionSpec::Default::error;
      PartitionSpec spec = split_spec.empty() ? PartitionSpec::gum() : PartitionSpec::from_file(split_spec, fallback);
      if (split_spec.empty() && split_unassigned)
        spec = PartitionSpec(PartitionSpec::gum().rules(), fallback);
      auto tb = load_treebank(split_in, cfg, err);
      auto parts = partition_treebank(tb, spec);
      fs::create_directories(dir);
      out << "subset\tdocuments\tsentences\twords\n";
      for (const auto& [name, part] : parts) {
        with_output((fs::path(dir) / (part.corpus_id() + ".conllu")).string(), out,
                    [&](std::ostream& o) { write_treebank(part, o); });
        out << part.corpus_id() << '\t' << part.documents().size() << '\t' << part.sentence_count() << '\t'
            << part.word_total() << '\n';
      }
    } else if (extract->parsed()) {
      extract_flags.apply(cfg);
      Inventory inv{"", cfg.extraction, 0, {}};
      for (const auto& path : extract_in) {
        auto tb = prepared(path, cfg, err);
        inv = merge_inventories(inv, build_inventory(tb, cfg.extraction, cfg.workers));
      }
      with_output(extract_out, out, [&](std::ostream& o) { write_inventory_tsv(inv, o); });
    } else if (stats->parsed()) {
      std::vector<Inventory> invs;
      for (const auto& p : stats_in) invs.push_back(load_inventory(p));
      std::vector<NamedInventory> named;
      for (std::size_t i = 0; i < invs.size(); ++i) named.push_back({invs[i].corpus_id, &invs[i]});
      with_output(stats_out, out, [&](std::ostream& o) {
        if (stats_heads) write_head_shares_tsv(named, o);
        else write_stats_tsv(named, o);
      });
    } else if (sttr->parsed()) {
      sttr_flags.apply(cfg);
      std::vector<SttrSeries> series;
      std::vector<std::string> names;
      for (const auto& path : sttr_in) {
        auto tb = prepared(path, cfg, err);
        if (tb.word_total() == 0) throw DataError(path + ": no words to segment");
        series.push_back(segmented_ttr(tb, cfg.extraction, cfg.segment_size));
        names.push_back(fs::path(path).stem().string());
      }
      std::vector<NamedSeries> named;
      for (std::size_t i = 0; i < series.size(); ++i) named.push_back({names[i], &series[i]});
      with_output(sttr_out, out, [&](std::ostream& o) { write_sttr_summary_tsv(named, o); });
      if (!sttr_segments.empty())
        with_output(sttr_segments, out, [&](std::ostream& o) { write_sttr_segments_tsv(named, o); });
      if (series.size() == 2) {
        auto c = sttr_compare(series[0], series[1]);
        with_output(sttr_test, err, [&](std::ostream& o) {
          write_sttr_test_tsv({{names[0] + " vs " + names[1], c}}, o);
        });
      }
    } else if (compare->parsed()) {
      auto a = load_inventory(cmp_a);
      auto b = load_inventory(cmp_b);
      std::vector<OverlapReport> reports = {overlap_report(a, b, OverlapFilter::all()),
                                            overlap_report(a, b, OverlapFilter::min_freq(cfg.min_freq)),
                                            overlap_report(a, b, OverlapFilter::top(cfg.top_n))};
      with_output(cmp_out, out, [&](std::ostream& o) { write_overlap_tsv(reports, o); });
    } else if (keyness->parsed()) {
      cfg.mode = percent_diff_mode_from_string(key_mode);
      auto focus = load_inventory(key_focus);
      auto ref = load_inventory(key_ref);
      if (ref.token_total == 0 && !focus.entries.empty())
        throw DataError(key_ref + ": reference inventory is empty");
      auto rows = keyness_table(focus, ref, cfg.mode, cfg.min_g2);
      if (key_limit > 0 && rows.size() > key_limit) rows.resize(key_limit);
      with_output(key_out, out, [&](std::ostream& o) { write_keyness_tsv(rows, o); });
    } else if (compose->parsed()) {
      auto a = load_inventory(comp_a);
      auto b = load_inventory(comp_b);
      with_output(comp_out, out, [&](std::ostream& o) { write_composition_tsv(composition_diff(a, b), o); });
    } else if (repro->parsed()) {
      ReproduceOptions opt;
      if (!r_gum.empty()) opt.gum = r_gum;
      if (!r_ssj.empty()) opt.ssj = r_ssj;
      if (!r_sst.empty()) opt.sst = r_sst;
      for (const auto* p : {&r_gum, &r_ssj, &r_sst})
        if (!p->empty() && !fs::exists(*p)) throw DataError("no such file or directory: " + *p);
      if (!opt.gum && !opt.ssj && !opt.sst)
        throw DataError(
            "reproduce needs the UD 2.15 treebanks: pass --gum (UD_English-GUM), --ssj "
            "(UD_Slovenian-SSJ) and --sst (UD_Slovenian-SST), each a .conllu file or a directory "
            "of .conllu files");
      opt.outdir = output_dir(r_out);
      opt.mode = percent_diff_mode_from_string(r_mode);
      opt.parse_mode = cfg.parse_mode;
      opt.workers = cfg.workers;
      opt.segment_size = cfg.segment_size;
      try {
        auto result = reproduce(opt);
        for (const auto& c : result.checks)
          out << to_string(c.status) << '\t' << c.criterion << '\t' << c.name << '\t' << c.expected
              << '\t' << c.observed << '\n';
        out << result.manifest.size() << " files written to " << opt.outdir << '\n';
        return result.all_passed() ? kOk : kDataError;
      } catch (const ParseError& e) {
        throw DataError(e.what());
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("treecount");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace treecount::cli
