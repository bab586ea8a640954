#include "treecount/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "treecount/format.hpp"

namespace treecount {

std::string format_scientific(double value) {
  if (std::isnan(value) || std::isinf(value)) return format_fixed(value, 0);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 2);
  std::string out(buf, ptr);
  for (auto& c : out)
    if (c == 'e') c = 'E';
  return out;
}

std::string format_share(double value) { return format_fixed(value, 6); }

void write_stats_tsv(const std::vector<NamedInventory>& invs, std::ostream& out) {
  out << "corpus\ttypes\ttokens\thapax_count\thapax_share\tttr\n";
  for (const auto& [name, inv] : invs) {
    auto st = inventory_stats(*inv);
    out << name << '\t' << st.types << '\t' << st.tokens << '\t' << st.hapax_count << '\t'
        << format_share(st.hapax_share) << '\t' << format_share(st.ttr) << '\n';
  }
}

void write_head_shares_tsv(const std::vector<NamedInventory>& invs, std::ostream& out) {
  out << "corpus\thead_symbol\tshare\n";
  for (const auto& [name, inv] : invs)
    for (const auto& [head, share] : inventory_stats(*inv).head_symbol_shares)
      out << name << '\t' << head << '\t' << format_share(share) << '\n';
}

void write_sttr_summary_tsv(const std::vector<NamedSeries>& series, std::ostream& out) {
  out << "corpus\tsegment_size\tsegments\tmean\tci95_half_width\n";
  for (const auto& [name, s] : series)
    out << name << '\t' << s->segment_size << '\t' << s->per_segment_ttr.size() << '\t'
        << format_share(s->mean) << '\t' << format_share(s->ci95_half_width) << '\n';
}

void write_sttr_segments_tsv(const std::vector<NamedSeries>& series, std::ostream& out) {
  out << "corpus\tsegment\ttokens\tttr\n";
  for (const auto& [name, s] : series)
    for (std::size_t i = 0; i < s->per_segment_ttr.size(); ++i)
      out << name << '\t' << i + 1 << '\t' << s->segment_tokens[i] << '\t'
          << format_share(s->per_segment_ttr[i]) << '\n';
}

void write_sttr_test_tsv(const std::vector<std::pair<std::string, SttrComparison>>& tests,
                         std::ostream& out) {
  out << "comparison\tmean_a\tmean_b\tdifference\tt\tdf\tp_value\ttest\n";
  for (const auto& [name, c] : tests)
    out << name << '\t' << format_share(c.mean_a) << '\t' << format_share(c.mean_b) << '\t'
        << format_share(c.difference) << '\t' << format_fixed(c.t_statistic, 4) << '\t'
        << format_fixed(c.degrees_of_freedom, 2) << '\t' << format_scientific(c.p_value) << '\t'
        << c.test_name << '\n';
}

void write_overlap_tsv(const std::vector<OverlapReport>& reports, std::ostream& out) {
  out << "filter\tshared\tonly_a\tonly_b\tshare_of_a\tshare_of_b\n";
  for (const auto& r : reports)
    out << r.filter.describe() << '\t' << r.shared << '\t' << r.only_a << '\t' << r.only_b << '\t'
        << format_share(r.share_of_a) << '\t' << format_share(r.share_of_b) << '\n';
}

void write_keyness_tsv(const std::vector<KeynessRow>& rows, std::ostream& out) {
  out << "tree\tfreq_focus\tfreq_ref\tnf_focus_pm\tnf_ref_pm\tpercent_diff\tg2\tsignificance\n";
  for (const auto& r : rows)
    out << r.tree << '\t' << r.freq_focus << '\t' << r.freq_reference << '\t'
        << format_report_number(r.nf_focus) << '\t' << format_report_number(r.nf_reference) << '\t'
        << format_report_number(r.percent_diff) << '\t' << format_report_number(r.g2) << '\t'
        << to_string(r.significance) << '\n';
}

void write_composition_tsv(const std::vector<CompositionRow>& rows, std::ostream& out) {
  out << "head_symbol\tshare_a\tshare_b\trel_diff\n";
  for (const auto& r : rows)
    out << r.head_symbol << '\t' << format_share(r.share_a) << '\t' << format_share(r.share_b)
        << '\t' << format_report_number(r.rel_diff) << '\n';
}

void write_normalization_tsv(const std::string& corpus, const NormalizationStats& st,
                             std::ostream& out) {
  out << "corpus\twords_before\twords_after\tsentences_dropped\tremoved_label\tremoved\n";
  if (st.tokens_removed_by_label.empty())
    out << corpus << '\t' << st.words_before << '\t' << st.words_after << '\t'
        << st.sentences_dropped << "\t-\t0\n";
  for (const auto& [label, n] : st.tokens_removed_by_label)
    out << corpus << '\t' << st.words_before << '\t' << st.words_after << '\t'
        << st.sentences_dropped << '\t' << label << '\t' << n << '\n';
}

TsvTable read_tsv(std::istream& in) {
  TsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1)
      fields.push_back(line.substr(start, tab - start));
    fields.push_back(line.substr(start));
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size())
      throw std::runtime_error("TSV line " + std::to_string(line_no) + ": expected " +
                               std::to_string(table.header.size()) + " columns, found " +
                               std::to_string(fields.size()));
    table.rows.push_back(std::move(fields));
  }
  return table;
}

}  // namespace treecount
