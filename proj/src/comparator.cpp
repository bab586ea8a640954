#include "treecount/comparator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <boost/math/distributions/students_t.hpp>

namespace treecount {

std::string OverlapFilter::describe() const {
  switch (kind) {
    case Kind::all: return "all";
    case Kind::min_freq: return "min_freq(" + std::to_string(value) + ")";
    case Kind::top: return "top(" + std::to_string(value) + ")";
  }
  return "all";
}

std::vector<std::string> filtered_types(const Inventory& inv, const OverlapFilter& filter) {
  std::vector<std::string> out;
  switch (filter.kind) {
    case OverlapFilter::Kind::all:
      out.reserve(inv.entries.size());
      for (const auto& [text, e] : inv.entries) out.push_back(text);
      break;
    case OverlapFilter::Kind::min_freq:
      for (const auto& [text, e] : inv.entries)
        if (e.count >= filter.value) out.push_back(text);
      break;
    case OverlapFilter::Kind::top: {
      auto rows = sorted_entries(inv);
      rows.resize(std::min(rows.size(), filter.value));
      for (auto& [text, e] : rows) out.push_back(std::move(text));
      break;
    }
  }
  return out;
}

OverlapReport overlap_report(const Inventory& a, const Inventory& b, const OverlapFilter& filter) {
  require_same_config(a, b);
  const auto fa = filtered_types(a, filter);
  const auto fb = filtered_types(b, filter);
  const std::unordered_set<std::string_view> in_b(fb.begin(), fb.end());

  OverlapReport r;
  r.filter = filter;
  for (const auto& t : fa)
    if (in_b.count(t)) ++r.shared;
  r.only_a = fa.size() - r.shared;
  r.only_b = fb.size() - r.shared;
  if (!fa.empty()) r.share_of_a = static_cast<double>(r.shared) / static_cast<double>(fa.size());
  if (!fb.empty()) r.share_of_b = static_cast<double>(r.shared) / static_cast<double>(fb.size());
  return r;
}

PercentDiffMode percent_diff_mode_from_string(const std::string& name) {
  if (name == "footnote") return PercentDiffMode::footnote;
  if (name == "paper-magnitudes" || name == "paper_magnitudes") return PercentDiffMode::paper_magnitudes;
  throw std::invalid_argument("unknown %DIFF mode '" + name + "'");
}

double per_million(std::size_t f, std::size_t n) {
  return static_cast<double>(f) / static_cast<double>(n) * 1e6;
}

double percent_diff(std::size_t f_focus, std::size_t n_focus, std::size_t f_ref, std::size_t n_ref,
                    PercentDiffMode mode) {
  if (n_focus == 0 || n_ref == 0) throw std::invalid_argument("corpus sizes must be positive");
  if (f_focus > n_focus || f_ref > n_ref)
    throw std::invalid_argument("frequency exceeds corpus size");

  const double nf_focus = per_million(f_focus, n_focus);
  if (f_ref > 0) {
    const double nf_ref = per_million(f_ref, n_ref);
    return (nf_focus - nf_ref) / nf_ref * 100.0;
  }
  if (mode == PercentDiffMode::paper_magnitudes)
    return static_cast<double>(f_focus) * static_cast<double>(n_ref) / static_cast<double>(n_focus) * 1e20;
  constexpr double kProxy = 1e-15;
  return (nf_focus - kProxy) / kProxy * 100.0;
}

std::string to_string(Significance s) {
  switch (s) {
    case Significance::ns: return "ns";
    case Significance::p05: return "p<.05";
    case Significance::p01: return "p<.01";
    case Significance::p001: return "p<.001";
  }
  return "ns";
}

LogLikelihood log_likelihood_g2(std::size_t a, std::size_t n1, std::size_t b, std::size_t n2) {
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("corpus sizes must be positive");
  if (a > n1 || b > n2) throw std::invalid_argument("frequency exceeds corpus size");

  const double fa = static_cast<double>(a), fb = static_cast<double>(b);
  const double c1 = static_cast<double>(n1), c2 = static_cast<double>(n2);
  const double e1 = c1 * (fa + fb) / (c1 + c2);
  const double e2 = c2 * (fa + fb) / (c1 + c2);
  double g2 = 0.0;
  if (a > 0) g2 += fa * std::log(fa / e1);
  if (b > 0) g2 += fb * std::log(fb / e2);
  g2 = std::max(0.0, 2.0 * g2);
  // Equal proportions give exactly zero in theory; suppress rounding noise.
  if (a * n2 == b * n1) g2 = 0.0;

  LogLikelihood r{g2, Significance::ns};
  if (g2 >= 10.83) r.significance = Significance::p001;
  else if (g2 >= 6.63) r.significance = Significance::p01;
  else if (g2 >= 3.84) r.significance = Significance::p05;
  return r;
}

std::vector<KeynessRow> keyness_table(const Inventory& focus, const Inventory& reference,
                                      PercentDiffMode mode, double min_g2) {
  require_same_config(focus, reference);
  std::vector<KeynessRow> rows;
  if (focus.entries.empty()) return rows;
  rows.reserve(focus.entries.size());
  for (const auto& [text, e] : focus.entries) {
    KeynessRow row;
    row.tree = text;
    row.freq_focus = e.count;
    row.freq_reference = reference.count_of(text);
    row.nf_focus = per_million(row.freq_focus, focus.token_total);
    row.nf_reference = per_million(row.freq_reference, reference.token_total);
    row.percent_diff = percent_diff(row.freq_focus, focus.token_total, row.freq_reference,
                                    reference.token_total, mode);
    auto ll = log_likelihood_g2(row.freq_focus, focus.token_total, row.freq_reference,
                                reference.token_total);
    row.g2 = ll.g2;
    row.significance = ll.significance;
    if (min_g2 > 0.0 && row.g2 < min_g2) continue;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const KeynessRow& x, const KeynessRow& y) {
    if (x.percent_diff != y.percent_diff) return x.percent_diff > y.percent_diff;
    if (x.freq_focus != y.freq_focus) return x.freq_focus > y.freq_focus;
    return x.tree < y.tree;
  });
  return rows;
}

std::vector<CompositionRow> composition_diff(const Inventory& a, const Inventory& b) {
  require_same_config(a, b);
  const auto sa = inventory_stats(a).head_symbol_shares;
  const auto sb = inventory_stats(b).head_symbol_shares;
  std::set<std::string> symbols;
  for (const auto& [p, v] : sa) symbols.insert(p);
  for (const auto& [p, v] : sb) symbols.insert(p);

  std::vector<CompositionRow> rows;
  for (const auto& p : symbols) {
    CompositionRow r;
    r.head_symbol = p;
    if (auto it = sa.find(p); it != sa.end()) r.share_a = it->second;
    if (auto it = sb.find(p); it != sb.end()) r.share_b = it->second;
    r.rel_diff = r.share_b > 0.0 ? (r.share_a - r.share_b) / r.share_b
                                 : std::numeric_limits<double>::infinity();
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // sample variance (n - 1)
  double n = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.n = static_cast<double>(xs.size());
  for (double x : xs) m.mean += x;
  m.mean /= m.n;
  for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
  m.variance /= (m.n - 1.0);
  return m;
}

}  // namespace

SttrComparison sttr_compare(const SttrSeries& a, const SttrSeries& b) {
  if (a.per_segment_ttr.size() < 2 || b.per_segment_ttr.size() < 2)
    throw std::invalid_argument("STTR comparison needs at least two segments per series");

  const auto ma = moments(a.per_segment_ttr);
  const auto mb = moments(b.per_segment_ttr);
  SttrComparison c;
  c.mean_a = ma.mean;
  c.mean_b = mb.mean;
  c.difference = ma.mean - mb.mean;

  const double va = ma.variance / ma.n;
  const double vb = mb.variance / mb.n;
  const double se2 = va + vb;
  if (se2 == 0.0) {
    // Both samples constant: either indistinguishable or trivially different.
    c.degrees_of_freedom = ma.n + mb.n - 2.0;
    if (c.difference == 0.0) {
      c.t_statistic = 0.0;
      c.p_value = 1.0;
    } else {
      c.t_statistic = c.difference > 0 ? std::numeric_limits<double>::infinity()
                                       : -std::numeric_limits<double>::infinity();
      c.p_value = 0.0;
    }
    return c;
  }
  c.t_statistic = c.difference / std::sqrt(se2);
  c.degrees_of_freedom =
      se2 * se2 / (va * va / (ma.n - 1.0) + vb * vb / (mb.n - 1.0));
  boost::math::students_t dist(c.degrees_of_freedom);
  c.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(c.t_statistic)));
  c.p_value = std::min(1.0, c.p_value);
  return c;
}

}  // namespace treecount
