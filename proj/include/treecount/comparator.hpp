#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "treecount/inventory.hpp"

namespace treecount {

struct OverlapFilter {
  enum class Kind { all, min_freq, top };
  Kind kind = Kind::all;
  std::size_t value = 0;

  static OverlapFilter all() { return {Kind::all, 0}; }
  static OverlapFilter min_freq(std::size_t k) { return {Kind::min_freq, k}; }
  static OverlapFilter top(std::size_t n) { return {Kind::top, n}; }

  /// "all", "min_freq(2)", "top(200)".
  std::string describe() const;
};

struct OverlapReport {
  OverlapFilter filter;
  std::size_t shared = 0;
  std::size_t only_a = 0;
  std::size_t only_b = 0;
  double share_of_a = 0.0;
  double share_of_b = 0.0;
};

/// Trees kept by `filter`. Top-n ranks by count, ties by ascending text, and
/// clamps n to the inventory size.
std::vector<std::string> filtered_types(const Inventory& inv, const OverlapFilter& filter);

OverlapReport overlap_report(const Inventory& a, const Inventory& b, const OverlapFilter& filter);

/// Zero-reference handling for %DIFF.
///  footnote:         NF_ref is replaced by the proxy 1e-15.
///  paper_magnitudes: f_focus * n_ref / n_focus * 1e20.
enum class PercentDiffMode { footnote, paper_magnitudes };

PercentDiffMode percent_diff_mode_from_string(const std::string& name);

/// Normalised frequency per million.
double per_million(std::size_t f, std::size_t n);

/// Throws std::invalid_argument on precondition violations.
double percent_diff(std::size_t f_focus, std::size_t n_focus, std::size_t f_ref, std::size_t n_ref,
                    PercentDiffMode mode = PercentDiffMode::footnote);

enum class Significance { ns, p05, p01, p001 };
std::string to_string(Significance s);

struct LogLikelihood {
  double g2 = 0.0;
  Significance significance = Significance::ns;
};

/// Two-corpus log-likelihood (Dunning G2) with chi-square(1) thresholds
/// 3.84 / 6.63 / 10.83.
LogLikelihood log_likelihood_g2(std::size_t a, std::size_t n1, std::size_t b, std::size_t n2);

struct KeynessRow {
  std::string tree;
  std::size_t freq_focus = 0;
  std::size_t freq_reference = 0;
  double nf_focus = 0.0;
  double nf_reference = 0.0;
  double percent_diff = 0.0;
  double g2 = 0.0;
  Significance significance = Significance::ns;
};

/// One row per focus type, by descending %DIFF, then descending focus
/// frequency, then ascending text. Rows with g2 < min_g2 are dropped when
/// min_g2 > 0.
std::vector<KeynessRow> keyness_table(const Inventory& focus, const Inventory& reference,
                                      PercentDiffMode mode = PercentDiffMode::footnote,
                                      double min_g2 = 0.0);

struct CompositionRow {
  std::string head_symbol;
  double share_a = 0.0;
  double share_b = 0.0;
  /// (share_a - share_b) / share_b; +infinity when share_b is 0.
  double rel_diff = 0.0;
};

/// Ordered by head symbol.
std::vector<CompositionRow> composition_diff(const Inventory& a, const Inventory& b);

struct SttrComparison {
  double mean_a = 0.0;
  double mean_b = 0.0;
  double difference = 0.0;
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  std::string test_name = "welch-t";
};

/// Welch's two-sample t-test, two-sided. Throws std::invalid_argument when
/// either series has fewer than two segments.
SttrComparison sttr_compare(const SttrSeries& a, const SttrSeries& b);

}  // namespace treecount
