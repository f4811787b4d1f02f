#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "i3kit/percentiles.hpp"
#include "i3kit/rational.hpp"

namespace i3kit {

/// One scored paper's contribution to a group: journal groups carry weight 1,
/// country groups carry the record's exact country fraction.
struct WeightedItem {
  Rational percentile;
  long long class_weight = 0;
  long long citations = 0;
  Rational weight = Rational(1);
};

/// Per-unit summary row (journal, country, or aggregate). Sums and shares
/// stay exact rationals; only s.e.m. involves a square root.
struct GroupSummary {
  std::string group;
  Rational n_papers;
  Rational i3;
  Rational i3_classed;
  Rational mean_percentile;
  double sem_percentile = 0.0;
  Rational median_percentile;
  Rational mean_class;
  double sem_class = 0.0;
  Rational median_class;
  Rational total_citations;
  Rational citations_per_paper;
  Rational share_i3_percent;
  Rational share_classed_percent;
  Rational share_pubs_percent;
  Rational expected_i3;
  Rational expected_classed;
  Rational ratio_i3;
  Rational ratio_classed;
  std::string mark_i3;       // ++ / + / (empty) / - / -- / n/a
  std::string mark_classed;
  bool is_aggregate = false;  // overlaps member rows; excluded from closures
};

/// Integrated impact: sum of weight * percentile over the subset. Weights
/// default to 1 and must lie in [0,1]; an empty subset sums to 0.
Rational i3(const std::vector<PercentileAssignment>& assignments,
            const std::optional<std::map<std::string, Rational>>& weights = std::nullopt);

/// Class-weighted variant: sum of weight * rank_class_of(percentile).
Rational i3_classed(const std::vector<PercentileAssignment>& assignments,
                    const RankClassScheme& scheme,
                    const std::optional<std::map<std::string, Rational>>& weights = std::nullopt);

Rational i3(const std::vector<WeightedItem>& items);
Rational i3_classed(const std::vector<WeightedItem>& items);

/// Fills every GroupSummary field except shares, ratios and marks.
GroupSummary summarize_group(const std::string& label, const std::vector<WeightedItem>& items);

/// 100 * group_value / set_total; requires set_total > 0 and
/// 0 <= group_value <= set_total.
Rational share_of_total(const Rational& group_value, const Rational& set_total);

struct ExpectedOutcome {
  Rational expected;  // set_value * group_pubs / set_pubs
  Rational ratio;     // share_value / share_pubs == value / expected
};

/// Observed-vs-expected decomposition of one group against its set.
ExpectedOutcome observed_vs_expected(const Rational& group_value, const Rational& group_pubs,
                                     const Rational& set_value, const Rational& set_pubs);

struct RegressionResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares of y on x; x must not be constant.
RegressionResult linear_regression(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const Eigen::Ref<const Eigen::VectorXd>& y);

}  // namespace i3kit
