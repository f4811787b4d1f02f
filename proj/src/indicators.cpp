#include "i3kit/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace i3kit {

namespace {

Rational lookup_weight(const std::optional<std::map<std::string, Rational>>& weights,
                       const std::string& id) {
  if (!weights) return Rational(1);
  auto it = weights->find(id);
  if (it == weights->end()) return Rational(1);
  if (it->second < Rational(0) || it->second > Rational(1))
    throw std::invalid_argument("i3: weight for '" + id + "' outside [0,1]");
  return it->second;
}

/// Lower weighted median: value at the smallest index (ascending order)
/// where cumulative weight reaches half of the total.
Rational weighted_median(std::vector<std::pair<Rational, Rational>>& value_weight,
                         const Rational& total_weight) {
  if (value_weight.empty()) return Rational(0);
  std::sort(value_weight.begin(), value_weight.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rational half = total_weight / Rational(2);
  Rational cum(0);
  for (const auto& [value, weight] : value_weight) {
    cum += weight;
    if (cum >= half) return value;
  }
  return value_weight.back().first;
}

/// s.e.m. with the n-1 sample variance; weights generalize n to the weight
/// total W. Singleton groups (W <= 1) report 0.
double weighted_sem(const std::vector<std::pair<Rational, Rational>>& value_weight,
                    const Rational& total_weight, const Rational& mean) {
  double w_total = total_weight.to_double();
  if (w_total <= 1.0) return 0.0;
  double mu = mean.to_double();
  double ssq = 0.0;
  for (const auto& [value, weight] : value_weight) {
    double d = value.to_double() - mu;
    ssq += weight.to_double() * d * d;
  }
  double variance = ssq / (w_total - 1.0);
  return std::sqrt(variance / w_total);
}

}  // namespace

Rational i3(const std::vector<WeightedItem>& items) {
  RationalSum sum;
  for (const auto& item : items) sum.add(item.weight * item.percentile);
  return sum.total();
}

Rational i3_classed(const std::vector<WeightedItem>& items) {
  RationalSum sum;
  for (const auto& item : items) sum.add(item.weight * Rational(item.class_weight));
  return sum.total();
}

Rational i3(const std::vector<PercentileAssignment>& assignments,
            const std::optional<std::map<std::string, Rational>>& weights) {
  RationalSum sum;
  for (const auto& a : assignments) sum.add(lookup_weight(weights, a.paper_id) * a.percentile);
  return sum.total();
}

Rational i3_classed(const std::vector<PercentileAssignment>& assignments,
                    const RankClassScheme& scheme,
                    const std::optional<std::map<std::string, Rational>>& weights) {
  RationalSum sum;
  for (const auto& a : assignments)
    sum.add(lookup_weight(weights, a.paper_id) * Rational(rank_class_of(a.percentile, scheme)));
  return sum.total();
}

GroupSummary summarize_group(const std::string& label, const std::vector<WeightedItem>& items) {
  GroupSummary s;
  s.group = label;
  if (items.empty()) return s;

  RationalSum n_sum, i3_sum, classed_sum, citation_sum;
  std::vector<std::pair<Rational, Rational>> percentiles, classes;
  percentiles.reserve(items.size());
  classes.reserve(items.size());
  for (const auto& item : items) {
    n_sum.add(item.weight);
    i3_sum.add(item.weight * item.percentile);
    classed_sum.add(item.weight * Rational(item.class_weight));
    citation_sum.add(item.weight * Rational(item.citations));
    percentiles.emplace_back(item.percentile, item.weight);
    classes.emplace_back(Rational(item.class_weight), item.weight);
  }
  s.n_papers = n_sum.total();
  s.i3 = i3_sum.total();
  s.i3_classed = classed_sum.total();
  s.total_citations = citation_sum.total();
  if (s.n_papers.is_zero()) return s;

  s.mean_percentile = s.i3 / s.n_papers;
  s.mean_class = s.i3_classed / s.n_papers;
  s.citations_per_paper = s.total_citations / s.n_papers;
  s.median_percentile = weighted_median(percentiles, s.n_papers);
  s.median_class = weighted_median(classes, s.n_papers);
  s.sem_percentile = weighted_sem(percentiles, s.n_papers, s.mean_percentile);
  s.sem_class = weighted_sem(classes, s.n_papers, s.mean_class);
  return s;
}

Rational share_of_total(const Rational& group_value, const Rational& set_total) {
  if (set_total <= Rational(0)) throw std::invalid_argument("share_of_total: set total must be > 0");
  if (group_value < Rational(0) || group_value > set_total)
    throw std::invalid_argument("share_of_total: group value outside [0, set total]");
  return Rational(100) * group_value / set_total;
}

ExpectedOutcome observed_vs_expected(const Rational& group_value, const Rational& group_pubs,
                                     const Rational& set_value, const Rational& set_pubs) {
  if (set_pubs <= Rational(0) || set_value <= Rational(0))
    throw std::invalid_argument("observed_vs_expected: set totals must be > 0");
  if (group_pubs <= Rational(0))
    throw std::invalid_argument("observed_vs_expected: zero publication share");
  ExpectedOutcome out;
  out.expected = set_value * group_pubs / set_pubs;
  out.ratio = group_value / out.expected;
  return out;
}

RegressionResult linear_regression(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("linear_regression: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("linear_regression: need at least 2 points");
  const double x_mean = x.mean();
  const double y_mean = y.mean();
  const Eigen::VectorXd xc = x.array() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;
  const double sxx = xc.squaredNorm();
  if (sxx == 0.0) throw std::invalid_argument("linear_regression: x is constant");
  const double sxy = xc.dot(yc);
  const double syy = yc.squaredNorm();

  RegressionResult r;
  r.slope = sxy / sxx;
  r.intercept = y_mean - r.slope * x_mean;
  r.r_squared = syy == 0.0 ? 0.0 : (sxy * sxy) / (sxx * syy);
  return r;
}

}  // namespace i3kit
