#include "i3kit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "i3kit/special_functions.hpp"
#include "i3kit/text.hpp"

namespace i3kit {

namespace {

double two_sided_normal_p(double z) { return std::erfc(std::fabs(z) / 1.4142135623730951); }

std::string format_stat(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string to_string(SignificanceMark mark) {
  switch (mark) {
    case SignificanceMark::plus_plus: return "++";
    case SignificanceMark::plus: return "+";
    case SignificanceMark::none: return "";
    case SignificanceMark::minus: return "-";
    case SignificanceMark::minus_minus: return "--";
    case SignificanceMark::unreliable: return "n/a";
  }
  return "";
}

ZTestOutcome z_residual(double observed, double expected, std::pair<double, double> alphas) {
  if (expected < 0.0) throw std::invalid_argument("z_residual: expected must be >= 0");
  ZTestOutcome out;
  out.observed = observed;
  out.expected = expected;
  if (expected < 5.0) {
    out.mark = SignificanceMark::unreliable;
    return out;
  }
  const double z = (observed - expected) / std::sqrt(expected);
  out.z = z;
  const double z5 = normal_quantile(1.0 - alphas.first / 2.0);
  const double z1 = normal_quantile(1.0 - alphas.second / 2.0);
  if (z >= z1) out.mark = SignificanceMark::plus_plus;
  else if (z >= z5) out.mark = SignificanceMark::plus;
  else if (z <= -z1) out.mark = SignificanceMark::minus_minus;
  else if (z <= -z5) out.mark = SignificanceMark::minus;
  else out.mark = SignificanceMark::none;
  return out;
}

RankInfo midranks(const Eigen::Ref<const Eigen::VectorXd>& pooled) {
  const Eigen::Index n = pooled.size();
  RankInfo info;
  info.ranks.resize(n);
  if (n == 0) return info;

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return pooled[a] < pooled[b]; });

  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double tied = static_cast<double>(j - i + 1);
    const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (Eigen::Index k = i; k <= j; ++k) info.ranks[order[k]] = rank;
    if (tied > 1.0) info.tie_sum += tied * tied * tied - tied;
    i = j + 1;
  }
  return info;
}

KruskalWallisResult kruskal_wallis(const std::vector<Eigen::VectorXd>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("kruskal_wallis: need at least 2 groups");
  Eigen::Index n_total = 0;
  for (const auto& g : groups) {
    if (g.size() == 0) throw std::invalid_argument("kruskal_wallis: empty group");
    n_total += g.size();
  }
  Eigen::VectorXd pooled(n_total);
  Eigen::Index offset = 0;
  for (const auto& g : groups) {
    pooled.segment(offset, g.size()) = g;
    offset += g.size();
  }
  RankInfo info = midranks(pooled);

  const double n = static_cast<double>(n_total);
  double h = 0.0;
  offset = 0;
  for (const auto& g : groups) {
    const double rank_sum = info.ranks.segment(offset, g.size()).sum();
    h += rank_sum * rank_sum / static_cast<double>(g.size());
    offset += g.size();
  }
  h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

  KruskalWallisResult result;
  result.df = static_cast<int>(groups.size()) - 1;
  const double correction = 1.0 - info.tie_sum / (n * n * n - n);
  if (correction <= 0.0) {
    // every pooled value identical
    result.h = 0.0;
    result.p = 1.0;
    return result;
  }
  result.h = h / correction;
  if (result.h < 0.0) result.h = 0.0;  // guard against -0 rounding
  result.p = chi_square_sf(result.h, result.df);
  return result;
}

PairwiseMatrix dunn_pairwise(const std::vector<std::string>& labels,
                             const std::vector<Eigen::VectorXd>& groups, double family_alpha) {
  if (labels.size() != groups.size())
    throw std::invalid_argument("dunn_pairwise: labels/groups size mismatch");
  if (groups.size() < 2) throw std::invalid_argument("dunn_pairwise: need at least 2 groups");
  for (const auto& g : groups)
    if (g.size() == 0) throw std::invalid_argument("dunn_pairwise: empty group");

  const size_t k = groups.size();
  Eigen::Index n_total = 0;
  for (const auto& g : groups) n_total += g.size();
  Eigen::VectorXd pooled(n_total);
  Eigen::Index offset = 0;
  for (const auto& g : groups) {
    pooled.segment(offset, g.size()) = g;
    offset += g.size();
  }
  RankInfo info = midranks(pooled);

  std::vector<double> mean_rank(k), sizes(k);
  offset = 0;
  for (size_t i = 0; i < k; ++i) {
    sizes[i] = static_cast<double>(groups[i].size());
    mean_rank[i] = info.ranks.segment(offset, groups[i].size()).mean();
    offset += groups[i].size();
  }

  const double n = static_cast<double>(n_total);
  // tie-corrected pooled-rank variance term
  const double base_var = n * (n + 1.0) / 12.0 - info.tie_sum / (12.0 * (n - 1.0));

  PairwiseMatrix matrix;
  matrix.labels = labels;
  matrix.method = PairwiseMethod::dunn;
  matrix.family_alpha = family_alpha;
  matrix.per_comparison_alpha = family_alpha / (static_cast<double>(k) * (k - 1.0) / 2.0);
  matrix.statistic = Eigen::MatrixXd::Zero(k, k);
  matrix.significant.setConstant(k, k, false);

  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      const double variance = base_var * (1.0 / sizes[i] + 1.0 / sizes[j]);
      double z = 0.0;
      if (variance > 0.0) z = (mean_rank[i] - mean_rank[j]) / std::sqrt(variance);
      matrix.statistic(i, j) = z;
      matrix.statistic(j, i) = -z;
      const bool sig = two_sided_normal_p(z) < matrix.per_comparison_alpha;
      matrix.significant(i, j) = sig;
      matrix.significant(j, i) = sig;
    }
  }
  return matrix;
}

MannWhitneyResult mann_whitney(const Eigen::Ref<const Eigen::VectorXd>& a,
                               const Eigen::Ref<const Eigen::VectorXd>& b, double alpha,
                               bool continuity_correction) {
  if (a.size() == 0 || b.size() == 0)
    throw std::invalid_argument("mann_whitney: both samples must be non-empty");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;

  Eigen::VectorXd pooled(a.size() + b.size());
  pooled << a, b;
  RankInfo info = midranks(pooled);

  const double rank_sum_a = info.ranks.head(a.size()).sum();
  const double u_a = na * nb + na * (na + 1.0) / 2.0 - rank_sum_a;
  const double u_b = na * nb - u_a;

  MannWhitneyResult result;
  result.u = std::min(u_a, u_b);

  const double mean_u = na * nb / 2.0;
  const double variance =
      na * nb / 12.0 * ((n + 1.0) - info.tie_sum / (n * (n - 1.0)));
  if (variance <= 0.0) {
    result.z = 0.0;
    result.p = 1.0;
    result.significant = false;
    return result;
  }
  double deviation = result.u - mean_u;
  if (continuity_correction && deviation != 0.0) {
    const double shrunk = std::fabs(deviation) - 0.5;
    deviation = shrunk <= 0.0 ? 0.0 : std::copysign(shrunk, deviation);
  }
  result.z = deviation / std::sqrt(variance);
  result.p = two_sided_normal_p(result.z);
  if (result.p > 1.0) result.p = 1.0;
  result.significant = result.p < alpha;
  return result;
}

double pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  if (x.size() < 3) throw std::invalid_argument("pearson: need at least 3 points");
  const Eigen::VectorXd xc = x.array() - x.mean();
  const Eigen::VectorXd yc = y.array() - y.mean();
  const double sxx = xc.squaredNorm();
  const double syy = yc.squaredNorm();
  if (sxx == 0.0 || syy == 0.0) throw std::invalid_argument("pearson: zero variance input");
  return xc.dot(yc) / std::sqrt(sxx * syy);
}

double spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  return pearson(midranks(x).ranks, midranks(y).ranks);
}

double partial_correlation(double r_xy, double r_xz, double r_yz) {
  if (std::fabs(r_xz) >= 1.0 || std::fabs(r_yz) >= 1.0)
    throw std::invalid_argument("partial_correlation: control correlations must lie in (-1,1)");
  return (r_xy - r_xz * r_yz) / std::sqrt((1.0 - r_xz * r_xz) * (1.0 - r_yz * r_yz));
}

double correlation_p_value(double r, long long n) {
  if (n < 3) throw std::invalid_argument("correlation_p_value: need n >= 3");
  const double r2 = r * r;
  if (r2 >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r2));
  return t_two_sided_p(t, static_cast<int>(n - 2));
}

std::string pairwise_matrix_to_csv(const PairwiseMatrix& matrix) {
  std::string out = "label";
  for (const auto& label : matrix.labels) {
    out += ',';
    out += csv_field(label);
  }
  out += '\n';
  for (size_t i = 0; i < matrix.size(); ++i) {
    out += csv_field(matrix.labels[i]);
    for (size_t j = 0; j < matrix.size(); ++j) {
      out += ',';
      if (i != j) out += format_stat(matrix.statistic(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string nonsignificant_edges_to_csv(const PairwiseMatrix& matrix) {
  std::string out = "a,b\n";
  for (size_t i = 0; i < matrix.size(); ++i) {
    for (size_t j = i + 1; j < matrix.size(); ++j) {
      if (!matrix.significant(i, j)) {
        out += csv_field(matrix.labels[i]);
        out += ',';
        out += csv_field(matrix.labels[j]);
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace i3kit
