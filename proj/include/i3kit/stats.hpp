#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace i3kit {

enum class SignificanceMark { plus_plus, plus, none, minus, minus_minus, unreliable };

std::string to_string(SignificanceMark mark);

/// Chi-square standardized residual of one observed/expected cell.
/// expected < 5 is reported as unreliable and carries no z value.
struct ZTestOutcome {
  double observed = 0.0;
  double expected = 0.0;
  std::optional<double> z;
  SignificanceMark mark = SignificanceMark::none;
};

/// z = (observed - expected) / sqrt(expected). Marks use two-sided critical
/// values derived from the alpha pair (defaults 0.05 / 0.01 -> 1.96 / 2.576).
/// The z scales with sqrt of the measurement unit, so observed and expected
/// must share one fixed unit; group testing uses raw I3 sums, never shares.
ZTestOutcome z_residual(double observed, double expected,
                        std::pair<double, double> alphas = {0.05, 0.01});

/// Mid-ranks (ties averaged) of the pooled sample plus the tie term
/// sum(t^3 - t) over tie groups.
struct RankInfo {
  Eigen::VectorXd ranks;
  double tie_sum = 0.0;
};
RankInfo midranks(const Eigen::Ref<const Eigen::VectorXd>& pooled);

struct KruskalWallisResult {
  double h = 0.0;
  int df = 0;
  double p = 1.0;
};

/// Tie-corrected Kruskal-Wallis H with a chi-square p-value (df = k-1).
/// A fully tied pool degenerates to H = 0, p = 1.
KruskalWallisResult kruskal_wallis(const std::vector<Eigen::VectorXd>& groups);

enum class PairwiseMethod { dunn, mann_whitney };

/// All-pairs test outcomes over k labelled groups. statistic(i,j) holds the
/// signed z of i vs j (antisymmetric); significant is symmetric with a false
/// diagonal. per_comparison_alpha = family_alpha / (k(k-1)/2).
struct PairwiseMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd statistic;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> significant;
  double family_alpha = 0.05;
  double per_comparison_alpha = 0.05;
  PairwiseMethod method = PairwiseMethod::dunn;

  size_t size() const { return labels.size(); }
};

/// Dunn's multiple comparisons: z from mid-ranks pooled over ALL groups with
/// tie-corrected variance; Bonferroni-style family-wise correction.
PairwiseMatrix dunn_pairwise(const std::vector<std::string>& labels,
                             const std::vector<Eigen::VectorXd>& groups, double family_alpha);

struct MannWhitneyResult {
  double u = 0.0;  // min(U_a, U_b)
  double z = 0.0;
  double p = 1.0;
  bool significant = false;
};

/// Normal approximation with tie-corrected variance. Continuity correction
/// is off by default, which keeps z^2 == Kruskal-Wallis H exact for two
/// groups; pass continuity_correction = true to shrink |U - mean| by 0.5.
MannWhitneyResult mann_whitney(const Eigen::Ref<const Eigen::VectorXd>& a,
                               const Eigen::Ref<const Eigen::VectorXd>& b, double alpha = 0.05,
                               bool continuity_correction = false);

double pearson(const Eigen::Ref<const Eigen::VectorXd>& x,
               const Eigen::Ref<const Eigen::VectorXd>& y);

/// Spearman's rho: Pearson on tie-averaged mid-ranks.
double spearman(const Eigen::Ref<const Eigen::VectorXd>& x,
                const Eigen::Ref<const Eigen::VectorXd>& y);

/// First-order partial correlation of x,y given z.
double partial_correlation(double r_xy, double r_xz, double r_yz);

/// Two-sided p for a correlation coefficient via t = r sqrt((n-2)/(1-r^2)).
double correlation_p_value(double r, long long n);

/// Full symmetric CSV (labels as the first row/column, z values at six
/// decimals, blank diagonal).
std::string pairwise_matrix_to_csv(const PairwiseMatrix& matrix);

/// Edge list of NOT-significantly-different pairs: `a,b` per line, i < j in
/// label order. This is the homogeneity relation the graph module consumes.
std::string nonsignificant_edges_to_csv(const PairwiseMatrix& matrix);

}  // namespace i3kit
