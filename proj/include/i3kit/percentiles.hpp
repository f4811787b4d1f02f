#pragma once

#include <string>
#include <vector>

#include "i3kit/config.hpp"
#include "i3kit/corpus.hpp"

namespace i3kit {

/// Per-paper citation percentile and rank-class weight, both relative to the
/// paper's own reference set.
struct PercentileAssignment {
  std::string paper_id;
  ReferenceSetKey refset;
  Rational percentile;     // exact, strictly inside (0, 100)
  long long class_weight = 0;
};

/// Counting-rule percentile 100 * (q + adjustment) / N where q is the number
/// of reference-set items the paper outranks:
///   highest      q = #{j != self : c_j <= c}   (ties share the top value)
///   strict_lower q = #{j : c_j < c}            (ties share the bottom value)
/// The citation count must be a member of the set (self included in N).
Rational percentile_of(long long citations, const ReferenceSet& refset, TiePolicy policy,
                       const Rational& adjustment);

/// Weight of the first class whose threshold <= percentile (thresholds are
/// inclusive: 99.0 lands in the top-1% class), else the catch-all weight.
long long rank_class_of(const Rational& percentile, const RankClassScheme& scheme);

/// Scores every citable record against its own reference set. Output is
/// sorted by paper_id; results are byte-identical for any thread count.
std::vector<PercentileAssignment> assign_all(const Corpus& corpus, const GroupingConfig& config,
                                             int threads = 1);

/// CSV export: paper_id,refset_doc_type,refset_year,percentile,class_weight
/// with the percentile printed to one decimal, rounding half up.
std::string assignments_to_csv(const std::vector<PercentileAssignment>& assignments);

}  // namespace i3kit
