#include "i3kit/percentiles.hpp"

#include <algorithm>
#include <stdexcept>

#include "i3kit/parallel.hpp"
#include "i3kit/text.hpp"

namespace i3kit {

Rational percentile_of(long long citations, const ReferenceSet& refset, TiePolicy policy,
                       const Rational& adjustment) {
  const auto& counts = refset.citation_counts;
  if (counts.empty()) throw std::invalid_argument("percentile_of: empty reference set");

  auto lower = std::lower_bound(counts.begin(), counts.end(), citations);
  auto upper = std::upper_bound(lower, counts.end(), citations);
  if (lower == upper)
    throw std::invalid_argument("percentile_of: citation count is not a member of the set");

  long long q;
  if (policy == TiePolicy::highest) {
    // items <= c, excluding the paper itself
    q = static_cast<long long>(upper - counts.begin()) - 1;
  } else {
    q = static_cast<long long>(lower - counts.begin());
  }
  const long long n = static_cast<long long>(counts.size());
  return Rational(100) * (Rational(q) + adjustment) / Rational(n);
}

long long rank_class_of(const Rational& percentile, const RankClassScheme& scheme) {
  for (const auto& bound : scheme.classes) {
    if (percentile >= bound.threshold) return bound.weight;
  }
  return scheme.catch_all_weight;
}

std::vector<PercentileAssignment> assign_all(const Corpus& corpus, const GroupingConfig& config,
                                             int threads) {
  auto sets = partition_reference_sets(corpus);
  std::vector<const ReferenceSet*> set_ptrs;
  std::map<ReferenceSetKey, size_t> set_index;
  for (const auto& [key, set] : sets) {
    set_index.emplace(key, set_ptrs.size());
    set_ptrs.push_back(&set);
  }

  // bucket citable records per reference set so sets can run independently
  std::vector<std::vector<const PaperRecord*>> members(set_ptrs.size());
  for (const PaperRecord& record : corpus.records) {
    if (!record.is_citable()) continue;
    members[set_index.at(ReferenceSetKey{record.doc_type, record.year})].push_back(&record);
  }

  std::vector<std::vector<PercentileAssignment>> scored(set_ptrs.size());
  parallel_for(set_ptrs.size(), threads, [&](size_t s) {
    const ReferenceSet& set = *set_ptrs[s];
    auto& out = scored[s];
    out.reserve(members[s].size());
    for (const PaperRecord* record : members[s]) {
      PercentileAssignment a;
      a.paper_id = record->id;
      a.refset = set.key;
      a.percentile = percentile_of(record->citations, set, config.tie_policy, config.adjustment);
      a.class_weight = rank_class_of(a.percentile, config.scheme);
      out.push_back(std::move(a));
    }
  });

  std::vector<PercentileAssignment> assignments;
  assignments.reserve(corpus.report.citable_records);
  for (auto& bucket : scored)
    for (auto& a : bucket) assignments.push_back(std::move(a));
  std::sort(assignments.begin(), assignments.end(),
            [](const PercentileAssignment& a, const PercentileAssignment& b) {
              return a.paper_id < b.paper_id;
            });
  return assignments;
}

std::string assignments_to_csv(const std::vector<PercentileAssignment>& assignments) {
  std::string out = "paper_id,refset_doc_type,refset_year,percentile,class_weight\n";
  for (const auto& a : assignments) {
    out += csv_field(a.paper_id);
    out += ',';
    out += to_string(a.refset.doc_type);
    out += ',';
    out += std::to_string(a.refset.year);
    out += ',';
    out += a.percentile.to_decimal_string(1);
    out += ',';
    out += std::to_string(a.class_weight);
    out += '\n';
  }
  return out;
}

}  // namespace i3kit
