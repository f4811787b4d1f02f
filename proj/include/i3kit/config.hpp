#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "i3kit/rational.hpp"

namespace i3kit {

/// Data or configuration problem surfaced to the CLI as exit code 2.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TiePolicy {
  highest,       // q counts items <= c, self excluded
  strict_lower,  // q counts items strictly below c
};

std::string to_string(TiePolicy policy);
TiePolicy tie_policy_from_string(const std::string& name);

/// Ordered percentile thresholds with integer weights, plus a catch-all
/// weight for everything below the last threshold. Default is the NSF
/// six-class scheme: top-1/5/10/25/50% weighted 6..2, bottom-50% weighted 1.
struct RankClassScheme {
  struct ClassBound {
    Rational threshold;  // percentile, exclusive range (0,100)
    long long weight = 0;
  };
  std::vector<ClassBound> classes;  // thresholds strictly descending
  long long catch_all_weight = 1;

  static RankClassScheme nsf_six_classes();
  long long max_weight() const;
  void validate() const;  // throws Error on malformed schemes
};

struct GroupingConfig {
  std::map<std::string, std::vector<std::string>> aggregates;
  TiePolicy tie_policy = TiePolicy::highest;
  Rational adjustment = Rational(9, 10);
  RankClassScheme scheme = RankClassScheme::nsf_six_classes();
  std::pair<double, double> alpha_levels = {0.05, 0.01};
  Rational min_share_percent = Rational(1);

  void validate() const;
};

/// Parses a GroupingConfig JSON document. Unknown keys are rejected.
/// Decimal-valued fields (adjustment, thresholds, min_share_percent) are
/// read exactly; they never round-trip through binary floating point.
GroupingConfig load_grouping_config(const std::string& json_text);
GroupingConfig load_grouping_config_file(const std::string& path);

}  // namespace i3kit
