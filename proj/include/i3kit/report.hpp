#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "i3kit/corpus.hpp"
#include "i3kit/indicators.hpp"
#include "i3kit/percentiles.hpp"
#include "i3kit/simgraph.hpp"
#include "i3kit/stats.hpp"

namespace i3kit {

inline constexpr const char* kVersion = "0.1.0";

enum class GroupBy { journal, country, both };
GroupBy group_by_from_string(const std::string& name);
std::string to_string(GroupBy group_by);

struct SetTotals {
  Rational pubs;        // citable record count
  Rational i3;
  Rational i3_classed;
  Rational citations;
};

/// Everything one report run computes, before any file is written.
struct ReportBundle {
  std::string version = kVersion;
  std::string input_digest;
  std::string config_digest;
  uint64_t seed = 0;
  GroupBy group_by = GroupBy::both;
  GroupingConfig config;
  ValidationReport validation;
  SetTotals totals;
  std::vector<PercentileAssignment> assignments;
  std::vector<GroupSummary> journal_table;
  std::vector<GroupSummary> country_table;  // countries, aggregates, then "% accounted"
  bool has_pairwise = false;
  bool has_omnibus = false;
  bool has_regression = false;
  RegressionResult i3_vs_publications;  // over journals, x = n_papers, y = i3
  KruskalWallisResult omnibus;
  PairwiseMatrix pairwise;
  HomogeneityGraph graph;
  std::map<std::string, int> cores;
  LayoutResult layout;
  std::vector<std::string> warnings;
};

/// Scores the corpus and assembles every table and graph artifact. Pure:
/// identical inputs (and seed) give identical bundles for any thread count.
ReportBundle build_report(const Corpus& corpus, const GroupingConfig& config, GroupBy group_by,
                          uint64_t seed, int threads, int layout_iterations = 100);

/// Writes the bundle under out_dir (UTF-8, LF). Timestamps only with stamp.
void write_report_files(const ReportBundle& bundle, const std::string& out_dir, bool stamp);

std::string group_table_to_csv(const std::vector<GroupSummary>& rows);
std::string group_table_to_markdown(const std::vector<GroupSummary>& rows);
std::string group_table_to_json(const std::vector<GroupSummary>& rows);

struct ReportOptions {
  std::string input_path;
  CorpusFormat format = CorpusFormat::csv;
  std::string config_path;  // empty: defaults
  GroupBy group_by = GroupBy::both;
  std::string out_dir;
  uint64_t seed = 0;
  int threads = 1;
  std::optional<std::string> min_share_override;  // decimal text, parsed exactly
  bool stamp = false;
  int layout_iterations = 100;
};

// Command entry points; the binary is a thin flag parser over these.
// Exit codes: 0 ok, 1 runtime failure, 2 input/validation error.
int cmd_validate(const std::string& input_path, CorpusFormat format,
                 const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err);
int cmd_compare(const std::string& input_path, CorpusFormat format,
                const std::string& config_path, const std::vector<std::string>& units,
                std::ostream& out, std::ostream& err);

}  // namespace i3kit
