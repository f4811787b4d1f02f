#include "i3kit/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "i3kit/parallel.hpp"
#include "i3kit/text.hpp"

namespace i3kit {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string format_double(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, v);
  return buf;
}

struct RenderedRow {
  std::vector<std::string> cells;  // aligned with kColumns
};

struct Column {
  const char* name;
  bool numeric;
};

const std::vector<Column>& table_columns() {
  static const std::vector<Column> columns = {
      {"group", false},
      {"n_papers", true},
      {"i3", true},
      {"share_i3_pct", true},
      {"ratio_i3", true},
      {"mark_i3", false},
      {"i3_classed", true},
      {"share_classed_pct", true},
      {"ratio_classed", true},
      {"mark_classed", false},
      {"mean_percentile", true},
      {"sem_percentile", true},
      {"median_percentile", true},
      {"mean_class", true},
      {"sem_class", true},
      {"median_class", true},
      {"total_citations", true},
      {"citations_per_paper", true},
      {"share_pubs_pct", true},
      {"is_aggregate", false},
  };
  return columns;
}

/// Single source for every display number: CSV, JSON and Markdown all reuse
/// these strings so the three formats parse to identical values.
RenderedRow render_row(const GroupSummary& s) {
  RenderedRow row;
  row.cells = {
      s.group,
      s.n_papers.to_auto_string(2),
      s.i3.to_decimal_string(1),
      s.share_i3_percent.to_decimal_string(2),
      s.ratio_i3.to_decimal_string(2),
      s.mark_i3,
      s.i3_classed.to_decimal_string(1),
      s.share_classed_percent.to_decimal_string(2),
      s.ratio_classed.to_decimal_string(2),
      s.mark_classed,
      s.mean_percentile.to_decimal_string(2),
      format_double(s.sem_percentile, 2),
      s.median_percentile.to_decimal_string(2),
      s.mean_class.to_decimal_string(2),
      format_double(s.sem_class, 2),
      s.median_class.to_decimal_string(2),
      s.total_citations.to_auto_string(2),
      s.citations_per_paper.to_decimal_string(2),
      s.share_pubs_percent.to_decimal_string(2),
      s.is_aggregate ? "true" : "false",
  };
  return row;
}

std::string markdown_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += "\\|";
    else out.push_back(c);
  }
  return out;
}

/// Canonical ordering everywhere: descending i3, ties by label.
void sort_canonical(std::vector<GroupSummary>& rows) {
  std::sort(rows.begin(), rows.end(), [](const GroupSummary& a, const GroupSummary& b) {
    int cmp = Rational::compare(a.i3, b.i3);
    if (cmp != 0) return cmp > 0;
    return a.group < b.group;
  });
}

void fill_shares(GroupSummary& row, const SetTotals& totals,
                 const std::pair<double, double>& alphas) {
  row.share_i3_percent = share_of_total(row.i3, totals.i3);
  row.share_classed_percent = share_of_total(row.i3_classed, totals.i3_classed);
  row.share_pubs_percent = share_of_total(row.n_papers, totals.pubs);
  auto expected_i3 = observed_vs_expected(row.i3, row.n_papers, totals.i3, totals.pubs);
  row.expected_i3 = expected_i3.expected;
  row.ratio_i3 = expected_i3.ratio;
  auto expected_classed =
      observed_vs_expected(row.i3_classed, row.n_papers, totals.i3_classed, totals.pubs);
  row.expected_classed = expected_classed.expected;
  row.ratio_classed = expected_classed.ratio;
  row.mark_i3 =
      to_string(z_residual(row.i3.to_double(), row.expected_i3.to_double(), alphas).mark);
  row.mark_classed =
      to_string(z_residual(row.i3_classed.to_double(), row.expected_classed.to_double(), alphas).mark);
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct LoadedInputs {
  Corpus corpus;
  GroupingConfig config;
  std::string input_digest;
  std::string config_digest;
};

/// Shared front half of every command: config, corpus, digests.
/// Throws Error for validation problems (exit code 2 at the CLI).
LoadedInputs load_inputs(const std::string& input_path, CorpusFormat format,
                         const std::string& config_path, std::ostream& err) {
  LoadedInputs loaded;
  if (config_path.empty()) {
    loaded.config = GroupingConfig{};
    loaded.config.validate();
    loaded.config_digest = fnv1a_hex("default");
  } else {
    std::string config_bytes = read_file_bytes(config_path);
    loaded.config = load_grouping_config(config_bytes);
    loaded.config_digest = fnv1a_hex(config_bytes);
  }

  std::string input_bytes = read_file_bytes(input_path);
  loaded.input_digest = fnv1a_hex(input_bytes);
  std::istringstream stream(input_bytes);
  LoadResult result = load_corpus(stream, format);
  if (!result.ok()) {
    for (const auto& e : result.errors) err << "error: " << e << "\n";
    throw Error("input contains " + std::to_string(result.errors.size()) + " error(s)");
  }
  loaded.corpus = std::move(result.corpus);
  return loaded;
}

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

GroupBy group_by_from_string(const std::string& name) {
  if (name == "journal") return GroupBy::journal;
  if (name == "country") return GroupBy::country;
  if (name == "both") return GroupBy::both;
  throw Error("unknown group-by '" + name + "' (expected journal|country|both)");
}

std::string to_string(GroupBy group_by) {
  switch (group_by) {
    case GroupBy::journal: return "journal";
    case GroupBy::country: return "country";
    case GroupBy::both: return "both";
  }
  return "both";
}

ReportBundle build_report(const Corpus& corpus, const GroupingConfig& config, GroupBy group_by,
                          uint64_t seed, int threads, int layout_iterations) {
  if (corpus.report.citable_records == 0) throw Error("empty citable set");

  ReportBundle bundle;
  bundle.seed = seed;
  bundle.group_by = group_by;
  bundle.config = config;
  bundle.validation = corpus.report;
  bundle.warnings = corpus.report.warnings;
  bundle.assignments = assign_all(corpus, config, threads);

  // set totals over all citable records (weight 1)
  {
    RationalSum i3_sum, classed_sum, citation_sum;
    for (const auto& a : bundle.assignments) {
      i3_sum.add(a.percentile);
      classed_sum.add(Rational(a.class_weight));
      const PaperRecord* record = corpus.find(a.paper_id);
      citation_sum.add(Rational(record->citations));
    }
    bundle.totals.pubs = Rational(static_cast<long long>(bundle.assignments.size()));
    bundle.totals.i3 = i3_sum.total();
    bundle.totals.i3_classed = classed_sum.total();
    bundle.totals.citations = citation_sum.total();
  }

  // journal groups are always computed: the pairwise matrix and graph are
  // journal-based regardless of the table selection
  std::map<std::string, std::vector<WeightedItem>> journal_items;
  std::map<std::string, std::vector<double>> journal_citations;
  std::map<std::string, std::vector<WeightedItem>> country_items;
  std::vector<WeightedItem> accounted_items;

  for (const auto& a : bundle.assignments) {
    const PaperRecord* record = corpus.find(a.paper_id);
    WeightedItem item{a.percentile, a.class_weight, record->citations, Rational(1)};
    journal_items[record->journal].push_back(item);
    journal_citations[record->journal].push_back(static_cast<double>(record->citations));
    if (group_by != GroupBy::journal) {
      if (record->has_address()) {
        accounted_items.push_back(item);
        for (const auto& [country, fraction] : fractionate_countries(*record)) {
          WeightedItem weighted = item;
          weighted.weight = fraction;
          country_items[country].push_back(std::move(weighted));
        }
      }
    }
  }

  const auto alphas = config.alpha_levels;
  auto summarize_table = [&](const std::map<std::string, std::vector<WeightedItem>>& groups) {
    std::vector<const std::string*> labels;
    std::vector<const std::vector<WeightedItem>*> items;
    for (const auto& [label, group] : groups) {
      labels.push_back(&label);
      items.push_back(&group);
    }
    std::vector<GroupSummary> rows(labels.size());
    parallel_for(labels.size(), threads,
                 [&](size_t i) { rows[i] = summarize_group(*labels[i], *items[i]); });
    for (auto& row : rows) fill_shares(row, bundle.totals, alphas);
    return rows;
  };

  std::vector<GroupSummary> journal_rows = summarize_table(journal_items);
  sort_canonical(journal_rows);
  if (group_by != GroupBy::country) bundle.journal_table = journal_rows;

  if (group_by != GroupBy::journal) {
    for (const auto& [name, members] : config.aggregates) {
      if (country_items.count(name))
        throw Error("aggregate name '" + name + "' collides with a country token");
    }
    std::vector<GroupSummary> rows = summarize_table(country_items);

    // aggregates: union of member items, in config member order
    std::vector<GroupSummary> aggregate_rows;
    for (const auto& [name, members] : config.aggregates) {
      std::vector<WeightedItem> union_items;
      for (const auto& member : members) {
        auto it = country_items.find(member);
        if (it != country_items.end())
          union_items.insert(union_items.end(), it->second.begin(), it->second.end());
      }
      GroupSummary row = summarize_group(name, union_items);
      row.is_aggregate = true;
      if (!row.n_papers.is_zero()) fill_shares(row, bundle.totals, alphas);
      aggregate_rows.push_back(std::move(row));
    }
    rows.insert(rows.end(), aggregate_rows.begin(), aggregate_rows.end());

    // threshold on the I3 share (Table-7 style "players with at least x%")
    const Rational& min_share = config.min_share_percent;
    std::vector<GroupSummary> kept;
    for (auto& row : rows) {
      if (row.n_papers.is_zero()) continue;
      if (row.share_i3_percent >= min_share) kept.push_back(std::move(row));
    }
    sort_canonical(kept);

    GroupSummary accounted = summarize_group("% accounted", accounted_items);
    accounted.is_aggregate = true;
    if (!accounted.n_papers.is_zero()) fill_shares(accounted, bundle.totals, alphas);
    kept.push_back(std::move(accounted));
    bundle.country_table = kept;
  }

  // pairwise tests + homogeneity graph over journals, canonical order
  std::vector<std::string> labels;
  std::vector<Eigen::VectorXd> groups;
  for (const auto& row : journal_rows) {
    const auto& citations = journal_citations.at(row.group);
    labels.push_back(row.group);
    groups.push_back(Eigen::Map<const Eigen::VectorXd>(citations.data(),
                                                       static_cast<Eigen::Index>(citations.size())));
  }
  if (labels.size() >= 2) {
    bundle.omnibus = kruskal_wallis(groups);
    bundle.has_omnibus = true;
    bundle.pairwise = dunn_pairwise(labels, groups, alphas.first);
    bundle.has_pairwise = true;

    Eigen::VectorXd pubs(static_cast<Eigen::Index>(journal_rows.size()));
    Eigen::VectorXd impact(static_cast<Eigen::Index>(journal_rows.size()));
    for (size_t i = 0; i < journal_rows.size(); ++i) {
      pubs[static_cast<Eigen::Index>(i)] = journal_rows[i].n_papers.to_double();
      impact[static_cast<Eigen::Index>(i)] = journal_rows[i].i3.to_double();
    }
    if (pubs.maxCoeff() > pubs.minCoeff()) {
      bundle.i3_vs_publications = linear_regression(pubs, impact);
      bundle.has_regression = true;
    }
  } else {
    bundle.pairwise.labels = labels;
    bundle.pairwise.statistic = Eigen::MatrixXd::Zero(labels.size(), labels.size());
    bundle.pairwise.significant.setConstant(labels.size(), labels.size(), false);
    bundle.pairwise.family_alpha = alphas.first;
    bundle.pairwise.per_comparison_alpha = alphas.first;
    bundle.has_pairwise = !labels.empty();
  }
  bundle.graph = build_graph(bundle.pairwise);
  bundle.cores = core_numbers(bundle.graph);
  bundle.layout = kamada_kawai_layout(bundle.graph, layout_iterations, seed);
  return bundle;
}

std::string group_table_to_csv(const std::vector<GroupSummary>& rows) {
  const auto& columns = table_columns();
  std::string out;
  for (size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += columns[c].name;
  }
  out += '\n';
  for (const auto& row : rows) {
    RenderedRow rendered = render_row(row);
    for (size_t c = 0; c < rendered.cells.size(); ++c) {
      if (c) out += ',';
      out += csv_field(rendered.cells[c]);
    }
    out += '\n';
  }
  return out;
}

std::string group_table_to_markdown(const std::vector<GroupSummary>& rows) {
  const auto& columns = table_columns();
  std::string out = "|";
  for (const auto& col : columns) out += std::string(" ") + col.name + " |";
  out += "\n|";
  for (const auto& col : columns) out += std::string(" ") + (col.numeric ? "---:" : "---") + " |";
  out += "\n";
  for (const auto& row : rows) {
    RenderedRow rendered = render_row(row);
    out += "|";
    for (const auto& cell : rendered.cells) out += " " + markdown_escape(cell) + " |";
    out += "\n";
  }
  return out;
}

std::string group_table_to_json(const std::vector<GroupSummary>& rows) {
  const auto& columns = table_columns();
  ordered_json table = ordered_json::array();
  for (const auto& row : rows) {
    RenderedRow rendered = render_row(row);
    ordered_json obj = ordered_json::object();
    for (size_t c = 0; c < columns.size(); ++c) {
      const std::string& cell = rendered.cells[c];
      const std::string name = columns[c].name;
      if (name == "is_aggregate") {
        obj[name] = cell == "true";
      } else if (columns[c].numeric) {
        obj[name] = ordered_json::parse(cell);  // reparse the rendered string
      } else {
        obj[name] = cell;
      }
    }
    table.push_back(std::move(obj));
  }
  return table.dump(2) + "\n";
}

void write_report_files(const ReportBundle& bundle, const std::string& out_dir, bool stamp) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create out dir '" + out_dir + "': " + ec.message());

  if (bundle.group_by != GroupBy::country) {
    write_text_file(dir / "journals.csv", group_table_to_csv(bundle.journal_table));
    write_text_file(dir / "journals.json", group_table_to_json(bundle.journal_table));
    write_text_file(dir / "journals.md", group_table_to_markdown(bundle.journal_table));
  }
  if (bundle.group_by != GroupBy::journal) {
    write_text_file(dir / "countries.csv", group_table_to_csv(bundle.country_table));
    write_text_file(dir / "countries.json", group_table_to_json(bundle.country_table));
    write_text_file(dir / "countries.md", group_table_to_markdown(bundle.country_table));
  }
  write_text_file(dir / "assignments.csv", assignments_to_csv(bundle.assignments));
  if (bundle.has_pairwise) {
    write_text_file(dir / "pairwise_z.csv", pairwise_matrix_to_csv(bundle.pairwise));
    write_text_file(dir / "homogeneity_edges.csv", nonsignificant_edges_to_csv(bundle.pairwise));
  }
  write_text_file(dir / "homogeneity.net", export_pajek(bundle.graph));
  write_text_file(dir / "homogeneity.dot", export_dot(bundle.graph));
  write_text_file(dir / "layout.csv", layout_to_csv(bundle.graph, bundle.layout));

  ordered_json run = ordered_json::object();
  run["version"] = bundle.version;
  run["input_digest"] = bundle.input_digest;
  run["config_digest"] = bundle.config_digest;
  run["seed"] = bundle.seed;
  run["group_by"] = to_string(bundle.group_by);
  run["min_share_percent"] = bundle.config.min_share_percent.to_decimal_string(2);
  run["records"] = bundle.validation.total_records;
  run["citable_records"] = bundle.validation.citable_records;
  run["set_i3"] = bundle.totals.i3.to_decimal_string(1);
  run["set_i3_classed"] = bundle.totals.i3_classed.to_decimal_string(1);
  if (bundle.has_omnibus) {
    run["kruskal_wallis"] = {{"h", bundle.omnibus.h},
                             {"df", bundle.omnibus.df},
                             {"p", bundle.omnibus.p}};
    run["per_comparison_alpha"] = bundle.pairwise.per_comparison_alpha;
  }
  if (bundle.has_regression) {
    run["i3_vs_publications"] = {{"slope", bundle.i3_vs_publications.slope},
                                 {"intercept", bundle.i3_vs_publications.intercept},
                                 {"r_squared", bundle.i3_vs_publications.r_squared}};
  }
  ordered_json cores = ordered_json::object();
  for (const auto& [label, core] : bundle.cores) cores[label] = core;
  run["core_numbers"] = std::move(cores);
  run["warnings"] = bundle.warnings;
  if (stamp) run["timestamp"] = iso8601_now();
  write_text_file(dir / "run.json", run.dump(2) + "\n");
}

int cmd_validate(const std::string& input_path, CorpusFormat format,
                 const std::string& config_path, std::ostream& out, std::ostream& err) {
  try {
    LoadedInputs loaded = load_inputs(input_path, format, config_path, err);
    const ValidationReport& report = loaded.corpus.report;
    out << "records: " << report.total_records << "\n";
    out << "citable: " << report.citable_records << "\n";
    for (const auto& [type, count] : report.by_doc_type)
      out << "doc_type " << to_string(type) << ": " << count << "\n";
    for (const auto& [year, count] : report.by_year)
      out << "year " << year << ": " << count << "\n";
    out << "records without country tokens: " << report.records_without_address << "\n";
    for (const auto& warning : report.warnings) out << "warning: " << warning << "\n";
    out << "0 errors\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
}

int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err) {
  try {
    LoadedInputs loaded = load_inputs(options.input_path, options.format, options.config_path, err);
    if (options.min_share_override) {
      loaded.config.min_share_percent = Rational::from_decimal_string(*options.min_share_override);
      loaded.config.validate();
    }
    ReportBundle bundle = build_report(loaded.corpus, loaded.config, options.group_by,
                                       options.seed, options.threads, options.layout_iterations);
    bundle.input_digest = loaded.input_digest;
    bundle.config_digest = loaded.config_digest;
    write_report_files(bundle, options.out_dir, options.stamp);
    out << "records: " << bundle.validation.total_records
        << ", citable: " << bundle.validation.citable_records << "\n";
    out << "set I3: " << bundle.totals.i3.to_decimal_string(1)
        << ", set I3(classed): " << bundle.totals.i3_classed.to_decimal_string(1) << "\n";
    if (!bundle.journal_table.empty())
      out << "journals: " << bundle.journal_table.size() << "\n";
    if (!bundle.country_table.empty())
      out << "country rows (incl. aggregates + accounted): " << bundle.country_table.size() << "\n";
    out << "report written to " << options.out_dir << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
}

int cmd_compare(const std::string& input_path, CorpusFormat format,
                const std::string& config_path, const std::vector<std::string>& units,
                std::ostream& out, std::ostream& err) {
  try {
    if (units.size() < 2) throw Error("compare needs at least 2 units");
    LoadedInputs loaded = load_inputs(input_path, format, config_path, err);

    std::map<std::string, std::vector<double>> citations;
    for (const PaperRecord& record : loaded.corpus.records) {
      if (!record.is_citable()) continue;
      citations[record.journal].push_back(static_cast<double>(record.citations));
    }
    std::vector<Eigen::VectorXd> groups;
    for (const auto& unit : units) {
      auto it = citations.find(unit);
      if (it == citations.end())
        throw Error("unknown unit label '" + unit + "'");
      groups.push_back(Eigen::Map<const Eigen::VectorXd>(
          it->second.data(), static_cast<Eigen::Index>(it->second.size())));
    }

    const double family_alpha = loaded.config.alpha_levels.first;
    KruskalWallisResult omnibus = kruskal_wallis(groups);
    char line[160];
    std::snprintf(line, sizeof(line), "Kruskal-Wallis: H = %.4f, df = %d, p = %.4g\n",
                  omnibus.h, omnibus.df, omnibus.p);
    out << line;

    const size_t k = units.size();
    const double per_alpha = family_alpha / (static_cast<double>(k) * (k - 1.0) / 2.0);
    std::snprintf(line, sizeof(line),
                  "comparisons: %zu, family alpha: %g, per-comparison alpha: %.6f\n",
                  k * (k - 1) / 2, family_alpha, per_alpha);
    out << line;

    if (k == 2) {
      MannWhitneyResult mw = mann_whitney(groups[0], groups[1], per_alpha);
      std::snprintf(line, sizeof(line), "Mann-Whitney: U = %.1f, z = %.4f, p = %.4g\n",
                    mw.u, mw.z, mw.p);
      out << line;
      out << (mw.significant ? "significant" : "not significant") << "\n";
    } else {
      PairwiseMatrix matrix = dunn_pairwise(units, groups, family_alpha);
      for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
          std::snprintf(line, sizeof(line), "z = %+.4f  %s\n", matrix.statistic(i, j),
                        matrix.significant(i, j) ? "significant" : "not significant");
          out << units[i] << " vs " << units[j] << ": " << line;
        }
      }
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace i3kit
