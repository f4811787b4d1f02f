#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "i3kit/config.hpp"
#include "i3kit/rational.hpp"

namespace i3kit {

enum class DocType { article, proceedings_paper, review, letter, other };

std::string to_string(DocType type);
bool doc_type_from_string(const std::string& name, DocType& out);

/// One citable (or excluded) item as parsed from the input file.
struct PaperRecord {
  std::string id;
  std::string journal;
  int year = 0;
  DocType doc_type = DocType::other;
  long long citations = 0;
  std::vector<std::string> countries;  // ordered byline tokens, may repeat

  bool is_citable() const { return doc_type != DocType::other; }
  bool has_address() const { return !countries.empty(); }
};

struct ReferenceSetKey {
  DocType doc_type = DocType::article;
  int year = 0;
  auto operator<=>(const ReferenceSetKey&) const = default;
};

/// Citation counts of all citable items sharing a document type and
/// publication year; kept sorted so percentile counting is a binary search.
struct ReferenceSet {
  ReferenceSetKey key;
  std::vector<long long> citation_counts;  // ascending
  size_t size() const { return citation_counts.size(); }
};

enum class CorpusFormat { csv, jsonl };

struct ValidationReport {
  size_t total_records = 0;
  size_t citable_records = 0;
  size_t records_without_address = 0;
  std::map<DocType, size_t> by_doc_type;
  std::map<int, size_t> by_year;
  std::vector<std::string> warnings;

  /// 100 * records_with_address / total, exact.
  Rational address_coverage_percent() const;
};

struct Corpus {
  std::vector<PaperRecord> records;                  // input order
  std::unordered_map<std::string, size_t> by_id;     // id -> index
  ValidationReport report;

  const PaperRecord* find(const std::string& id) const;
};

struct LoadResult {
  Corpus corpus;
  std::vector<std::string> errors;  // "line N: ..." entries; empty on success
  bool ok() const { return errors.empty(); }
};

/// Parses CSV (header `id,journal,year,doc_type,citations,countries`,
/// RFC-4180 quoting, `;`-separated country tokens) or JSONL (one object per
/// line, `countries` an array of strings). All row errors are collected with
/// line numbers; a result with errors carries no records.
LoadResult load_corpus(std::istream& in, CorpusFormat format);
LoadResult load_corpus_file(const std::string& path, CorpusFormat format);

/// Builds a corpus from in-memory records (same invariants as the loaders).
/// Throws Error on duplicate ids or negative citation counts.
Corpus make_corpus(std::vector<PaperRecord> records);

/// Groups citable records by (doc_type, year). doc_type = other is excluded.
std::map<ReferenceSetKey, ReferenceSet> partition_reference_sets(const Corpus& corpus);

/// Fraction of credit per country token: occurrences / total tokens, exact.
/// Empty byline yields an empty map.
std::map<std::string, Rational> fractionate_countries(const PaperRecord& record);

/// Adds one row per configured aggregate (exact sum of member values,
/// missing members contribute zero). Member rows are left untouched; the
/// caller keeps aggregates out of closure sums. Throws if an aggregate name
/// collides with a raw country token present in `per_country`.
std::map<std::string, Rational> resolve_aggregates(
    const GroupingConfig& config, const std::map<std::string, Rational>& per_country);

}  // namespace i3kit
