#include "i3kit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

namespace i3kit {

namespace {

constexpr size_t kMaxReportedErrors = 100;

std::string trim(std::string_view s) {
  size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

bool parse_int(std::string_view text, long long& out) {
  std::string t = trim(text);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string> split_countries(std::string_view field) {
  std::vector<std::string> tokens;
  size_t start = 0;
  while (start <= field.size()) {
    size_t sep = field.find(';', start);
    if (sep == std::string_view::npos) sep = field.size();
    std::string token = trim(field.substr(start, sep - start));
    if (!token.empty()) tokens.push_back(std::move(token));
    start = sep + 1;
  }
  return tokens;
}

struct RowError {
  size_t line;
  std::string message;
};

class ErrorSink {
 public:
  void add(size_t line, std::string message) {
    if (errors_.size() < kMaxReportedErrors)
      errors_.push_back("line " + std::to_string(line) + ": " + std::move(message));
    else
      ++suppressed_;
  }
  std::vector<std::string> finish() {
    if (suppressed_ > 0)
      errors_.push_back("(" + std::to_string(suppressed_) + " further errors suppressed)");
    return std::move(errors_);
  }
  bool empty() const { return errors_.empty(); }

 private:
  std::vector<std::string> errors_;
  size_t suppressed_ = 0;
};

// RFC-4180 row reader: quoted fields may contain commas, doubled quotes and
// line breaks. Returns false at end of input. `line` reports where the row
// started.
bool read_csv_row(std::istream& in, std::vector<std::string>& fields, size_t& line,
                  size_t& next_line, ErrorSink& errors) {
  fields.clear();
  int c = in.get();
  // skip blank lines between rows
  while (c == '\n' || c == '\r') {
    if (c == '\n') ++next_line;
    c = in.get();
  }
  if (c == EOF) return false;
  line = next_line;

  std::string field;
  bool in_quotes = false;
  bool quoted_field = false;
  while (true) {
    if (c == EOF) {
      fields.push_back(std::move(field));
      if (in_quotes) errors.add(line, "unterminated quoted field");
      return true;
    }
    char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        int peek = in.peek();
        if (peek == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++next_line;
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty() && !quoted_field) {
      in_quotes = true;
      quoted_field = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      quoted_field = false;
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && in.peek() == '\n') in.get();
      ++next_line;
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(ch);
    }
    c = in.get();
  }
}

bool build_record(const std::vector<std::string>& raw, size_t line, PaperRecord& record,
                  ErrorSink& errors) {
  bool ok = true;
  record.id = trim(raw[0]);
  if (record.id.empty()) {
    errors.add(line, "id: must not be empty");
    ok = false;
  }
  record.journal = trim(raw[1]);

  long long year = 0;
  if (!parse_int(raw[2], year)) {
    errors.add(line, "year: unparseable value '" + trim(raw[2]) + "'");
    ok = false;
  } else {
    record.year = static_cast<int>(year);
  }

  std::string type_name = trim(raw[3]);
  if (!doc_type_from_string(type_name, record.doc_type)) {
    errors.add(line, "doc_type: unknown value '" + type_name + "'");
    ok = false;
  }

  long long citations = 0;
  if (!parse_int(raw[4], citations)) {
    errors.add(line, "citations: unparseable value '" + trim(raw[4]) + "'");
    ok = false;
  } else if (citations < 0) {
    errors.add(line, "citations: negative value " + std::to_string(citations));
    ok = false;
  } else {
    record.citations = citations;
  }

  record.countries = split_countries(raw[5]);
  return ok;
}

void finalize(Corpus& corpus) {
  ValidationReport& report = corpus.report;
  report.total_records = corpus.records.size();
  for (const PaperRecord& r : corpus.records) {
    ++report.by_doc_type[r.doc_type];
    ++report.by_year[r.year];
    if (r.is_citable()) ++report.citable_records;
    if (!r.has_address()) ++report.records_without_address;
  }
  if (report.total_records > 0 && report.records_without_address > 0) {
    Rational coverage = report.address_coverage_percent();
    size_t with_address = report.total_records - report.records_without_address;
    report.warnings.push_back(
        "address coverage: " + coverage.to_decimal_string(2) + "% (" +
        std::to_string(with_address) + " of " + std::to_string(report.total_records) +
        " records carry country tokens)");
  }
  size_t other = report.by_doc_type.count(DocType::other) ? report.by_doc_type[DocType::other] : 0;
  if (other > 0) {
    report.warnings.push_back(
        std::to_string(other) + " record(s) with doc_type=other are excluded from citable analysis");
  }
}

LoadResult load_csv(std::istream& in) {
  LoadResult result;
  ErrorSink errors;
  std::vector<std::string> fields;
  size_t line = 0, next_line = 1;

  if (!read_csv_row(in, fields, line, next_line, errors)) {
    result.errors = {"line 1: missing header row"};
    return result;
  }
  const std::vector<std::string> expected = {"id",       "journal",   "year",
                                             "doc_type", "citations", "countries"};
  std::vector<std::string> header;
  header.reserve(fields.size());
  for (const auto& f : fields) header.push_back(trim(f));
  if (header != expected) {
    result.errors = {"line 1: header must be exactly 'id,journal,year,doc_type,citations,countries'"};
    return result;
  }

  std::unordered_map<std::string, size_t> first_line_of_id;
  while (read_csv_row(in, fields, line, next_line, errors)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    if (fields.size() != 6) {
      errors.add(line, "expected 6 fields, found " + std::to_string(fields.size()));
      continue;
    }
    PaperRecord record;
    if (!build_record(fields, line, record, errors)) continue;
    auto [it, inserted] = first_line_of_id.emplace(record.id, line);
    if (!inserted) {
      errors.add(line, "duplicate id '" + record.id + "' (first seen on line " +
                           std::to_string(it->second) + ")");
      continue;
    }
    result.corpus.by_id.emplace(record.id, result.corpus.records.size());
    result.corpus.records.push_back(std::move(record));
  }

  result.errors = errors.finish();
  if (!result.ok()) {
    result.corpus = Corpus{};
    return result;
  }
  finalize(result.corpus);
  return result;
}

LoadResult load_jsonl(std::istream& in) {
  using nlohmann::json;
  LoadResult result;
  ErrorSink errors;
  std::string line_text;
  size_t line = 0;
  std::unordered_map<std::string, size_t> first_line_of_id;

  while (std::getline(in, line_text)) {
    ++line;
    if (!line_text.empty() && line_text.back() == '\r') line_text.pop_back();
    if (trim(line_text).empty()) continue;
    json obj;
    try {
      obj = json::parse(line_text);
    } catch (const json::parse_error& e) {
      errors.add(line, std::string("invalid JSON: ") + e.what());
      continue;
    }
    if (!obj.is_object()) {
      errors.add(line, "each line must hold a JSON object");
      continue;
    }
    bool ok = true;
    auto require = [&](const char* key, bool (json::*pred)() const) -> const json* {
      if (!obj.contains(key)) {
        errors.add(line, std::string(key) + ": missing");
        ok = false;
        return nullptr;
      }
      const json& v = obj[key];
      if (!(v.*pred)()) {
        errors.add(line, std::string(key) + ": wrong type");
        ok = false;
        return nullptr;
      }
      return &v;
    };

    PaperRecord record;
    if (const json* v = require("id", &json::is_string)) record.id = v->get<std::string>();
    if (const json* v = require("journal", &json::is_string)) record.journal = v->get<std::string>();
    if (const json* v = require("year", &json::is_number_integer)) record.year = v->get<int>();
    if (const json* v = require("doc_type", &json::is_string)) {
      if (!doc_type_from_string(v->get<std::string>(), record.doc_type)) {
        errors.add(line, "doc_type: unknown value '" + v->get<std::string>() + "'");
        ok = false;
      }
    }
    if (const json* v = require("citations", &json::is_number_integer)) {
      long long citations = v->get<long long>();
      if (citations < 0) {
        errors.add(line, "citations: negative value " + std::to_string(citations));
        ok = false;
      } else {
        record.citations = citations;
      }
    }
    if (const json* v = require("countries", &json::is_array)) {
      for (const auto& token : *v) {
        if (!token.is_string()) {
          errors.add(line, "countries: entries must be strings");
          ok = false;
          break;
        }
        std::string t = trim(token.get<std::string>());
        if (!t.empty()) record.countries.push_back(std::move(t));
      }
    }
    if (!ok) continue;
    if (record.id.empty()) {
      errors.add(line, "id: must not be empty");
      continue;
    }
    auto [it, inserted] = first_line_of_id.emplace(record.id, line);
    if (!inserted) {
      errors.add(line, "duplicate id '" + record.id + "' (first seen on line " +
                           std::to_string(it->second) + ")");
      continue;
    }
    result.corpus.by_id.emplace(record.id, result.corpus.records.size());
    result.corpus.records.push_back(std::move(record));
  }

  result.errors = errors.finish();
  if (!result.ok()) {
    result.corpus = Corpus{};
    return result;
  }
  finalize(result.corpus);
  return result;
}

}  // namespace

std::string to_string(DocType type) {
  switch (type) {
    case DocType::article: return "article";
    case DocType::proceedings_paper: return "proceedings_paper";
    case DocType::review: return "review";
    case DocType::letter: return "letter";
    case DocType::other: return "other";
  }
  return "other";
}

bool doc_type_from_string(const std::string& name, DocType& out) {
  if (name == "article") out = DocType::article;
  else if (name == "proceedings_paper") out = DocType::proceedings_paper;
  else if (name == "review") out = DocType::review;
  else if (name == "letter") out = DocType::letter;
  else if (name == "other") out = DocType::other;
  else return false;
  return true;
}

Rational ValidationReport::address_coverage_percent() const {
  if (total_records == 0) return Rational(0);
  return Rational(100) *
         Rational(static_cast<long long>(total_records - records_without_address),
                  static_cast<long long>(total_records));
}

const PaperRecord* Corpus::find(const std::string& id) const {
  auto it = by_id.find(id);
  return it == by_id.end() ? nullptr : &records[it->second];
}

LoadResult load_corpus(std::istream& in, CorpusFormat format) {
  return format == CorpusFormat::csv ? load_csv(in) : load_jsonl(in);
}

LoadResult load_corpus_file(const std::string& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    LoadResult result;
    result.errors = {"cannot open '" + path + "'"};
    return result;
  }
  return load_corpus(in, format);
}

Corpus make_corpus(std::vector<PaperRecord> records) {
  Corpus corpus;
  corpus.records = std::move(records);
  for (size_t i = 0; i < corpus.records.size(); ++i) {
    const PaperRecord& r = corpus.records[i];
    if (r.id.empty()) throw Error("record " + std::to_string(i) + ": empty id");
    if (r.citations < 0) throw Error("record '" + r.id + "': negative citations");
    auto [it, inserted] = corpus.by_id.emplace(r.id, i);
    if (!inserted) throw Error("duplicate id '" + r.id + "'");
  }
  finalize(corpus);
  return corpus;
}

std::map<ReferenceSetKey, ReferenceSet> partition_reference_sets(const Corpus& corpus) {
  std::map<ReferenceSetKey, ReferenceSet> sets;
  for (const PaperRecord& r : corpus.records) {
    if (!r.is_citable()) continue;
    ReferenceSetKey key{r.doc_type, r.year};
    ReferenceSet& set = sets[key];
    set.key = key;
    set.citation_counts.push_back(r.citations);
  }
  for (auto& [key, set] : sets)
    std::sort(set.citation_counts.begin(), set.citation_counts.end());
  return sets;
}

std::map<std::string, Rational> fractionate_countries(const PaperRecord& record) {
  std::map<std::string, Rational> fractions;
  if (record.countries.empty()) return fractions;
  const long long total = static_cast<long long>(record.countries.size());
  std::map<std::string, long long> counts;
  for (const std::string& token : record.countries) ++counts[token];
  for (const auto& [token, count] : counts) fractions.emplace(token, Rational(count, total));
  return fractions;
}

std::map<std::string, Rational> resolve_aggregates(
    const GroupingConfig& config, const std::map<std::string, Rational>& per_country) {
  std::map<std::string, Rational> out = per_country;
  for (const auto& [name, members] : config.aggregates) {
    if (per_country.count(name))
      throw Error("aggregate name '" + name + "' collides with a country token");
    Rational sum(0);
    for (const std::string& member : members) {
      auto it = per_country.find(member);
      if (it != per_country.end()) sum += it->second;
    }
    out[name] = std::move(sum);
  }
  return out;
}

}  // namespace i3kit
