#pragma once

#include <string>
#include <vector>

#include "i3kit/corpus.hpp"
#include "i3kit/prng.hpp"

namespace i3kit::testing {

inline PaperRecord make_record(std::string id, std::string journal, int year, DocType type,
                               long long citations, std::vector<std::string> countries = {}) {
  PaperRecord r;
  r.id = std::move(id);
  r.journal = std::move(journal);
  r.year = year;
  r.doc_type = type;
  r.citations = citations;
  r.countries = std::move(countries);
  return r;
}

/// Five-paper fixture: one article-2007 reference set {0,1,1,5,10}.
inline Corpus five_paper_corpus() {
  std::vector<PaperRecord> records;
  const long long counts[] = {0, 1, 1, 5, 10};
  for (int i = 0; i < 5; ++i)
    records.push_back(make_record("f" + std::to_string(i + 1), "J", 2007, DocType::article,
                                  counts[i]));
  return make_corpus(std::move(records));
}

/// Randomized small corpus for property suites: up to max_papers citable
/// records over a handful of journals, years, doc types and country tokens.
inline Corpus random_corpus(SplitMix64& rng, size_t max_papers = 200, size_t max_countries = 8) {
  const size_t n = 1 + rng.next_below(max_papers);
  static const DocType kTypes[] = {DocType::article, DocType::proceedings_paper, DocType::review,
                                   DocType::letter};
  std::vector<PaperRecord> records;
  records.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    PaperRecord r;
    r.id = "p" + std::to_string(i);
    r.journal = "J" + std::to_string(rng.next_below(6));
    r.year = 2005 + static_cast<int>(rng.next_below(4));
    r.doc_type = kTypes[rng.next_below(4)];
    r.citations = static_cast<long long>(rng.next_below(40));
    const size_t tokens = rng.next_below(4);  // 0..3 address tokens
    for (size_t t = 0; t < tokens; ++t)
      r.countries.push_back("C" + std::to_string(rng.next_below(max_countries)));
    records.push_back(std::move(r));
  }
  return make_corpus(std::move(records));
}

/// Deterministic two-journal corpus with the Figure-1 shape: journal A is
/// small with a high-citation profile, journal B is large with a heavy
/// moderately-cited tail (and a thin top segment), all in one reference set.
inline Corpus inversion_corpus() {
  std::vector<PaperRecord> records;
  SplitMix64 rng(20070217);
  int id = 0;
  auto add = [&](const std::string& journal, long long citations) {
    records.push_back(make_record("p" + std::to_string(id++), journal, 2007, DocType::article,
                                  citations));
  };
  for (int i = 0; i < 66; ++i) add("A", 60 + static_cast<long long>(rng.next_below(60)));
  for (int i = 0; i < 25; ++i) add("B", 55 + static_cast<long long>(rng.next_below(70)));
  for (int i = 0; i < 350; ++i) add("B", 2 + static_cast<long long>(rng.next_below(45)));
  return make_corpus(std::move(records));
}

/// Large synthetic corpus as CSV text: `journals` journals with skewed
/// sizes, `countries` country tokens, years 2007-2008, four citable types
/// plus a sprinkle of doc_type=other and address-less records.
std::string scale_corpus_csv(size_t n_records, size_t journals, size_t countries, uint64_t seed);

}  // namespace i3kit::testing
