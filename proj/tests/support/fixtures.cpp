#include "support/fixtures.hpp"

namespace i3kit::testing {

std::string scale_corpus_csv(size_t n_records, size_t journals, size_t countries, uint64_t seed) {
  SplitMix64 rng(seed);
  std::string csv = "id,journal,year,doc_type,citations,countries\n";
  static const char* kTypes[] = {"article", "article", "article", "proceedings_paper", "review",
                                 "letter"};
  for (size_t i = 0; i < n_records; ++i) {
    // skewed journal sizes: low indices absorb most records
    size_t j = rng.next_below(journals);
    if (rng.next_below(100) < 60) j = rng.next_below(1 + journals / 6);
    const int year = 2007 + static_cast<int>(rng.next_below(2));
    const char* type = rng.next_below(100) < 2 ? "other" : kTypes[rng.next_below(6)];
    // heavy-tailed citations
    long long citations = static_cast<long long>(rng.next_below(12));
    if (rng.next_below(100) < 25) citations += static_cast<long long>(rng.next_below(80));
    if (rng.next_below(1000) < 12) citations += static_cast<long long>(rng.next_below(900));

    std::string tokens;
    if (rng.next_below(100) < 89) {  // ~11% address-less
      const size_t n_tokens = 1 + rng.next_below(4);
      for (size_t t = 0; t < n_tokens; ++t) {
        if (t) tokens += ';';
        tokens += "N" + std::to_string(rng.next_below(countries));
      }
    }
    csv += "r" + std::to_string(i) + ",J" + std::to_string(j) + "," + std::to_string(year) + "," +
           type + "," + std::to_string(citations) + "," + tokens + "\n";
  }
  return csv;
}

}  // namespace i3kit::testing
