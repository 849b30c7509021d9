#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emerge/corpus.hpp"
#include "emerge/terms.hpp"
#include "emerge/text.hpp"

namespace emerge {

/// Corpus-level term statistics for TF-IDF: document count and, per term,
/// document frequency and total occurrences (full counting, all records).
struct TermDocumentStats {
    struct Entry {
        std::size_t df = 0;
        std::size_t total_tf = 0;
    };
    std::size_t documents = 0;
    std::map<std::string, Entry, std::less<>> terms;
};

TermDocumentStats term_document_stats(const Corpus& corpus, const TermTable& table,
                                      const TextNormalizer& normalizer = default_normalizer());

/// Sum over documents of tf * ln(N / df). Throws DataError when df = 0.
double tfidf_score(const TermDocumentStats& stats, std::string_view term);

/// Trend-score stand-in with active-trend, recent-trend and slope parts over a
/// 10-year series c1..c10:
///   A = (c8 + c9 + c10) / sqrt(max(1, sum c))
///   R = slog((c9 + c10) - (c7 + c8))
///   S = OLS slope over years 6..10
/// Throws std::invalid_argument unless the series has 10 entries.
double escore_proxy(std::span<const double> yearly_counts);

struct CooccurrenceEdge {
    std::string term_a;  // term_a < term_b
    std::string term_b;
    std::size_t count = 0;

    bool operator==(const CooccurrenceEdge&) const = default;
};

struct CooccurrenceResult {
    std::vector<CooccurrenceEdge> edges;             // sorted by (term_a, term_b)
    std::map<std::string, std::size_t> frequencies;  // records containing each term
};

/// Pairs of terms matched in the same record, counted once per record.
/// Edges below `min_count` are dropped.
CooccurrenceResult cooccurrence(const Corpus& corpus, const TermTable& table, std::size_t min_count = 2,
                                const TextNormalizer& normalizer = default_normalizer());

/// "term,score" rows in the given order (see rank_terms).
std::string ranking_csv(const std::vector<std::pair<std::string, double>>& ranked);
/// term_a<TAB>term_b<TAB>count
std::string edges_tsv(const std::vector<CooccurrenceEdge>& edges);
/// term<TAB>records
std::string frequencies_tsv(const std::map<std::string, std::size_t>& frequencies);

}  // namespace emerge
