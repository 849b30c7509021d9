#include "emerge/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "emerge/csv.hpp"
#include "emerge/error.hpp"
#include "emerge/index.hpp"
#include "emerge/metrics.hpp"

namespace emerge {

TermDocumentStats term_document_stats(const Corpus& corpus, const TermTable& table,
                                      const TextNormalizer& normalizer) {
    const TermMatcher matcher(table, normalizer);
    TermDocumentStats stats;
    stats.documents = corpus.size();
    for (const auto& term : matcher.terms()) stats.terms.emplace(term, TermDocumentStats::Entry{});
    for (const auto& rec : corpus.records()) {
        for (const auto& hit : matcher.match(normalizer.normalize_record(rec.title, rec.abstract))) {
            auto& e = stats.terms[matcher.terms()[hit.term]];
            e.df += 1;
            e.total_tf += hit.count;
        }
    }
    return stats;
}

double tfidf_score(const TermDocumentStats& stats, std::string_view term) {
    const auto it = stats.terms.find(term);
    if (it == stats.terms.end() || it->second.df == 0)
        throw DataError("tfidf: term '" + std::string(term) + "' has document frequency 0");
    const auto& e = it->second;
    // tf * idf summed over documents; idf is constant per term.
    return static_cast<double>(e.total_tf) *
           std::log(static_cast<double>(stats.documents) / static_cast<double>(e.df));
}

double escore_proxy(std::span<const double> c) {
    if (c.size() != 10)
        throw std::invalid_argument("escore_proxy: expected 10 yearly counts, got " + std::to_string(c.size()));
    double total = 0;
    for (double x : c) total += x;
    const double active = (c[7] + c[8] + c[9]) / std::sqrt(std::max(1.0, total));
    const double recent = slog((c[8] + c[9]) - (c[6] + c[7]));
    std::vector<std::pair<double, double>> pts;
    for (int i = 6; i <= 10; ++i) pts.emplace_back(i, c[static_cast<std::size_t>(i - 1)]);
    return active + recent + ols_slope(pts);
}

CooccurrenceResult cooccurrence(const Corpus& corpus, const TermTable& table, std::size_t min_count,
                                const TextNormalizer& normalizer) {
    const TermMatcher matcher(table, normalizer);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pairs;
    CooccurrenceResult result;
    for (const auto& rec : corpus.records()) {
        const auto hits = matcher.match(normalizer.normalize_record(rec.title, rec.abstract));
        for (std::size_t i = 0; i < hits.size(); ++i) {
            ++result.frequencies[matcher.terms()[hits[i].term]];
            for (std::size_t j = i + 1; j < hits.size(); ++j) ++pairs[{hits[i].term, hits[j].term}];
        }
    }
    // Term positions follow the sorted table order, so a < b holds lexicographically.
    for (const auto& [key, count] : pairs) {
        if (count < min_count) continue;
        result.edges.push_back({matcher.terms()[key.first], matcher.terms()[key.second], count});
    }
    return result;
}

std::string ranking_csv(const std::vector<std::pair<std::string, double>>& ranked) {
    std::string out = "term,score\n";
    for (const auto& [term, score] : ranked) out += csv::join_row({term, csv::format_double(score)}) + "\n";
    return out;
}

std::string edges_tsv(const std::vector<CooccurrenceEdge>& edges) {
    std::string out = "term_a\tterm_b\tcount\n";
    for (const auto& e : edges) out += e.term_a + "\t" + e.term_b + "\t" + std::to_string(e.count) + "\n";
    return out;
}

std::string frequencies_tsv(const std::map<std::string, std::size_t>& frequencies) {
    std::string out = "term\trecords\n";
    for (const auto& [term, n] : frequencies) out += term + "\t" + std::to_string(n) + "\n";
    return out;
}

}  // namespace emerge
