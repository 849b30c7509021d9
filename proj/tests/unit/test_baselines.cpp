#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "emerge/baselines.hpp"
#include "emerge/error.hpp"
#include "oracle.hpp"
#include "synthetic.hpp"

using namespace emerge;

namespace {

Corpus corpus_of(const std::vector<std::string>& titles) {
    std::vector<DocumentRecord> recs;
    for (std::size_t i = 0; i < titles.size(); ++i) {
        DocumentRecord r;
        r.id = "d" + std::to_string(i);
        r.year = 2010 + static_cast<int>(i % 10);
        r.title = titles[i] + " " + std::to_string(i);
        recs.push_back(r);
    }
    return build_corpus(recs, 2010, 2019).corpus;
}

TermTable table_of(std::initializer_list<std::string> terms) {
    TermTable::Entries e;
    for (const auto& t : terms) e[t] = {};
    return TermTable(e);
}

}  // namespace

TEST(Tfidf, TermInEveryDocumentScoresZero) {
    const auto stats = term_document_stats(corpus_of({"graph model", "graph model study"}), table_of({"graph model"}));
    EXPECT_EQ(tfidf_score(stats, "graph model"), 0.0);
}

TEST(Tfidf, TwoDocumentsOneHit) {
    const auto stats = term_document_stats(corpus_of({"graph model", "other topic"}), table_of({"graph model"}));
    EXPECT_NEAR(tfidf_score(stats, "graph model"), 0.6931471806, 1e-9);
}

// Five documents; "robot" appears 2+1 times in two of them, so the score is
// 3 ln(5/2); "swarm" once in one document gives ln 5.
TEST(Tfidf, FiveDocumentFixture) {
    const auto corpus = corpus_of({"robot and robot", "swarm robot", "nothing", "still nothing", "void"});
    const auto stats = term_document_stats(corpus, table_of({"robot", "swarm", "absent"}));
    EXPECT_EQ(stats.documents, 5u);
    EXPECT_EQ(stats.terms.at("robot").df, 2u);
    EXPECT_EQ(stats.terms.at("robot").total_tf, 3u);
    EXPECT_NEAR(tfidf_score(stats, "robot"), 2.7488721956, 1e-9);
    EXPECT_NEAR(tfidf_score(stats, "swarm"), 1.6094379124, 1e-9);
    EXPECT_THROW(tfidf_score(stats, "absent"), DataError);
    EXPECT_THROW(tfidf_score(stats, "unknown"), DataError);
}

TEST(Tfidf, MatchesOracleAndIsNonNegative) {
    synthetic::Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const auto recs = synthetic::random_records(rng, rng.between(1, 20), 2010, 2019, synthetic::phrase_pool());
        const auto corpus = build_corpus(recs, 2010, 2019).corpus;
        const auto table = synthetic::random_table(rng, synthetic::phrase_pool());
        const auto stats = term_document_stats(corpus, table);
        const auto m = oracle::match_all(corpus.records(), table, default_normalizer());
        for (std::size_t t = 0; t < m.terms.size(); ++t) {
            const auto df = std::count_if(m.counts[t].begin(), m.counts[t].end(), [](auto c) { return c > 0; });
            EXPECT_EQ(stats.terms.at(m.terms[t]).df, static_cast<std::size_t>(df));
            if (df == 0) continue;
            const double got = tfidf_score(stats, m.terms[t]);
            EXPECT_NEAR(got, oracle::tfidf(m.counts[t]), 1e-12);
            EXPECT_GE(got, 0.0);
            EXPECT_EQ(got == 0.0, static_cast<std::size_t>(df) == corpus.size());
        }
    }
}

TEST(EscoreProxy, Examples) {
    EXPECT_EQ(escore_proxy(std::vector<double>(10, 0.0)), 0.0);
    // A = 30/sqrt(30), R = slog(20 - 10) = ln 11, S = 3.
    EXPECT_NEAR(escore_proxy(std::vector<double>{0, 0, 0, 0, 0, 0, 0, 10, 10, 10}), 10.8751208479, 1e-9);
    EXPECT_NEAR(escore_proxy(std::vector<double>(10, 5.0)), 2.1213203436, 1e-9);
    EXPECT_THROW(escore_proxy(std::vector<double>(9, 1.0)), std::invalid_argument);
}

TEST(EscoreProxy, ReversedBurstScoresLower) {
    synthetic::Rng rng(73);
    for (int i = 0; i < 300; ++i) {
        // Strictly increasing burst.
        std::vector<double> s(10);
        double v = rng.between(0, 3);
        for (auto& x : s) {
            x = v;
            v += rng.between(1, 6);
        }
        std::vector<double> r(s.rbegin(), s.rend());
        EXPECT_LT(escore_proxy(r), escore_proxy(s));
    }
}

TEST(Cooccurrence, Examples) {
    const auto table = table_of({"graph model", "swarm robot"});
    const auto one = cooccurrence(corpus_of({"graph model with swarm robot"}), table);
    EXPECT_TRUE(one.edges.empty());
    EXPECT_EQ(one.frequencies.at("graph model"), 1u);
    EXPECT_EQ(cooccurrence(corpus_of({"graph model with swarm robot"}), table, 1).edges,
              (std::vector<CooccurrenceEdge>{{"graph model", "swarm robot", 1}}));
    const auto three = cooccurrence(
        corpus_of({"graph model, swarm robot", "swarm robots and graph models", "graph model graph model swarm robot"}),
        table);
    EXPECT_EQ(three.edges, (std::vector<CooccurrenceEdge>{{"graph model", "swarm robot", 3}}));
}

TEST(Cooccurrence, MatchesOracleAndBoundedByFrequency) {
    synthetic::Rng rng(79);
    for (int trial = 0; trial < 50; ++trial) {
        const auto recs = synthetic::random_records(rng, rng.between(1, 20), 2010, 2019, synthetic::phrase_pool());
        const auto corpus = build_corpus(recs, 2010, 2019).corpus;
        const auto table = synthetic::random_table(rng, synthetic::phrase_pool());
        const std::size_t min_count = static_cast<std::size_t>(rng.between(1, 3));
        const auto got = cooccurrence(corpus, table, min_count);
        const auto m = oracle::match_all(corpus.records(), table, default_normalizer());
        std::vector<CooccurrenceEdge> want;
        for (const auto& [pair, n] : oracle::cooccurrence(m))
            if (n >= min_count) want.push_back({pair.first, pair.second, n});
        EXPECT_EQ(got.edges, want);
        for (const auto& e : got.edges) {
            EXPECT_LT(e.term_a, e.term_b);
            EXPECT_LE(e.count, std::min(got.frequencies.at(e.term_a), got.frequencies.at(e.term_b)));
        }
    }
}

TEST(BaselineOutput, Formats) {
    EXPECT_EQ(ranking_csv({{"a", 2.5}, {"b", 1.0}, {"c", 1.0}}), "term,score\na,2.5\nb,1\nc,1\n");
    EXPECT_EQ(edges_tsv({{"a", "b", 3}}), "term_a\tterm_b\tcount\na\tb\t3\n");
    EXPECT_EQ(frequencies_tsv({{"a", 2}}), "term\trecords\na\t2\n");
}
