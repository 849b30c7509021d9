#pragma once

// Staged pipeline. Every stage reads the artifacts of earlier stages from the
// output directory and writes its own, so a full run equals the stages run one
// after another.

#include <filesystem>
#include <string>
#include <string_view>

#include "emerge/config.hpp"

namespace emerge::pipeline {

namespace artifact {
inline constexpr std::string_view corpus = "corpus.csv";
inline constexpr std::string_view ingest_summary = "ingest_summary.csv";
inline constexpr std::string_view candidates = "candidates.tsv";
inline constexpr std::string_view keywords = "keywords.tsv";
inline constexpr std::string_view terms = "terms.tsv";
inline constexpr std::string_view index = "index.csv";
inline constexpr std::string_view index_totals = "index_totals.csv";
inline constexpr std::string_view index_entities = "index_entities.tsv";
inline constexpr std::string_view metrics = "metrics.csv";
inline constexpr std::string_view tfidf = "tfidf_ranking.csv";
inline constexpr std::string_view escore = "escore_ranking.csv";
inline constexpr std::string_view cooccur_edges = "cooccurrence_edges.tsv";
inline constexpr std::string_view cooccur_terms = "cooccurrence_terms.tsv";
inline constexpr std::string_view correlation = "correlation.csv";
inline constexpr std::string_view correlation_flags = "correlation_flags.csv";
inline constexpr std::string_view ranking = "emergence_ranking.csv";
inline constexpr std::string_view trends = "trends.csv";
}  // namespace artifact

enum class Baseline { tfidf, escore, cooccur };

Baseline parse_baseline(std::string_view s);

void ingest(const RunConfig& config);
void terms(const RunConfig& config);
void index(const RunConfig& config);
void score(const RunConfig& config);
void baseline(const RunConfig& config, Baseline kind);
void correlate(const RunConfig& config);
void report(const RunConfig& config);
/// All stages in order, including the three baselines.
void run_all(const RunConfig& config);

/// Exclusive lock on an output directory, released on destruction. Throws
/// Error when another run holds it.
class OutputLock {
public:
    explicit OutputLock(const std::filesystem::path& output_dir);
    ~OutputLock();
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    std::filesystem::path path_;
};

}  // namespace emerge::pipeline
