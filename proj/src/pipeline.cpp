#include "emerge/pipeline.hpp"

#include <cstdio>
#include <optional>
#include <set>
#include <iostream>

#include "emerge/baselines.hpp"
#include "emerge/csv.hpp"
#include "emerge/error.hpp"
#include "emerge/index.hpp"
#include "emerge/metrics.hpp"
#include "emerge/report.hpp"
#include "emerge/terms.hpp"

namespace emerge::pipeline {

namespace fs = std::filesystem;

namespace {

fs::path out_path(const RunConfig& c, std::string_view name) { return c.output_dir / std::string(name); }

std::string read_artifact(const RunConfig& c, std::string_view name) {
    const auto p = out_path(c, name);
    if (!fs::exists(p)) throw MissingArtifactError(p.string());
    return csv::read_file(p);
}

void write_artifact(const RunConfig& c, std::string_view name, std::string_view content) {
    csv::write_file(out_path(c, name), content);
}

std::string read_input(const fs::path& p) {
    if (!fs::exists(p)) throw ConfigError("input file not found: " + p.string());
    return csv::read_file(p);
}

TextNormalizer make_normalizer(const RunConfig& c) {
    return TextNormalizer::from_files(c.stopwords_path, c.lemma_exceptions_path);
}

Corpus load_corpus(const RunConfig& c) {
    auto parsed = parse_canonical_csv(read_artifact(c, artifact::corpus));
    return build_corpus(std::move(parsed.records), c.study_start, c.study_end).corpus;
}

TermTable load_terms(const RunConfig& c) {
    auto table = TermTable::from_tsv(read_artifact(c, artifact::terms));
    if (table.empty()) throw DataError(std::string(artifact::terms) + " holds no terms");
    return table;
}

TermIndex load_index(const RunConfig& c) {
    const auto stats = read_artifact(c, artifact::index);
    const auto totals = read_artifact(c, artifact::index_totals);
    const auto entities = read_artifact(c, artifact::index_entities);
    auto index = TermIndex::from_artifacts(stats, totals, entities);
    if (index.study_start() != c.study_start || index.study_end() != c.study_end)
        throw ConfigError("index covers " + std::to_string(index.study_start()) + "-" +
                          std::to_string(index.study_end()) + " but the config asks for " +
                          std::to_string(c.study_start) + "-" + std::to_string(c.study_end));
    return index;
}

void prepare(const RunConfig& c) {
    c.validate();
    fs::create_directories(c.output_dir);
}

}  // namespace

Baseline parse_baseline(std::string_view s) {
    if (s == "tfidf") return Baseline::tfidf;
    if (s == "escore") return Baseline::escore;
    if (s == "cooccur") return Baseline::cooccur;
    throw ConfigError("unknown baseline '" + std::string(s) + "' (expected tfidf, escore or cooccur)");
}

void ingest(const RunConfig& c) {
    prepare(c);
    if (c.paper_exports.empty() && c.patent_exports.empty())
        throw ConfigError("no paper_exports or patent_exports configured");

    std::vector<DocumentRecord> records;
    std::string summary = "file,rows,records,skipped\n";
    std::set<std::string> stems;
    std::size_t rows = 0, skipped = 0;
    auto take = [&](const fs::path& p, ParseResult parsed) {
        for (const auto& w : parsed.warnings) std::cerr << p.filename().string() << ": " << w << "\n";
        summary += csv::join_row({p.filename().string(), std::to_string(parsed.rows),
                                  std::to_string(parsed.records.size()), std::to_string(parsed.skipped)}) + "\n";
        rows += parsed.rows;
        skipped += parsed.skipped;
        records.insert(records.end(), std::make_move_iterator(parsed.records.begin()),
                       std::make_move_iterator(parsed.records.end()));
    };
    for (const auto& p : c.paper_exports) {
        const auto stem = p.stem().string();
        if (!stems.insert(stem).second)
            throw ConfigError("two paper exports share the file name '" + stem + "'; record ids would collide");
        take(p, parse_paper_export(read_input(p), c.paper_format, stem));
    }
    for (const auto& p : c.patent_exports) take(p, parse_patent_export(read_input(p)));

    const auto built = build_corpus(std::move(records), c.study_start, c.study_end);
    summary += csv::join_row({"total", std::to_string(rows), std::to_string(built.corpus.size()),
                              std::to_string(skipped)}) + "\n";
    summary += "dropped_out_of_window," + std::to_string(built.dropped_out_of_window) + ",,\n";
    summary += "dropped_duplicates," + std::to_string(built.dropped_duplicates) + ",,\n";
    write_artifact(c, artifact::corpus, to_canonical_csv(built.corpus.records()));
    write_artifact(c, artifact::ingest_summary, summary);
}

void terms(const RunConfig& c) {
    prepare(c);
    const auto corpus = load_corpus(c);
    const auto normalizer = make_normalizer(c);

    std::optional<EmbeddingSidecar> sidecar;
    if (c.ranker == RankerMode::embedding) {
        if (c.sidecar.empty() || !fs::exists(c.sidecar)) {
            write_artifact(c, artifact::candidates, candidates_to_tsv(collect_candidates(corpus, normalizer, 1, c.n_max)));
            throw ConfigError("embedding ranker needs a sidecar file (candidates written to " +
                              out_path(c, artifact::candidates).string() + ")");
        }
        sidecar = EmbeddingSidecar::parse(csv::read_file(c.sidecar));
    }

    TermExtractionConfig tc;
    tc.n_max = c.n_max;
    tc.top_k = c.top_k;
    tc.min_doc_frequency = c.min_doc_frequency;
    tc.ranker = c.ranker;
    tc.sidecar = sidecar ? &*sidecar : nullptr;
    const auto result = extract_terms(corpus, tc, normalizer);
    write_artifact(c, artifact::candidates, candidates_to_tsv(result.candidates));
    write_artifact(c, artifact::keywords, candidates_to_tsv(result.kept));
    if (result.table.empty())
        throw DataError("no term reaches min_doc_frequency " + std::to_string(c.min_doc_frequency));
    write_artifact(c, artifact::terms, result.table.to_tsv());
}

void index(const RunConfig& c) {
    prepare(c);
    const auto corpus = load_corpus(c);
    const auto table = load_terms(c);
    const auto idx = build_index(corpus, table, c.counting_mode, make_normalizer(c), c.worker_threads());
    write_artifact(c, artifact::index, idx.stats_csv());
    write_artifact(c, artifact::index_totals, idx.totals_csv());
    write_artifact(c, artifact::index_entities, idx.entities_tsv());
}

void score(const RunConfig& c) {
    prepare(c);
    const auto idx = load_index(c);
    const auto windows = StudyWindows::configure(idx.period_length(), c.windows);
    const auto scored = score_terms(idx, windows, MetricConfig{c.novelty_x_mode}, c.worker_threads());
    write_artifact(c, artifact::metrics, metrics_csv(scored));
}

void baseline(const RunConfig& c, Baseline kind) {
    prepare(c);
    if (kind == Baseline::escore) {
        const auto idx = load_index(c);
        std::vector<RankedTerm> scores;
        for (const auto& [term, stats] : idx.terms()) {
            std::vector<double> series;
            for (const auto& y : stats.years) series.push_back(static_cast<double>(y.papers_full));
            scores.emplace_back(term, escore_proxy(series));
        }
        write_artifact(c, artifact::escore,
                       ranking_csv(scores.empty() ? scores : rank_terms(scores, static_cast<int>(scores.size()))));
        return;
    }
    const auto corpus = load_corpus(c);
    const auto table = load_terms(c);
    const auto normalizer = make_normalizer(c);
    if (kind == Baseline::tfidf) {
        const auto stats = term_document_stats(corpus, table, normalizer);
        std::vector<RankedTerm> scores;
        for (const auto& [term, e] : stats.terms)
            if (e.df > 0) scores.emplace_back(term, tfidf_score(stats, term));
        write_artifact(c, artifact::tfidf,
                       ranking_csv(scores.empty() ? scores : rank_terms(scores, static_cast<int>(scores.size()))));
        return;
    }
    const auto result = cooccurrence(corpus, table, c.cooccur_min_count, normalizer);
    write_artifact(c, artifact::cooccur_edges, edges_tsv(result.edges));
    write_artifact(c, artifact::cooccur_terms, frequencies_tsv(result.frequencies));
}

void correlate(const RunConfig& c) {
    prepare(c);
    const auto scored = metrics_from_csv(read_artifact(c, artifact::metrics));
    std::vector<MetricVector> vectors;
    for (const auto& [term, mv] : scored) vectors.push_back(mv);
    if (vectors.size() < 2) throw DataError("correlation needs at least two scored terms");
    const auto matrix = correlation_matrix(vectors, c.correlation);
    write_artifact(c, artifact::correlation, matrix.to_csv());
    write_artifact(c, artifact::correlation_flags, matrix.flags_csv());
}

void report(const RunConfig& c) {
    prepare(c);
    const auto scored = metrics_from_csv(read_artifact(c, artifact::metrics));
    const auto idx = load_index(c);
    write_artifact(c, artifact::ranking, emergence_ranking_csv(scored, c.top_n));
    write_artifact(c, artifact::trends, trends_csv(idx));
}

void run_all(const RunConfig& c) {
    ingest(c);
    terms(c);
    index(c);
    score(c);
    baseline(c, Baseline::tfidf);
    baseline(c, Baseline::escore);
    baseline(c, Baseline::cooccur);
    correlate(c);
    report(c);
}

OutputLock::OutputLock(const fs::path& output_dir) : path_(output_dir / ".emerge.lock") {
    fs::create_directories(output_dir);
    std::FILE* f = std::fopen(path_.c_str(), "wx");
    if (!f)
        throw Error("output directory is locked by another run: " + path_.string() +
                    " (delete it if no run is active)");
    std::fclose(f);
}

OutputLock::~OutputLock() {
    std::error_code ec;
    fs::remove(path_, ec);
}

}  // namespace emerge::pipeline
