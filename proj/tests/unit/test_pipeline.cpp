#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "emerge/config.hpp"
#include "emerge/corpus.hpp"
#include "emerge/csv.hpp"
#include "emerge/error.hpp"
#include "emerge/metrics.hpp"
#include "emerge/pipeline.hpp"
#include "emerge/terms.hpp"
#include "synthetic.hpp"

using namespace emerge;
namespace fs = std::filesystem;

namespace {

class PipelineTest : public ::testing::Test {
protected:
    void SetUp() override {
        root_ = fs::temp_directory_path() /
                ("emerge_pipeline_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(root_);
        fs::create_directories(root_);
        const auto pc = synthetic::planted_corpus(21);
        std::vector<DocumentRecord> papers, patents;
        for (const auto& r : pc.records) (r.kind == RecordKind::paper ? papers : patents).push_back(r);
        std::ofstream(root_ / "papers.txt") << synthetic::to_wos_tab(papers);
        std::ofstream(root_ / "patents.csv") << synthetic::to_patent_csv(patents);
    }
    void TearDown() override { fs::remove_all(root_); }

    RunConfig config(const std::string& out) const {
        auto c = parse_config("paper_exports = papers.txt\npatent_exports = patents.csv\n"
                              "study_start = 2010\nstudy_end = 2019\nmin_doc_frequency = 5\ntop_k = 40\n"
                              "output_dir = " + out + "\n",
                              root_);
        c.validate();
        return c;
    }

    static std::string read(const fs::path& p) { return csv::read_file(p); }

    fs::path root_;
};

const std::string_view kAllArtifacts[] = {
    pipeline::artifact::corpus,        pipeline::artifact::ingest_summary, pipeline::artifact::candidates,
    pipeline::artifact::keywords,      pipeline::artifact::terms,          pipeline::artifact::index,
    pipeline::artifact::index_totals,  pipeline::artifact::index_entities, pipeline::artifact::metrics,
    pipeline::artifact::tfidf,         pipeline::artifact::escore,         pipeline::artifact::cooccur_edges,
    pipeline::artifact::cooccur_terms, pipeline::artifact::correlation,    pipeline::artifact::correlation_flags,
    pipeline::artifact::ranking,       pipeline::artifact::trends};

}  // namespace

TEST_F(PipelineTest, StagedRunEqualsFullRun) {
    const auto full = config("full");
    pipeline::run_all(full);
    const auto staged = config("staged");
    pipeline::ingest(staged);
    pipeline::terms(staged);
    pipeline::index(staged);
    pipeline::score(staged);
    for (auto b : {pipeline::Baseline::tfidf, pipeline::Baseline::escore, pipeline::Baseline::cooccur})
        pipeline::baseline(staged, b);
    pipeline::correlate(staged);
    pipeline::report(staged);
    for (auto name : kAllArtifacts) {
        const auto a = full.output_dir / name, b = staged.output_dir / name;
        ASSERT_TRUE(fs::exists(a)) << name;
        EXPECT_EQ(read(a), read(b)) << name;
    }
}

TEST_F(PipelineTest, RepeatedRunIsByteIdentical) {
    auto one = config("one");
    auto two = config("two");
    two.threads = 5;
    pipeline::run_all(one);
    pipeline::run_all(two);
    for (auto name : kAllArtifacts) EXPECT_EQ(read(one.output_dir / name), read(two.output_dir / name)) << name;
}

TEST_F(PipelineTest, MissingArtifactNamed) {
    const auto c = config("partial");
    pipeline::ingest(c);
    try {
        pipeline::score(c);
        FAIL() << "expected MissingArtifactError";
    } catch (const MissingArtifactError& e) {
        EXPECT_NE(std::string(e.what()).find("index.csv"), std::string::npos);
    }
    EXPECT_THROW(pipeline::correlate(c), MissingArtifactError);
    EXPECT_THROW(pipeline::report(c), MissingArtifactError);
}

TEST_F(PipelineTest, MissingInputIsConfigError) {
    auto c = config("noinput");
    c.paper_exports = {root_ / "absent.txt"};
    EXPECT_THROW(pipeline::ingest(c), ConfigError);
}

TEST_F(PipelineTest, IndexFromOtherWindowRejected) {
    auto c = config("window");
    pipeline::run_all(c);
    std::map<std::string, Window> all;
    const StudyWindows base;
    for (const auto& name : StudyWindows::names()) all[name] = base.by_name(name);
    c.study_start = 2009;
    c.study_end = 2018;
    EXPECT_THROW(pipeline::score(c), ConfigError);
}

TEST_F(PipelineTest, ReportsPlantedEmergentTermFirst) {
    const auto c = config("planted");
    pipeline::run_all(c);
    const auto ranking_text = read(c.output_dir / pipeline::artifact::ranking);
    const auto ranking = csv::lines(ranking_text);
    ASSERT_GE(ranking.size(), 2u);
    std::map<std::string, double> score;
    for (const auto& [term, mv] : metrics_from_csv(read(c.output_dir / pipeline::artifact::metrics)))
        score[term] = mv.emergence_score;
    ASSERT_TRUE(score.contains("quantum annealing") && score.contains("deep learning") &&
                score.contains("expert systems"));
    const auto top = csv::split(ranking[1], ',');
    EXPECT_EQ(score["quantum annealing"], score.at(top.at(0)));
    EXPECT_GT(score["quantum annealing"], score["deep learning"]);
    EXPECT_GT(score["deep learning"], score["expert systems"]);
}

// Embedding mode: the first pass writes the candidate list and stops; a
// sidecar built from it (here a deterministic stand-in for the exporter)
// lets the second pass finish.
TEST_F(PipelineTest, EmbeddingRankerRoundTrip) {
    auto c = config("embed");
    c.ranker = RankerMode::embedding;
    pipeline::ingest(c);
    EXPECT_THROW(pipeline::terms(c), ConfigError);
    const auto candidates = candidates_from_tsv(read(c.output_dir / pipeline::artifact::candidates));
    ASSERT_FALSE(candidates.empty());
    const auto corpus = parse_canonical_csv(read(c.output_dir / pipeline::artifact::corpus)).records;

    EmbeddingSidecar sidecar(4);
    auto unit = [](std::size_t h) {
        std::vector<double> v = {double(h % 7) + 1, double(h % 11), double(h % 13), double(h % 5)};
        double n = 0;
        for (double x : v) n += x * x;
        for (double& x : v) x /= std::sqrt(n);
        return v;
    };
    for (const auto& r : corpus) sidecar.add("doc:" + r.id, unit(std::hash<std::string>{}(r.title)));
    for (const auto& p : candidates) sidecar.add("term:" + p.phrase, unit(std::hash<std::string>{}(p.phrase)));
    c.sidecar = root_ / "vectors.sidecar";
    std::ofstream(c.sidecar) << sidecar.to_text();

    EXPECT_EQ(EmbeddingSidecar::parse(read(c.sidecar)).size(), corpus.size() + candidates.size());
    pipeline::terms(c);
    EXPECT_FALSE(TermTable::from_tsv(read(c.output_dir / pipeline::artifact::terms)).empty());
}

TEST(OutputLock, ExclusiveAndReleased) {
    const auto dir = fs::temp_directory_path() / "emerge_lock_test";
    fs::remove_all(dir);
    {
        pipeline::OutputLock lock(dir);
        EXPECT_TRUE(fs::exists(dir / ".emerge.lock"));
        EXPECT_THROW(pipeline::OutputLock second(dir), Error);
    }
    EXPECT_FALSE(fs::exists(dir / ".emerge.lock"));
    EXPECT_NO_THROW(pipeline::OutputLock again(dir));
    fs::remove_all(dir);
}

TEST(ParseBaseline, Names) {
    EXPECT_EQ(pipeline::parse_baseline("tfidf"), pipeline::Baseline::tfidf);
    EXPECT_EQ(pipeline::parse_baseline("cooccur"), pipeline::Baseline::cooccur);
    EXPECT_THROW(pipeline::parse_baseline("bm25"), ConfigError);
}
