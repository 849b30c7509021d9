#include <gtest/gtest.h>

#include "emerge/corpus.hpp"
#include "emerge/csv.hpp"
#include "emerge/error.hpp"
#include "synthetic.hpp"

using namespace emerge;

namespace {

std::string fixture(const std::string& name) { return csv::read_file(std::string(EMERGE_FIXTURES) + "/" + name); }

DocumentRecord paper_rec(std::string id, int year, std::string title) {
    DocumentRecord r;
    r.id = std::move(id);
    r.year = year;
    r.title = std::move(title);
    return r;
}

}  // namespace

TEST(NormalizeAuthor, SurnameInitials) {
    EXPECT_EQ(normalize_author("Smith, J"), "smith, j");
    EXPECT_EQ(normalize_author("  Smith,   J.  "), "smith, j");
    EXPECT_EQ(normalize_author("Lee, K.-H."), "lee, k-h");
    EXPECT_EQ(normalize_author("Consortium"), "consortium");
}

TEST(ParseAffiliations, FirstSegmentLowercased) {
    EXPECT_EQ(parse_affiliations("MIT, Cambridge"), (std::vector<std::string>{"mit"}));
    EXPECT_EQ(parse_affiliations("[Lee, K.] KAIST, Daejeon; [Smith, J] MIT, Cambridge; KAIST, Seoul"),
              (std::vector<std::string>{"kaist", "mit"}));
    EXPECT_TRUE(parse_affiliations("").empty());
}

TEST(ParsePaperExport, SingleRowMapsFields) {
    const auto r = parse_paper_export("TI\tAB\tPY\tAU\tC1\tTC\nDeep nets\t\t2015\tSmith, J\tMIT, Cambridge\t7\n",
                                      PaperFormat::wos_tab);
    ASSERT_EQ(r.records.size(), 1u);
    const auto& rec = r.records[0];
    EXPECT_EQ(rec.kind, RecordKind::paper);
    EXPECT_EQ(rec.year, 2015);
    EXPECT_EQ(rec.title, "Deep nets");
    EXPECT_EQ(rec.abstract, "");
    EXPECT_EQ(rec.authors, (std::vector<std::string>{"smith, j"}));
    EXPECT_EQ(rec.organizations, (std::vector<std::string>{"mit"}));
    EXPECT_EQ(rec.citations, 7);
    EXPECT_EQ(rec.id, "wos:1");
}

TEST(ParsePaperExport, EmptyInput) {
    const auto r = parse_paper_export("", PaperFormat::wos_tab);
    EXPECT_TRUE(r.records.empty());
    EXPECT_EQ(r.skipped, 0u);
}

TEST(ParsePaperExport, MissingYearRowSkipped) {
    const auto r = parse_paper_export(fixture("wos_three_rows.txt"), PaperFormat::wos_tab, "three");
    EXPECT_EQ(r.rows, 3u);
    EXPECT_EQ(r.records.size(), 2u);
    EXPECT_EQ(r.skipped, 1u);
    EXPECT_EQ(r.records[1].id, "three:3");
    EXPECT_EQ(r.records[1].authors, (std::vector<std::string>{"lee, k", "smith, j"}));
    EXPECT_EQ(r.records[1].organizations, (std::vector<std::string>{"kaist", "mit"}));
}

TEST(ParsePaperExport, NonIntegerYearSkippedWithWarning) {
    const auto r = parse_paper_export("TI\tPY\nA\t20x5\nB\t2016\n", PaperFormat::wos_tab);
    EXPECT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.skipped, 1u);
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("20x5"), std::string::npos);
}

TEST(ParsePaperExport, BadCitationsBecomeZero) {
    const auto r = parse_paper_export("TI\tPY\tTC\nA\t2016\tn/a\n", PaperFormat::wos_tab);
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.records[0].citations, 0);
    EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(ParsePaperExport, MalformedHeader) {
    EXPECT_THROW(parse_paper_export("TITLE\tYEAR\nA\t2016\n", PaperFormat::wos_tab), FormatError);
}

TEST(ParsePaperExport, UnknownTagsIgnored) {
    const auto r = parse_paper_export("PT\tTI\tPY\tUT\tSO\nJ\tA\t2016\tWOS:1\tJournal\n", PaperFormat::wos_tab);
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.records[0].title, "A");
}

TEST(ParsePatentExport, SingleRow) {
    const auto r = parse_patent_export("id,title,abstract,year\nP1,A CNN chip,...,2019\n");
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.records[0].kind, RecordKind::patent);
    EXPECT_EQ(r.records[0].year, 2019);
    EXPECT_EQ(r.records[0].citations, 0);
    EXPECT_TRUE(r.records[0].authors.empty());
}

TEST(ParsePatentExport, HeaderOnly) {
    EXPECT_TRUE(parse_patent_export(fixture("patents_header_only.csv")).records.empty());
}

TEST(ParsePatentExport, DuplicateIdNamed) {
    try {
        parse_patent_export(fixture("patents_duplicate_id.csv"));
        FAIL() << "expected DataError";
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("P2"), std::string::npos);
    }
}

TEST(ParsePatentExport, MissingColumn) {
    EXPECT_THROW(parse_patent_export("id,title,year\nP1,x,2019\n"), FormatError);
}

TEST(CanonicalCsv, PatentWithPaperFieldsRejected) {
    EXPECT_THROW(parse_canonical_csv("id,kind,year,title,abstract,authors,organizations,citations\n"
                                     "p,patent,2019,T,,smith,,0\n"),
                 FormatError);
}

TEST(CanonicalCsv, RoundTripKeepsQuotesAndLists) {
    DocumentRecord r = paper_rec("a", 2015, "Title, with \"quotes\"");
    r.abstract = "Line one.\nLine two.";
    r.authors = {"smith, j", "lee, k"};
    r.organizations = {"mit"};
    r.citations = 4;
    const auto back = parse_canonical_csv(to_canonical_csv({r}));
    ASSERT_EQ(back.records.size(), 1u);
    EXPECT_EQ(back.records[0], r);
}

TEST(BuildCorpus, AllInRange) {
    std::vector<DocumentRecord> recs;
    for (int i = 0; i < 10; ++i) recs.push_back(paper_rec("r" + std::to_string(i), 2010 + i, "t" + std::to_string(i)));
    const auto b = build_corpus(recs, 2010, 2019);
    EXPECT_EQ(b.corpus.size(), 10u);
    EXPECT_EQ(b.dropped_out_of_window, 0u);
}

TEST(BuildCorpus, OutOfWindowDropped) {
    const auto b = build_corpus({paper_rec("a", 2009, "x"), paper_rec("b", 2010, "y")}, 2010, 2019);
    EXPECT_EQ(b.corpus.size(), 1u);
    EXPECT_EQ(b.dropped_out_of_window, 1u);
}

TEST(BuildCorpus, DuplicateTitleYearKeepsFirst) {
    const auto b = build_corpus({paper_rec("a", 2015, "Deep Nets!"), paper_rec("b", 2015, "deep  nets"),
                                 paper_rec("c", 2016, "Deep nets")},
                                2010, 2019);
    ASSERT_EQ(b.corpus.size(), 2u);
    EXPECT_EQ(b.corpus.records()[0].id, "a");
    EXPECT_EQ(b.corpus.records()[1].id, "c");
    EXPECT_EQ(b.dropped_duplicates, 1u);
}

TEST(BuildCorpus, DuplicateIdFirstWins) {
    const auto b = build_corpus({paper_rec("a", 2015, "x"), paper_rec("a", 2016, "y")}, 2010, 2019);
    ASSERT_EQ(b.corpus.size(), 1u);
    EXPECT_EQ(b.corpus.records()[0].title, "x");
}

TEST(BuildCorpus, PatentsNotTitleDeduped) {
    auto p1 = paper_rec("p1", 2018, "Same");
    auto p2 = paper_rec("p2", 2018, "Same");
    p1.kind = p2.kind = RecordKind::patent;
    EXPECT_EQ(build_corpus({p1, p2}, 2010, 2019).corpus.size(), 2u);
}

TEST(BuildCorpus, Errors) {
    EXPECT_THROW(build_corpus({paper_rec("a", 2015, "x")}, 2019, 2010), std::invalid_argument);
    EXPECT_THROW(build_corpus({paper_rec("a", 2005, "x")}, 2010, 2019), DataError);
    EXPECT_THROW(build_corpus({}, 2010, 2019), DataError);
}

TEST(CorpusProperty, CanonicalCsvIsFixedPoint) {
    synthetic::Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const auto recs = synthetic::random_records(rng, rng.between(1, 20), 2010, 2019, synthetic::phrase_pool());
        const auto text = to_canonical_csv(recs);
        const auto parsed = parse_canonical_csv(text);
        EXPECT_EQ(parsed.records, recs);
        EXPECT_EQ(to_canonical_csv(parsed.records), text);
    }
}

TEST(CorpusProperty, BuildIsIdempotent) {
    synthetic::Rng rng(202);
    for (int trial = 0; trial < 50; ++trial) {
        auto recs = synthetic::random_records(rng, rng.between(1, 20), 2008, 2021, synthetic::phrase_pool());
        if (recs.size() > 2) recs.push_back(recs[1]);
        BuildResult once = [&]() {
            try {
                return build_corpus(recs, 2010, 2019);
            } catch (const DataError&) {
                return build_corpus({paper_rec("x", 2012, "x")}, 2010, 2019);
            }
        }();
        const auto twice = build_corpus(once.corpus.records(), 2010, 2019);
        EXPECT_EQ(twice.corpus, once.corpus);
        EXPECT_EQ(twice.dropped_duplicates + twice.dropped_out_of_window, 0u);
    }
}

TEST(CorpusProperty, KeptDroppedSkippedSumToRows) {
    synthetic::Rng rng(303);
    for (int trial = 0; trial < 40; ++trial) {
        auto recs = synthetic::random_records(rng, rng.between(2, 20), 2008, 2021, synthetic::phrase_pool(), 0.0);
        std::string wos = synthetic::to_wos_tab(recs);
        // A few rows lose their year or title.
        const int broken = rng.between(0, 3);
        for (int k = 0; k < broken; ++k) wos += "J\tx, y\t\tabstract\t2015\t\t1\tWOS:b\n";
        const auto parsed = parse_paper_export(wos, PaperFormat::wos_tab, "t");
        try {
            const auto built = build_corpus(parsed.records, 2010, 2019);
            EXPECT_EQ(built.corpus.size() + built.dropped_out_of_window + built.dropped_duplicates + parsed.skipped,
                      parsed.rows);
        } catch (const DataError&) {
            EXPECT_EQ(parsed.records.size() + parsed.skipped, parsed.rows);
        }
    }
}
