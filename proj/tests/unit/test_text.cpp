#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>

#include "emerge/error.hpp"
#include "emerge/text.hpp"
#include "synthetic.hpp"

using namespace emerge;

using Tokens = std::vector<std::string>;

TEST(Normalize, PunctuationAndNumbers) {
    const auto seq = normalize("Deep Learning, in 2019!");
    EXPECT_EQ(seq.tokens(), (Tokens{"deep", "learning"}));
    ASSERT_EQ(seq.size(), 2u);
    EXPECT_TRUE(seq.boundary_after[1]);
    EXPECT_FALSE(seq.boundary_after[0]);
}

TEST(Normalize, Empty) {
    EXPECT_TRUE(normalize("").empty());
    EXPECT_TRUE(normalize("  ... !!").empty());
}

TEST(Normalize, HyphenatedWordAndPlural) {
    EXPECT_EQ(normalize("state-of-the-art CNNs were studied").tokens(), (Tokens{"state-of-the-art", "cnn", "studied"}));
}

TEST(Normalize, StopwordLeavesBoundary) {
    const auto seq = normalize("neural the network");
    ASSERT_EQ(seq.size(), 2u);
    EXPECT_TRUE(seq.boundary_after[0]);
}

TEST(Normalize, ConnectorKeptBetweenContentWords) {
    const auto seq = normalize("the Internet of Things grows");
    EXPECT_EQ(seq.words, (Tokens{"internet", "of", "thing", "grow"}));
    EXPECT_EQ(seq.tokens(), (Tokens{"internet", "thing", "grow"}));
    EXPECT_TRUE(seq.connector[1]);
}

TEST(Normalize, ConnectorAtEdgeDropped) {
    const auto seq = normalize("of networks. models in");
    EXPECT_EQ(seq.words, (Tokens{"network", "model"}));
}

TEST(Normalize, PossessiveAndApostrophe) {
    EXPECT_EQ(normalize("Porter's model don't").tokens(), (Tokens{"porter", "model"}));
}

TEST(Normalize, UnicodeLettersAndPunctuation) {
    const auto seq = normalize("Réseaux – neuronaux «profonds»");
    EXPECT_EQ(seq.tokens(), (Tokens{"réseaux", "neuronaux", "profond"}));
    EXPECT_TRUE(seq.boundary_after[0]);
}

TEST(Normalize, SurfacesKeepOriginalSpelling) {
    const auto seq = normalize("Neural Networks");
    EXPECT_EQ(seq.surfaces, (Tokens{"Neural", "Networks"}));
}

TEST(Normalize, RecordJoinsWithBoundary) {
    const auto seq = default_normalizer().normalize_record("Deep nets", "Learning works");
    EXPECT_EQ(seq.tokens(), (Tokens{"deep", "net", "learning", "work"}));
    EXPECT_TRUE(seq.boundary_after[1]);
}

TEST(Lemmatize, SuffixRules) {
    EXPECT_EQ(lemmatize("networks"), "network");
    EXPECT_EQ(lemmatize("technologies"), "technology");
    EXPECT_EQ(lemmatize("analysis"), "analysis");
    EXPECT_EQ(lemmatize("classes"), "class");
    EXPECT_EQ(lemmatize("boxes"), "box");
    EXPECT_EQ(lemmatize("approaches"), "approach");
    EXPECT_EQ(lemmatize("meshes"), "mesh");
    EXPECT_EQ(lemmatize("status"), "status");
    EXPECT_EQ(lemmatize("glass"), "glass");
    EXPECT_EQ(lemmatize("gas"), "gas");
    EXPECT_EQ(lemmatize("ties"), "tie");
}

TEST(Lemmatize, ExceptionTable) {
    EXPECT_EQ(lemmatize("data"), "data");
    EXPECT_EQ(lemmatize("series"), "series");
    EXPECT_EQ(lemmatize("children"), "child");
    EXPECT_EQ(lemmatize("indices"), "index");
    EXPECT_EQ(lemmatize("matrices"), "matrix");
}

TEST(TextNormalizer, CustomTables) {
    const TextNormalizer n({"foo"}, {{"geese", "goose"}});
    EXPECT_EQ(n.normalize("foo geese networks").tokens(), (Tokens{"goose", "network"}));
    EXPECT_FALSE(n.is_stopword("the"));
}

TEST(TextNormalizer, RejectsNonIdempotentExceptions) {
    EXPECT_THROW(TextNormalizer({}, {{"mice", "mouses"}}), ConfigError);
}

TEST(TextNormalizer, ParsesResourceFiles) {
    const auto stop = parse_stopword_list("# comment\nthe\n\n  and \n");
    EXPECT_EQ(stop.size(), 2u);
    EXPECT_TRUE(stop.contains("and"));
    const auto ex = parse_lemma_exceptions("data\tdata\nmice\tmouse\n");
    EXPECT_EQ(ex.at("mice"), "mouse");
    EXPECT_THROW(parse_lemma_exceptions("broken line\n"), ConfigError);
}

TEST(TextNormalizer, BuiltinTablesLoaded) {
    EXPECT_GE(default_normalizer().stopwords().size(), 150u);
    EXPECT_GE(default_normalizer().lemma_exceptions().size(), 40u);
    EXPECT_TRUE(default_normalizer().is_stopword("the"));
}

namespace {

std::string random_text(synthetic::Rng& rng) {
    static const std::vector<std::string> pieces = {
        "Networks", "the", "of", "in", "and", "2019", "3D", "x", "analysis", "data", ",", ".", "!", "-",
        "state-of-the-art", "Technologies", "it's", "'quoted'", "classes", "for", "on", "boxes", "é", "Über",
        "a", "–", "(", ")", "9.5%", "model-based", "--", "mid-", "children", "others", "is", "us"};
    std::string s;
    const int n = rng.between(0, 25);
    for (int i = 0; i < n; ++i) {
        s += rng.pick(pieces);
        if (rng.chance(0.8)) s += ' ';
    }
    if (rng.chance(0.3)) s += synthetic::filler_text(rng, 3);
    return s;
}

}  // namespace

TEST(TextProperty, NormalizeIsIdempotent) {
    synthetic::Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const auto text = random_text(rng);
        const auto once = normalize(text);
        const auto twice = normalize(once.to_text());
        EXPECT_EQ(twice.words, once.words) << text;
        EXPECT_EQ(twice.tokens(), once.tokens()) << text;
    }
}

TEST(TextProperty, NoStopwordsNoNumbersWellFormedTokens) {
    synthetic::Rng rng(8);
    const auto& n = default_normalizer();
    for (int i = 0; i < 1000; ++i) {
        const auto text = random_text(rng);
        const auto seq = normalize(text);
        ASSERT_EQ(seq.connector.size(), seq.size());
        ASSERT_EQ(seq.boundary_after.size(), seq.size());
        for (const auto& t : seq.tokens()) {
            EXPECT_FALSE(t.empty());
            EXPECT_FALSE(n.is_stopword(t)) << t;
            EXPECT_TRUE(std::none_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                << t;
            EXPECT_NE(t.front(), '-');
            EXPECT_NE(t.back(), '-');
        }
        for (std::size_t k = 0; k < seq.size(); ++k) {
            if (!seq.connector[k]) continue;
            ASSERT_TRUE(k > 0 && k + 1 < seq.size()) << text;
            EXPECT_FALSE(seq.connector[k - 1] || seq.connector[k + 1]);
            EXPECT_FALSE(seq.boundary_after[k - 1] || seq.boundary_after[k]);
        }
    }
}

TEST(TextProperty, LemmatizeIsIdempotent) {
    synthetic::Rng rng(9);
    const std::string letters = "abcehilorsuxy";
    for (int i = 0; i < 5000; ++i) {
        std::string w;
        const int len = rng.between(1, 10);
        for (int k = 0; k < len; ++k) w.push_back(letters[rng.below(static_cast<std::uint32_t>(letters.size()))]);
        const auto once = lemmatize(w);
        EXPECT_EQ(lemmatize(once), once) << w;
    }
    for (const auto& [word, lemma] : default_normalizer().lemma_exceptions()) EXPECT_EQ(lemmatize(lemma), lemma);
}
