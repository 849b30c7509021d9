#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace emerge {

/// Normalized word sequence of one text.
///
/// `words` holds lemmatized lowercase tokens. A small set of connector words
/// ("of", "for", "on", "in", "and") is kept only where it sits between two
/// content words of the same segment, so that phrases such as "internet of
/// thing" survive; connectors never count as tokens on their own.
/// `boundary_after[i]` marks a break (punctuation, removed stopword, removed
/// number) after word i. `surfaces[i]` is the word as written in the input.
struct TokenSequence {
    std::vector<std::string> words;
    std::vector<bool> connector;
    std::vector<bool> boundary_after;
    std::vector<std::string> surfaces;

    std::size_t size() const { return words.size(); }
    bool empty() const { return words.empty(); }

    /// Content tokens (connectors excluded).
    std::vector<std::string> tokens() const;

    /// Appends `other` with a boundary in between.
    void append_segment(const TokenSequence& other);

    /// Renders words back to text, inserting ". " at boundaries.
    std::string to_text() const;

    bool operator==(const TokenSequence&) const = default;
};

/// Deterministic text normalizer: lowercase, punctuation to boundaries,
/// tokenization, number and stopword removal, rule-based lemmatization.
class TextNormalizer {
public:
    /// Uses the built-in stopword list and lemma exception table.
    TextNormalizer();
    TextNormalizer(std::unordered_set<std::string> stopwords,
                   std::unordered_map<std::string, std::string> lemma_exceptions);

    /// Loads overrides from plain-text resource files. An empty path keeps the
    /// built-in table.
    static TextNormalizer from_files(const std::filesystem::path& stopwords_path,
                                     const std::filesystem::path& exceptions_path);

    TokenSequence normalize(std::string_view raw_text) const;
    /// Title and abstract joined with a boundary between them.
    TokenSequence normalize_record(std::string_view title, std::string_view abstract) const;

    std::string lemmatize(std::string_view token) const;

    bool is_stopword(std::string_view word) const;
    static bool is_connector(std::string_view word);

    const std::unordered_set<std::string>& stopwords() const { return stopwords_; }
    const std::unordered_map<std::string, std::string>& lemma_exceptions() const {
        return exceptions_;
    }

private:
    std::unordered_set<std::string> stopwords_;
    std::unordered_map<std::string, std::string> exceptions_;
};

/// Shared instance with the built-in tables.
const TextNormalizer& default_normalizer();

TokenSequence normalize(std::string_view raw_text);
std::string lemmatize(std::string_view token);

/// Lowercases ASCII and Latin-1/Latin Extended-A letters; other bytes pass through.
std::string lowercase(std::string_view text);

/// Built-in resource contents, one entry per line (exceptions: "word<TAB>lemma").
std::string_view builtin_stopwords_text();
std::string_view builtin_lemma_exceptions_text();

std::unordered_set<std::string> parse_stopword_list(std::string_view text);
std::unordered_map<std::string, std::string> parse_lemma_exceptions(std::string_view text);

}  // namespace emerge
