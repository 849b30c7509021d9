#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emerge/corpus.hpp"
#include "emerge/terms.hpp"
#include "emerge/text.hpp"

namespace emerge {

enum class CountingMode { binary, full };

CountingMode parse_counting_mode(std::string_view s);
std::string_view to_string(CountingMode mode);

enum class Stat { papers_binary, papers_full, authors, organizations, citations, patents };

/// Word sequence of one normalized variant.
using VariantWords = std::vector<std::string>;

/// Normalizes variant surfaces into word sequences; variants that normalize
/// to nothing or span a boundary are dropped (they can never match).
std::vector<VariantWords> normalize_variants(const std::set<std::string>& variants,
                                             const TextNormalizer& normalizer);

/// Non-overlapping occurrences of any variant as a contiguous run of words
/// that does not cross a boundary. Overlaps are resolved left to right,
/// longest variant first.
std::size_t match_term(const TokenSequence& record, const std::vector<VariantWords>& variants);

/// Matches every term of a table against a record in one pass.
class TermMatcher {
public:
    TermMatcher(const TermTable& table, const TextNormalizer& normalizer);

    struct Hit {
        std::size_t term;  // position in terms()
        std::size_t count;
    };

    /// Terms with at least one occurrence, ascending by term position.
    std::vector<Hit> match(const TokenSequence& record) const;

    const std::vector<std::string>& terms() const { return terms_; }

private:
    struct Variant {
        std::size_t term;
        VariantWords words;
    };
    std::vector<std::string> terms_;
    std::map<std::string, std::vector<Variant>, std::less<>> by_first_word_;
};

struct YearStats {
    std::int64_t papers_binary = 0;
    std::int64_t papers_full = 0;
    std::int64_t authors = 0;
    std::int64_t organizations = 0;
    std::int64_t citations = 0;
    std::int64_t patents = 0;

    bool operator==(const YearStats&) const = default;
};

/// Per-year statistics of one term. Entity id lists are sorted and unique.
struct TermYearStats {
    std::vector<YearStats> years;
    std::vector<std::vector<std::uint32_t>> author_ids;
    std::vector<std::vector<std::uint32_t>> organization_ids;

    bool operator==(const TermYearStats&) const = default;
};

struct YearTotals {
    std::int64_t papers = 0;
    std::int64_t patents = 0;

    bool operator==(const YearTotals&) const = default;
};

/// Per-term, per-year statistics over a study window. Immutable once built.
class TermIndex {
public:
    TermIndex(int study_start, int study_end, CountingMode mode);

    int study_start() const { return study_start_; }
    int study_end() const { return study_end_; }
    int period_length() const { return study_end_ - study_start_ + 1; }
    CountingMode counting_mode() const { return mode_; }

    bool contains(std::string_view term) const;
    const TermYearStats& stats(std::string_view term) const;
    const std::map<std::string, TermYearStats, std::less<>>& terms() const { return terms_; }
    const std::vector<YearTotals>& totals() const { return totals_; }
    const YearTotals& totals_for(int year) const;
    const YearStats& year_stats(std::string_view term, int year) const;

    /// Sum over [year_lo, year_hi] for summable stats; number of distinct
    /// entities active in the window for authors and organizations.
    std::int64_t window_stat(std::string_view term, Stat stat, int year_lo, int year_hi) const;

    const std::vector<std::string>& author_names() const { return author_names_; }
    const std::vector<std::string>& organization_names() const { return organization_names_; }

    /// index.csv: term,year,papers_binary,papers_full,authors,orgs,citations,patents
    std::string stats_csv() const;
    /// index_totals.csv: year,total_papers,total_patents
    std::string totals_csv() const;
    /// index_entities.tsv: term<TAB>year<TAB>authors<TAB>organizations ('|'-joined names)
    std::string entities_tsv() const;

    static TermIndex from_artifacts(std::string_view stats_csv, std::string_view totals_csv,
                                    std::string_view entities_tsv);

    bool operator==(const TermIndex&) const = default;

private:
    friend class IndexBuilder;
    std::size_t year_slot(int year) const;

    int study_start_;
    int study_end_;
    CountingMode mode_;
    std::vector<YearTotals> totals_;
    std::map<std::string, TermYearStats, std::less<>> terms_;
    std::vector<std::string> author_names_;
    std::vector<std::string> organization_names_;
};

/// Builds the index. Records are split across `threads` workers whose
/// partial statistics are merged; the result does not depend on the split.
/// Throws DataError on an empty term table.
TermIndex build_index(const Corpus& corpus, const TermTable& table,
                      CountingMode mode = CountingMode::binary,
                      const TextNormalizer& normalizer = default_normalizer(), unsigned threads = 1);

}  // namespace emerge
