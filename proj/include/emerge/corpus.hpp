#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace emerge {

enum class RecordKind { paper, patent };

std::string_view to_string(RecordKind kind);
RecordKind parse_record_kind(std::string_view s);

/// One paper or patent. Patents carry no authors, organizations or citations.
struct DocumentRecord {
    std::string id;
    RecordKind kind = RecordKind::paper;
    int year = 0;
    std::string title;
    std::string abstract;
    std::vector<std::string> authors;
    std::vector<std::string> organizations;
    std::int64_t citations = 0;

    bool operator==(const DocumentRecord&) const = default;
};

enum class PaperFormat { wos_tab, canonical_csv };

PaperFormat parse_paper_format(std::string_view s);

struct ParseResult {
    std::vector<DocumentRecord> records;
    std::size_t rows = 0;     // data rows seen (header excluded)
    std::size_t skipped = 0;  // rows rejected (missing/invalid year or title)
    std::vector<std::string> warnings;
};

/// "Smith,  J." -> "smith, j"
std::string normalize_author(std::string_view raw);

/// Institution names from a WOS C1 field: bracketed author groups removed,
/// split on ';', first comma segment of each, lowercased, deduplicated.
std::vector<std::string> parse_affiliations(std::string_view c1);

/// Lowercase, non-alphanumerics collapsed to single spaces. Used for
/// duplicate detection on paper titles.
std::string normalize_title(std::string_view title);

/// Parses a paper export. For wos_tab, record ids are "<id_prefix>:<row>"
/// with 1-based data row numbers; canonical_csv carries its own ids.
ParseResult parse_paper_export(std::string_view file_bytes, PaperFormat format,
                               std::string_view id_prefix = "wos");

/// Parses a patent CSV with columns id,title,abstract,year (any order).
/// Throws DataError naming the id when an id repeats.
ParseResult parse_patent_export(std::string_view file_bytes);

/// Parses the canonical interchange CSV (both record kinds).
ParseResult parse_canonical_csv(std::string_view file_bytes);

/// Writes the canonical interchange CSV:
/// id,kind,year,title,abstract,authors,organizations,citations
std::string to_canonical_csv(const std::vector<DocumentRecord>& records);

/// Validated, immutable record set over an inclusive study window.
class Corpus {
public:
    const std::vector<DocumentRecord>& records() const { return records_; }
    int study_start() const { return study_start_; }
    int study_end() const { return study_end_; }
    int period_length() const { return study_end_ - study_start_ + 1; }
    std::size_t size() const { return records_.size(); }

    bool operator==(const Corpus&) const = default;

private:
    friend struct CorpusBuilder;
    Corpus(std::vector<DocumentRecord> records, int start, int end)
        : records_(std::move(records)), study_start_(start), study_end_(end) {}

    std::vector<DocumentRecord> records_;
    int study_start_ = 0;
    int study_end_ = 0;
};

struct BuildResult {
    Corpus corpus;
    std::size_t dropped_out_of_window = 0;
    std::size_t dropped_duplicates = 0;
};

/// Drops records outside [study_start, study_end], removes duplicate ids
/// (first wins) and duplicate papers by normalized title + year. Throws
/// std::invalid_argument on an inverted window and DataError when nothing
/// survives.
BuildResult build_corpus(std::vector<DocumentRecord> records, int study_start, int study_end);

}  // namespace emerge
