#include "emerge/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "emerge/csv.hpp"
#include "emerge/error.hpp"

namespace emerge {

namespace {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string collapse_spaces(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

// List fields are '|'-joined in the canonical format.
std::string clean_list_item(std::string_view s) {
    std::string out(s);
    std::replace(out.begin(), out.end(), '|', ' ');
    return collapse_spaces(out);
}

void push_unique(std::vector<std::string>& list, std::string item) {
    if (item.empty()) return;
    if (std::find(list.begin(), list.end(), item) == list.end()) list.push_back(std::move(item));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    for (auto& part : csv::split(s, '|')) push_unique(out, std::string(csv::trim(part)));
    return out;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out.push_back('|');
        out += items[i];
    }
    return out;
}

std::string field_at(const std::vector<std::string>& row, std::optional<std::size_t> col) {
    if (!col || *col >= row.size()) return {};
    return std::string(csv::trim(row[*col]));
}

std::string row_label(std::size_t row) { return "row " + std::to_string(row); }

ParseResult parse_wos_tab(std::string_view bytes, std::string_view id_prefix) {
    ParseResult result;
    const auto all = csv::lines(bytes);
    if (all.empty()) return result;

    const csv::Header header(csv::split(all.front(), '\t'));
    const auto ti = header.find("TI");
    const auto py = header.find("PY");
    if (!ti || !py) throw FormatError("wos_tab: header must contain TI and PY tags");
    const auto ab = header.find("AB");
    const auto au = header.find("AU");
    const auto c1 = header.find("C1");
    const auto tc = header.find("TC");

    for (std::size_t i = 1; i < all.size(); ++i) {
        if (csv::trim(all[i]).empty()) continue;
        ++result.rows;
        const auto row = csv::split(all[i], '\t');
        const std::size_t row_no = result.rows;

        const auto title = field_at(row, ti);
        const auto year_text = field_at(row, py);
        if (title.empty() || year_text.empty()) {
            ++result.skipped;
            result.warnings.push_back(row_label(row_no) + ": missing TI or PY, skipped");
            continue;
        }
        const auto year = csv::parse_int(year_text);
        if (!year) {
            ++result.skipped;
            result.warnings.push_back(row_label(row_no) + ": non-integer PY '" + year_text + "', skipped");
            continue;
        }

        DocumentRecord rec;
        rec.id = std::string(id_prefix) + ":" + std::to_string(row_no);
        rec.kind = RecordKind::paper;
        rec.year = static_cast<int>(*year);
        rec.title = title;
        rec.abstract = field_at(row, ab);
        for (auto& a : csv::split(field_at(row, au), ';')) push_unique(rec.authors, normalize_author(a));
        rec.organizations = parse_affiliations(field_at(row, c1));
        const auto tc_text = field_at(row, tc);
        if (!tc_text.empty()) {
            const auto cites = csv::parse_int(tc_text);
            if (cites && *cites >= 0) {
                rec.citations = *cites;
            } else {
                result.warnings.push_back(row_label(row_no) + ": invalid TC '" + tc_text + "', using 0");
            }
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

void reject_duplicate_ids(const std::vector<DocumentRecord>& records) {
    std::unordered_set<std::string> seen;
    for (const auto& r : records)
        if (!seen.insert(r.id).second) throw DataError("duplicate record id '" + r.id + "'");
}

}  // namespace

std::string_view to_string(RecordKind kind) {
    return kind == RecordKind::paper ? "paper" : "patent";
}

RecordKind parse_record_kind(std::string_view s) {
    if (s == "paper") return RecordKind::paper;
    if (s == "patent") return RecordKind::patent;
    throw FormatError("unknown record kind '" + std::string(s) + "'");
}

PaperFormat parse_paper_format(std::string_view s) {
    if (s == "wos_tab") return PaperFormat::wos_tab;
    if (s == "canonical_csv") return PaperFormat::canonical_csv;
    throw ConfigError("unknown paper format '" + std::string(s) + "'");
}

std::string normalize_author(std::string_view raw) {
    std::string s = ascii_lower(raw);
    s.erase(std::remove(s.begin(), s.end(), '.'), s.end());
    s = clean_list_item(s);
    const auto comma = s.find(',');
    if (comma == std::string::npos) return s;
    const auto surname = csv::trim(std::string_view(s).substr(0, comma));
    const auto rest = csv::trim(std::string_view(s).substr(comma + 1));
    if (rest.empty()) return std::string(surname);
    return std::string(surname) + ", " + std::string(rest);
}

std::vector<std::string> parse_affiliations(std::string_view c1) {
    std::string stripped;
    int depth = 0;
    for (char c : c1) {
        if (c == '[') {
            ++depth;
        } else if (c == ']') {
            if (depth > 0) --depth;
        } else if (depth == 0) {
            stripped.push_back(c);
        }
    }
    std::vector<std::string> orgs;
    for (auto& aff : csv::split(stripped, ';')) {
        const auto first = csv::split(aff, ',').front();
        push_unique(orgs, clean_list_item(ascii_lower(csv::trim(first))));
    }
    return orgs;
}

std::string normalize_title(std::string_view title) {
    std::string out;
    bool pending = false;
    for (char c : title) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalnum(u) || u >= 0x80) {
            if (pending && !out.empty()) out.push_back(' ');
            pending = false;
            out.push_back(static_cast<char>(std::tolower(u)));
        } else {
            pending = true;
        }
    }
    return out;
}

ParseResult parse_paper_export(std::string_view file_bytes, PaperFormat format,
                               std::string_view id_prefix) {
    if (format == PaperFormat::canonical_csv) return parse_canonical_csv(file_bytes);
    return parse_wos_tab(file_bytes, id_prefix);
}

ParseResult parse_patent_export(std::string_view file_bytes) {
    ParseResult result;
    const auto rows = csv::parse(file_bytes);
    if (rows.empty()) return result;
    const csv::Header header(rows.front());
    const auto id_col = header.require("id", "patent csv");
    const auto title_col = header.require("title", "patent csv");
    const auto abstract_col = header.require("abstract", "patent csv");
    const auto year_col = header.require("year", "patent csv");

    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() == 1 && csv::trim(row[0]).empty()) continue;
        ++result.rows;
        const std::size_t row_no = result.rows;
        const auto id = field_at(row, id_col);
        const auto title = field_at(row, title_col);
        const auto year_text = field_at(row, year_col);
        if (id.empty()) throw FormatError("patent csv: " + row_label(row_no) + " has an empty id");
        if (title.empty() || year_text.empty()) {
            ++result.skipped;
            result.warnings.push_back(row_label(row_no) + ": missing title or year, skipped");
            continue;
        }
        const auto year = csv::parse_int(year_text);
        if (!year) {
            ++result.skipped;
            result.warnings.push_back(row_label(row_no) + ": non-integer year '" + year_text + "', skipped");
            continue;
        }
        DocumentRecord rec;
        rec.id = id;
        rec.kind = RecordKind::patent;
        rec.year = static_cast<int>(*year);
        rec.title = title;
        rec.abstract = field_at(row, abstract_col);
        result.records.push_back(std::move(rec));
    }
    reject_duplicate_ids(result.records);
    return result;
}

ParseResult parse_canonical_csv(std::string_view file_bytes) {
    ParseResult result;
    const auto rows = csv::parse(file_bytes);
    if (rows.empty()) return result;
    const csv::Header header(rows.front());
    const auto id_col = header.require("id", "canonical csv");
    const auto kind_col = header.require("kind", "canonical csv");
    const auto year_col = header.require("year", "canonical csv");
    const auto title_col = header.require("title", "canonical csv");
    const auto abstract_col = header.require("abstract", "canonical csv");
    const auto authors_col = header.require("authors", "canonical csv");
    const auto orgs_col = header.require("organizations", "canonical csv");
    const auto cites_col = header.require("citations", "canonical csv");

    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() == 1 && csv::trim(row[0]).empty()) continue;
        ++result.rows;
        const std::size_t row_no = result.rows;

        DocumentRecord rec;
        rec.id = field_at(row, id_col);
        if (rec.id.empty()) throw FormatError("canonical csv: " + row_label(row_no) + " has an empty id");
        rec.kind = parse_record_kind(field_at(row, kind_col));
        rec.title = field_at(row, title_col);
        const auto year_text = field_at(row, year_col);
        const auto year = csv::parse_int(year_text);
        if (rec.title.empty() || !year) {
            ++result.skipped;
            result.warnings.push_back(row_label(row_no) + ": missing title or invalid year, skipped");
            continue;
        }
        rec.year = static_cast<int>(*year);
        rec.abstract = field_at(row, abstract_col);
        rec.authors = split_list(field_at(row, authors_col));
        rec.organizations = split_list(field_at(row, orgs_col));
        const auto cites_text = field_at(row, cites_col);
        if (!cites_text.empty()) {
            const auto cites = csv::parse_int(cites_text);
            if (!cites || *cites < 0)
                throw FormatError("canonical csv: record '" + rec.id + "' has invalid citations");
            rec.citations = *cites;
        }
        if (rec.kind == RecordKind::patent &&
            (!rec.authors.empty() || !rec.organizations.empty() || rec.citations != 0))
            throw FormatError("canonical csv: patent '" + rec.id + "' carries paper-only fields");
        result.records.push_back(std::move(rec));
    }
    reject_duplicate_ids(result.records);
    return result;
}

std::string to_canonical_csv(const std::vector<DocumentRecord>& records) {
    std::string out = "id,kind,year,title,abstract,authors,organizations,citations\n";
    for (const auto& r : records) {
        out += csv::join_row({r.id, std::string(to_string(r.kind)), std::to_string(r.year), r.title,
                              r.abstract, join_list(r.authors), join_list(r.organizations),
                              std::to_string(r.citations)});
        out.push_back('\n');
    }
    return out;
}

struct CorpusBuilder {
    static Corpus make(std::vector<DocumentRecord> records, int start, int end) {
        return Corpus(std::move(records), start, end);
    }
};

BuildResult build_corpus(std::vector<DocumentRecord> records, int study_start, int study_end) {
    if (study_start > study_end)
        throw std::invalid_argument("build_corpus: study_start " + std::to_string(study_start) +
                                    " is after study_end " + std::to_string(study_end));
    std::size_t out_of_window = 0;
    std::size_t duplicates = 0;
    std::vector<DocumentRecord> kept;
    kept.reserve(records.size());
    std::unordered_set<std::string> ids;
    std::set<std::pair<std::string, int>> titles;

    for (auto& rec : records) {
        if (rec.year < study_start || rec.year > study_end) {
            ++out_of_window;
            continue;
        }
        if (rec.id.empty()) throw DataError("record with empty id");
        if (rec.citations < 0) throw DataError("record '" + rec.id + "' has negative citations");
        if (rec.kind == RecordKind::patent) {
            rec.authors.clear();
            rec.organizations.clear();
            rec.citations = 0;
        }
        if (ids.contains(rec.id)) {
            ++duplicates;
            continue;
        }
        if (rec.kind == RecordKind::paper &&
            !titles.emplace(normalize_title(rec.title), rec.year).second) {
            ++duplicates;
            continue;
        }
        ids.insert(rec.id);
        kept.push_back(std::move(rec));
    }
    if (kept.empty()) throw DataError("build_corpus: no records survive the study window");
    return BuildResult{CorpusBuilder::make(std::move(kept), study_start, study_end), out_of_window,
                       duplicates};
}

}  // namespace emerge
