#include "emerge/index.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "emerge/csv.hpp"
#include "emerge/error.hpp"

namespace emerge {

namespace {

bool fits_at(const TokenSequence& record, std::size_t pos, const VariantWords& words) {
    if (pos + words.size() > record.size()) return false;
    for (std::size_t k = 0; k < words.size(); ++k) {
        if (record.words[pos + k] != words[k]) return false;
        if (k + 1 < words.size() && record.boundary_after[pos + k]) return false;
    }
    return true;
}

std::vector<std::uint32_t> merge_ids(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void sort_unique(std::vector<std::uint32_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string join_names(const std::vector<std::uint32_t>& ids, const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out.push_back('|');
        out += names[ids[i]];
    }
    return out;
}

}  // namespace

CountingMode parse_counting_mode(std::string_view s) {
    if (s == "binary") return CountingMode::binary;
    if (s == "full") return CountingMode::full;
    throw ConfigError("unknown counting mode '" + std::string(s) + "'");
}

std::string_view to_string(CountingMode mode) { return mode == CountingMode::binary ? "binary" : "full"; }

std::vector<VariantWords> normalize_variants(const std::set<std::string>& variants,
                                             const TextNormalizer& normalizer) {
    std::vector<VariantWords> out;
    for (const auto& v : variants) {
        const auto seq = normalizer.normalize(v);
        if (seq.empty()) continue;
        const bool split = std::any_of(seq.boundary_after.begin(), seq.boundary_after.end() - 1,
                                       [](bool b) { return b; });
        if (split) continue;
        if (std::find(out.begin(), out.end(), seq.words) == out.end()) out.push_back(seq.words);
    }
    return out;
}

std::size_t match_term(const TokenSequence& record, const std::vector<VariantWords>& variants) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos < record.size()) {
        std::size_t best = 0;
        for (const auto& v : variants)
            if (!v.empty() && v.size() > best && fits_at(record, pos, v)) best = v.size();
        if (best > 0) {
            ++count;
            pos += best;
        } else {
            ++pos;
        }
    }
    return count;
}

TermMatcher::TermMatcher(const TermTable& table, const TextNormalizer& normalizer) {
    for (const auto& [canonical, variants] : table.entries()) {
        const std::size_t term = terms_.size();
        terms_.push_back(canonical);
        for (auto& words : normalize_variants(variants, normalizer)) {
            auto first = words.front();
            by_first_word_[first].push_back({term, std::move(words)});
        }
    }
}

std::vector<TermMatcher::Hit> TermMatcher::match(const TokenSequence& record) const {
    struct Span {
        std::size_t term;
        std::size_t start;
        std::size_t length;
    };
    std::vector<Span> spans;
    for (std::size_t pos = 0; pos < record.size(); ++pos) {
        const auto it = by_first_word_.find(record.words[pos]);
        if (it == by_first_word_.end()) continue;
        for (const auto& v : it->second)
            if (fits_at(record, pos, v.words)) spans.push_back({v.term, pos, v.words.size()});
    }
    std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
        if (a.term != b.term) return a.term < b.term;
        if (a.start != b.start) return a.start < b.start;
        return a.length > b.length;
    });
    std::vector<Hit> hits;
    std::size_t i = 0;
    while (i < spans.size()) {
        const std::size_t term = spans[i].term;
        std::size_t next_free = 0;
        std::size_t count = 0;
        for (; i < spans.size() && spans[i].term == term; ++i) {
            if (spans[i].start < next_free) continue;
            ++count;
            next_free = spans[i].start + spans[i].length;
        }
        hits.push_back({term, count});
    }
    return hits;
}

TermIndex::TermIndex(int study_start, int study_end, CountingMode mode)
    : study_start_(study_start), study_end_(study_end), mode_(mode) {
    if (study_start > study_end) throw std::invalid_argument("TermIndex: inverted study window");
    totals_.resize(static_cast<std::size_t>(period_length()));
}

std::size_t TermIndex::year_slot(int year) const {
    if (year < study_start_ || year > study_end_)
        throw std::invalid_argument("year " + std::to_string(year) + " outside study window");
    return static_cast<std::size_t>(year - study_start_);
}

bool TermIndex::contains(std::string_view term) const { return terms_.find(term) != terms_.end(); }

const TermYearStats& TermIndex::stats(std::string_view term) const {
    const auto it = terms_.find(term);
    if (it == terms_.end()) throw DataError("unknown term '" + std::string(term) + "'");
    return it->second;
}

const YearTotals& TermIndex::totals_for(int year) const { return totals_[year_slot(year)]; }

const YearStats& TermIndex::year_stats(std::string_view term, int year) const {
    return stats(term).years[year_slot(year)];
}

std::int64_t TermIndex::window_stat(std::string_view term, Stat stat, int year_lo, int year_hi) const {
    if (year_lo > year_hi)
        throw std::invalid_argument("window_stat: year_lo " + std::to_string(year_lo) + " > year_hi " +
                                    std::to_string(year_hi));
    const auto lo = year_slot(year_lo);
    const auto hi = year_slot(year_hi);
    const auto& s = stats(term);

    if (stat == Stat::authors || stat == Stat::organizations) {
        const auto& per_year = stat == Stat::authors ? s.author_ids : s.organization_ids;
        std::vector<std::uint32_t> ids;
        for (auto y = lo; y <= hi; ++y) ids.insert(ids.end(), per_year[y].begin(), per_year[y].end());
        sort_unique(ids);
        return static_cast<std::int64_t>(ids.size());
    }
    std::int64_t sum = 0;
    for (auto y = lo; y <= hi; ++y) {
        const auto& row = s.years[y];
        switch (stat) {
            case Stat::papers_binary: sum += row.papers_binary; break;
            case Stat::papers_full: sum += row.papers_full; break;
            case Stat::citations: sum += row.citations; break;
            case Stat::patents: sum += row.patents; break;
            default: break;
        }
    }
    return sum;
}

std::string TermIndex::stats_csv() const {
    std::string out = "term,year,papers_binary,papers_full,authors,orgs,citations,patents\n";
    for (const auto& [term, s] : terms_) {
        for (std::size_t y = 0; y < s.years.size(); ++y) {
            const auto& r = s.years[y];
            out += csv::join_row({term, std::to_string(study_start_ + static_cast<int>(y)),
                                  std::to_string(r.papers_binary), std::to_string(r.papers_full),
                                  std::to_string(r.authors), std::to_string(r.organizations),
                                  std::to_string(r.citations), std::to_string(r.patents)});
            out.push_back('\n');
        }
    }
    return out;
}

std::string TermIndex::totals_csv() const {
    std::string out = "year,total_papers,total_patents\n";
    for (std::size_t y = 0; y < totals_.size(); ++y) {
        out += std::to_string(study_start_ + static_cast<int>(y)) + "," +
               std::to_string(totals_[y].papers) + "," + std::to_string(totals_[y].patents) + "\n";
    }
    return out;
}

std::string TermIndex::entities_tsv() const {
    std::string out = "# counting_mode=" + std::string(to_string(mode_)) + "\nterm\tyear\tauthors\torganizations\n";
    for (const auto& [term, s] : terms_) {
        for (std::size_t y = 0; y < s.years.size(); ++y) {
            if (s.author_ids[y].empty() && s.organization_ids[y].empty()) continue;
            out += term + "\t" + std::to_string(study_start_ + static_cast<int>(y)) + "\t" +
                   join_names(s.author_ids[y], author_names_) + "\t" +
                   join_names(s.organization_ids[y], organization_names_) + "\n";
        }
    }
    return out;
}

TermIndex TermIndex::from_artifacts(std::string_view stats_text, std::string_view totals_text,
                                    std::string_view entities_text) {
    const auto totals_rows = csv::parse(totals_text);
    if (totals_rows.size() < 2) throw FormatError("index totals: no rows");
    std::vector<std::pair<int, YearTotals>> totals;
    for (std::size_t i = 1; i < totals_rows.size(); ++i) {
        const auto& r = totals_rows[i];
        if (r.size() < 3) throw FormatError("index totals: row " + std::to_string(i) + " too short");
        const auto year = csv::parse_int(r[0]);
        const auto papers = csv::parse_int(r[1]);
        const auto patents = csv::parse_int(r[2]);
        if (!year || !papers || !patents) throw FormatError("index totals: bad row " + std::to_string(i));
        totals.push_back({static_cast<int>(*year), YearTotals{*papers, *patents}});
    }
    for (std::size_t i = 1; i < totals.size(); ++i)
        if (totals[i].first != totals[i - 1].first + 1)
            throw FormatError("index totals: years must be consecutive");

    const auto entity_lines = csv::lines(entities_text);
    const std::string_view mode_key = "# counting_mode=";
    if (entity_lines.size() < 2 || entity_lines.front().substr(0, mode_key.size()) != mode_key)
        throw FormatError("index entities: missing counting_mode line");
    const CountingMode mode = parse_counting_mode(entity_lines.front().substr(mode_key.size()));

    TermIndex index(totals.front().first, totals.back().first, mode);
    for (std::size_t i = 0; i < totals.size(); ++i) index.totals_[i] = totals[i].second;

    const auto stat_rows = csv::parse(stats_text);
    if (stat_rows.empty()) throw FormatError("index: missing header");
    auto empty_stats = [&] {
        TermYearStats s;
        const auto n = static_cast<std::size_t>(index.period_length());
        s.years.resize(n);
        s.author_ids.resize(n);
        s.organization_ids.resize(n);
        return s;
    };
    for (std::size_t i = 1; i < stat_rows.size(); ++i) {
        const auto& r = stat_rows[i];
        if (r.size() == 1 && r[0].empty()) continue;
        if (r.size() < 8) throw FormatError("index: row " + std::to_string(i) + " too short");
        std::int64_t v[7];
        for (int k = 0; k < 7; ++k) {
            const auto parsed = csv::parse_int(r[static_cast<std::size_t>(k + 1)]);
            if (!parsed) throw FormatError("index: bad number on row " + std::to_string(i));
            v[k] = *parsed;
        }
        auto it = index.terms_.find(r[0]);
        if (it == index.terms_.end()) it = index.terms_.emplace(r[0], empty_stats()).first;
        it->second.years[index.year_slot(static_cast<int>(v[0]))] = YearStats{v[1], v[2], v[3], v[4], v[5], v[6]};
    }

    // Entity names are interned in sorted order, matching build_index.
    std::vector<std::tuple<std::string, int, std::vector<std::string>, std::vector<std::string>>> rows;
    std::set<std::string> authors, orgs;
    auto split_names = [](std::string_view s) {
        std::vector<std::string> out;
        if (s.empty()) return out;
        for (auto& n : csv::split(s, '|'))
            if (!n.empty()) out.push_back(std::move(n));
        return out;
    };
    for (std::size_t i = 2; i < entity_lines.size(); ++i) {
        if (csv::trim(entity_lines[i]).empty()) continue;
        const auto f = csv::split(entity_lines[i], '\t');
        if (f.size() < 4) throw FormatError("index entities: line " + std::to_string(i + 1) + " too short");
        const auto year = csv::parse_int(f[1]);
        if (!year) throw FormatError("index entities: bad year on line " + std::to_string(i + 1));
        auto a = split_names(f[2]);
        auto o = split_names(f[3]);
        authors.insert(a.begin(), a.end());
        orgs.insert(o.begin(), o.end());
        rows.emplace_back(f[0], static_cast<int>(*year), std::move(a), std::move(o));
    }
    index.author_names_.assign(authors.begin(), authors.end());
    index.organization_names_.assign(orgs.begin(), orgs.end());
    auto lookup = [](const std::vector<std::string>& names, const std::string& n) {
        return static_cast<std::uint32_t>(std::lower_bound(names.begin(), names.end(), n) - names.begin());
    };
    for (auto& [term, year, a, o] : rows) {
        auto it = index.terms_.find(term);
        if (it == index.terms_.end()) throw FormatError("index entities: unknown term '" + term + "'");
        const auto slot = index.year_slot(year);
        auto& aid = it->second.author_ids[slot];
        auto& oid = it->second.organization_ids[slot];
        for (const auto& n : a) aid.push_back(lookup(index.author_names_, n));
        for (const auto& n : o) oid.push_back(lookup(index.organization_names_, n));
        sort_unique(aid);
        sort_unique(oid);
    }
    for (const auto& [term, s] : index.terms_) {
        for (std::size_t y = 0; y < s.years.size(); ++y) {
            if (static_cast<std::size_t>(s.years[y].authors) != s.author_ids[y].size() ||
                static_cast<std::size_t>(s.years[y].organizations) != s.organization_ids[y].size())
                throw FormatError("index: entity lists disagree with counts for '" + term + "'");
        }
    }
    return index;
}

// Accumulates per-term statistics for a slice of records.
class IndexBuilder {
public:
    struct Partial {
        std::vector<TermYearStats> terms;
        std::vector<YearTotals> totals;
    };

    static Partial empty_partial(std::size_t n_terms, std::size_t n_years) {
        Partial p;
        p.totals.resize(n_years);
        p.terms.resize(n_terms);
        for (auto& t : p.terms) {
            t.years.resize(n_years);
            t.author_ids.resize(n_years);
            t.organization_ids.resize(n_years);
        }
        return p;
    }

    static void merge_into(Partial& into, const Partial& from) {
        for (std::size_t y = 0; y < into.totals.size(); ++y) {
            into.totals[y].papers += from.totals[y].papers;
            into.totals[y].patents += from.totals[y].patents;
        }
        for (std::size_t t = 0; t < into.terms.size(); ++t) {
            auto& a = into.terms[t];
            const auto& b = from.terms[t];
            for (std::size_t y = 0; y < a.years.size(); ++y) {
                a.years[y].papers_binary += b.years[y].papers_binary;
                a.years[y].papers_full += b.years[y].papers_full;
                a.years[y].citations += b.years[y].citations;
                a.years[y].patents += b.years[y].patents;
                a.author_ids[y] = merge_ids(a.author_ids[y], b.author_ids[y]);
                a.organization_ids[y] = merge_ids(a.organization_ids[y], b.organization_ids[y]);
            }
        }
    }

    static TermIndex finish(const Corpus& corpus, CountingMode mode, const TermMatcher& matcher,
                            Partial merged, const std::vector<std::string>& author_names,
                            const std::vector<std::string>& org_names) {
        TermIndex index(corpus.study_start(), corpus.study_end(), mode);
        index.totals_ = std::move(merged.totals);

        // Keep only entities that appear under some term; ids stay order-preserving.
        std::vector<std::uint32_t> used_authors, used_orgs;
        for (const auto& t : merged.terms) {
            for (const auto& ids : t.author_ids) used_authors.insert(used_authors.end(), ids.begin(), ids.end());
            for (const auto& ids : t.organization_ids) used_orgs.insert(used_orgs.end(), ids.begin(), ids.end());
        }
        sort_unique(used_authors);
        sort_unique(used_orgs);
        auto remap = [](const std::vector<std::uint32_t>& used, std::vector<std::uint32_t>& ids) {
            for (auto& id : ids)
                id = static_cast<std::uint32_t>(std::lower_bound(used.begin(), used.end(), id) - used.begin());
        };
        for (auto id : used_authors) index.author_names_.push_back(author_names[id]);
        for (auto id : used_orgs) index.organization_names_.push_back(org_names[id]);

        for (std::size_t t = 0; t < merged.terms.size(); ++t) {
            auto& s = merged.terms[t];
            for (std::size_t y = 0; y < s.years.size(); ++y) {
                remap(used_authors, s.author_ids[y]);
                remap(used_orgs, s.organization_ids[y]);
                s.years[y].authors = static_cast<std::int64_t>(s.author_ids[y].size());
                s.years[y].organizations = static_cast<std::int64_t>(s.organization_ids[y].size());
                if (mode == CountingMode::binary) s.years[y].papers_full = s.years[y].papers_binary;
            }
            index.terms_.emplace(matcher.terms()[t], std::move(s));
        }
        return index;
    }
};

TermIndex build_index(const Corpus& corpus, const TermTable& table, CountingMode mode,
                      const TextNormalizer& normalizer, unsigned threads) {
    if (table.empty()) throw DataError("build_index: empty term table");
    const TermMatcher matcher(table, normalizer);
    const auto n_years = static_cast<std::size_t>(corpus.period_length());
    const auto& records = corpus.records();

    // Entities interned in sorted name order so ids are schedule-independent.
    std::vector<std::string> author_names, org_names;
    for (const auto& r : records) {
        author_names.insert(author_names.end(), r.authors.begin(), r.authors.end());
        org_names.insert(org_names.end(), r.organizations.begin(), r.organizations.end());
    }
    std::sort(author_names.begin(), author_names.end());
    author_names.erase(std::unique(author_names.begin(), author_names.end()), author_names.end());
    std::sort(org_names.begin(), org_names.end());
    org_names.erase(std::unique(org_names.begin(), org_names.end()), org_names.end());
    auto id_of = [](const std::vector<std::string>& names, const std::string& n) {
        return static_cast<std::uint32_t>(std::lower_bound(names.begin(), names.end(), n) - names.begin());
    };

    auto scan = [&](std::size_t begin, std::size_t end, IndexBuilder::Partial& part) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& rec = records[i];
            const auto y = static_cast<std::size_t>(rec.year - corpus.study_start());
            const bool paper = rec.kind == RecordKind::paper;
            (paper ? part.totals[y].papers : part.totals[y].patents) += 1;
            const auto hits = matcher.match(normalizer.normalize_record(rec.title, rec.abstract));
            for (const auto& hit : hits) {
                auto& s = part.terms[hit.term];
                auto& row = s.years[y];
                if (!paper) {
                    row.patents += 1;
                    continue;
                }
                row.papers_binary += 1;
                row.papers_full += static_cast<std::int64_t>(hit.count);
                row.citations += rec.citations;
                for (const auto& a : rec.authors) s.author_ids[y].push_back(id_of(author_names, a));
                for (const auto& o : rec.organizations) s.organization_ids[y].push_back(id_of(org_names, o));
            }
        }
        for (auto& s : part.terms) {
            for (auto& ids : s.author_ids) sort_unique(ids);
            for (auto& ids : s.organization_ids) sort_unique(ids);
        }
    };

    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(records.size(), 1))));
    std::vector<IndexBuilder::Partial> parts;
    for (unsigned t = 0; t < threads; ++t) parts.push_back(IndexBuilder::empty_partial(matcher.terms().size(), n_years));
    {
        std::vector<std::jthread> workers;
        const std::size_t chunk = (records.size() + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t b = std::min(records.size(), t * chunk);
            const std::size_t e = std::min(records.size(), b + chunk);
            if (threads == 1) {
                scan(b, e, parts[t]);
            } else {
                workers.emplace_back([&, b, e, t] { scan(b, e, parts[t]); });
            }
        }
    }
    for (std::size_t t = 1; t < parts.size(); ++t) IndexBuilder::merge_into(parts[0], parts[t]);
    return IndexBuilder::finish(corpus, mode, matcher, std::move(parts[0]), author_names, org_names);
}

}  // namespace emerge
