#include "emerge/terms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "emerge/csv.hpp"
#include "emerge/error.hpp"

namespace emerge {

namespace {

std::string join(const std::vector<std::string>& parts, std::size_t b, std::size_t e,
                 char sep = ' ') {
    std::string out;
    for (std::size_t i = b; i < e; ++i) {
        if (i > b) out.push_back(sep);
        out += parts[i];
    }
    return out;
}

bool ranked_before(const RankedCandidate& a, const RankedCandidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.phrase < b.phrase;
}

}  // namespace

std::vector<CandidateOccurrence> extract_candidates(const TokenSequence& seq, int n_min, int n_max) {
    if (n_min < 1 || n_max < n_min)
        throw std::invalid_argument("extract_candidates: need 1 <= n_min <= n_max");
    std::vector<CandidateOccurrence> out;
    const std::size_t n = seq.size();
    for (std::size_t start = 0; start < n; ++start) {
        if (seq.connector[start]) continue;
        for (std::size_t len = 1; len <= static_cast<std::size_t>(n_max) && start + len <= n; ++len) {
            const std::size_t last = start + len - 1;
            if (len >= static_cast<std::size_t>(n_min) && !seq.connector[last])
                out.push_back({join(seq.words, start, last + 1), join(seq.surfaces, start, last + 1)});
            if (seq.boundary_after[last]) break;
        }
    }
    return out;
}

void DocumentFrequencies::add_document(const std::vector<CandidateOccurrence>& candidates) {
    ++documents_;
    std::unordered_set<std::string_view> seen;
    for (const auto& c : candidates)
        if (seen.insert(c.phrase).second) ++df_[c.phrase];
}

std::size_t DocumentFrequencies::df(std::string_view phrase) const {
    const auto it = df_.find(std::string(phrase));
    return it == df_.end() ? 0 : it->second;
}

EmbeddingSidecar EmbeddingSidecar::parse(std::string_view text) {
    const auto all = csv::lines(text);
    if (all.empty()) throw FormatError("sidecar: empty file");
    const auto head = csv::trim(all.front());
    if (head.substr(0, 4) != "dim=") throw FormatError("sidecar: first line must be dim=N");
    const auto dim = csv::parse_int(head.substr(4));
    if (!dim || *dim <= 0) throw FormatError("sidecar: invalid dimension '" + std::string(head) + "'");

    EmbeddingSidecar sidecar(static_cast<std::size_t>(*dim));
    for (std::size_t i = 1; i < all.size(); ++i) {
        const auto line = all[i];
        if (csv::trim(line).empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw FormatError("sidecar: line " + std::to_string(i + 1) + " has no tab");
        std::string id(line.substr(0, tab));
        std::vector<double> vec;
        for (const auto& f : csv::split(line.substr(tab + 1), ',')) {
            const auto v = csv::parse_double(f);
            if (!v || !std::isfinite(*v))
                throw FormatError("sidecar: bad component '" + f + "' for id '" + id + "'");
            vec.push_back(*v);
        }
        if (vec.size() != sidecar.dim())
            throw FormatError("sidecar: id '" + id + "' has " + std::to_string(vec.size()) +
                              " components, expected " + std::to_string(sidecar.dim()));
        if (sidecar.find(id)) throw FormatError("sidecar: duplicate id '" + id + "'");
        sidecar.add(std::move(id), std::move(vec));
    }
    return sidecar;
}

std::string EmbeddingSidecar::to_text() const {
    std::string out = "dim=" + std::to_string(dim_) + "\n";
    for (const auto& [id, vec] : vectors_) {
        out += id;
        out.push_back('\t');
        for (std::size_t i = 0; i < vec.size(); ++i) {
            if (i) out.push_back(',');
            out += csv::format_double(vec[i]);
        }
        out.push_back('\n');
    }
    return out;
}

void EmbeddingSidecar::add(std::string id, std::vector<double> vec) {
    if (vec.size() != dim_)
        throw std::invalid_argument("sidecar: vector for '" + id + "' has wrong dimension");
    vectors_[std::move(id)] = std::move(vec);
}

const std::vector<double>* EmbeddingSidecar::find(std::string_view id) const {
    const auto it = vectors_.find(std::string(id));
    return it == vectors_.end() ? nullptr : &it->second;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("cosine_similarity: dimension mismatch");
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) return 0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

RankerMode parse_ranker_mode(std::string_view s) {
    if (s == "statistical") return RankerMode::statistical;
    if (s == "embedding") return RankerMode::embedding;
    throw ConfigError("unknown ranker '" + std::string(s) + "'");
}

std::string_view to_string(RankerMode mode) {
    return mode == RankerMode::statistical ? "statistical" : "embedding";
}

std::vector<RankedCandidate> rank_candidates(std::string_view record_id,
                                             const std::vector<CandidateOccurrence>& candidates,
                                             const RankerInputs& inputs, int top_k) {
    if (top_k <= 0) throw std::invalid_argument("rank_candidates: top_k must be positive");

    std::map<std::string, std::size_t> tf;
    for (const auto& c : candidates) ++tf[c.phrase];

    std::vector<RankedCandidate> ranked;
    ranked.reserve(tf.size());
    if (inputs.mode == RankerMode::statistical) {
        if (!inputs.frequencies) throw std::invalid_argument("statistical ranker needs document frequencies");
        const double n_docs = static_cast<double>(inputs.frequencies->documents());
        for (const auto& [phrase, count] : tf) {
            const auto df = inputs.frequencies->df(phrase);
            if (df == 0) throw DataError("no document frequency for candidate '" + phrase + "'");
            ranked.push_back({phrase, static_cast<double>(count) * std::log(n_docs / static_cast<double>(df))});
        }
    } else {
        if (!inputs.sidecar) throw std::invalid_argument("embedding ranker needs a sidecar");
        const auto doc_key = EmbeddingSidecar::doc_id(record_id);
        const auto* doc_vec = inputs.sidecar->find(doc_key);
        if (!doc_vec) throw DataError("sidecar has no vector for '" + doc_key + "'");
        for (const auto& [phrase, count] : tf) {
            const auto term_key = EmbeddingSidecar::term_id(phrase);
            const auto* term_vec = inputs.sidecar->find(term_key);
            if (!term_vec) throw DataError("sidecar has no vector for '" + term_key + "'");
            ranked.push_back({phrase, cosine_similarity(*term_vec, *doc_vec)});
        }
    }
    std::sort(ranked.begin(), ranked.end(), ranked_before);
    if (ranked.size() > static_cast<std::size_t>(top_k)) ranked.resize(static_cast<std::size_t>(top_k));
    return ranked;
}

TermTable::TermTable(Entries entries) : entries_(std::move(entries)) {
    std::map<std::string, std::string> owner;
    for (auto& [canonical, variants] : entries_) {
        if (canonical.empty()) throw DataError("term table: empty canonical term");
        variants.insert(canonical);
        for (const auto& v : variants) {
            auto [it, inserted] = owner.emplace(v, canonical);
            if (!inserted)
                throw DataError("term table: variant '" + v + "' belongs to both '" + it->second +
                                "' and '" + canonical + "'");
        }
    }
}

bool TermTable::contains(std::string_view canonical) const {
    return entries_.contains(std::string(canonical));
}

std::vector<std::string> TermTable::canonical_terms() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [c, v] : entries_) out.push_back(c);
    return out;
}

std::string TermTable::to_tsv() const {
    std::string out;
    for (const auto& [canonical, variants] : entries_) {
        out += canonical;
        out.push_back('\t');
        bool first = true;
        for (const auto& v : variants) {
            if (!first) out.push_back('|');
            first = false;
            out += v;
        }
        out.push_back('\n');
    }
    return out;
}

TermTable TermTable::from_tsv(std::string_view text) {
    Entries entries;
    for (const auto line : csv::lines(text)) {
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split(line, '\t');
        const auto canonical = std::string(csv::trim(fields[0]));
        if (canonical.empty()) throw FormatError("term table: empty canonical term");
        auto& variants = entries[canonical];
        if (fields.size() > 1) {
            for (const auto& v : csv::split(fields[1], '|')) {
                const auto t = csv::trim(v);
                if (!t.empty()) variants.emplace(t);
            }
        }
    }
    return TermTable(std::move(entries));
}

std::vector<std::string> clump_key(std::string_view surface, const TextNormalizer& normalizer) {
    auto lowered = lowercase(surface);
    std::replace(lowered.begin(), lowered.end(), '-', ' ');
    std::vector<std::string> key;
    for (const auto& part : csv::split(lowered, ' ')) {
        if (part.empty()) continue;
        key.push_back(normalizer.lemmatize(part));
    }
    return key;
}

TermTable clump_terms(const std::vector<CandidatePhrase>& kept, std::size_t min_doc_frequency,
                      const TextNormalizer& normalizer) {
    std::map<std::vector<std::string>, std::vector<const CandidatePhrase*>> groups;
    for (const auto& c : kept) {
        if (c.doc_frequency < min_doc_frequency) continue;
        groups[clump_key(c.surface.empty() ? c.phrase : c.surface, normalizer)].push_back(&c);
    }
    TermTable::Entries entries;
    for (const auto& [key, members] : groups) {
        std::string canonical;
        std::size_t best_df = 0;
        std::set<std::string> variants;
        for (const auto* c : members) {
            auto variant = lowercase(c->surface.empty() ? c->phrase : c->surface);
            if (canonical.empty() || c->doc_frequency > best_df ||
                (c->doc_frequency == best_df && variant < canonical)) {
                canonical = variant;
                best_df = c->doc_frequency;
            }
            variants.insert(std::move(variant));
        }
        auto& slot = entries[canonical];
        slot.insert(variants.begin(), variants.end());
    }
    return TermTable(std::move(entries));
}

namespace {

std::vector<CandidatePhrase> aggregate_candidates(const std::vector<std::vector<CandidateOccurrence>>& per_doc) {
    std::map<std::string, std::pair<std::size_t, std::map<std::string, std::size_t>>> stats;
    for (const auto& occ : per_doc) {
        std::unordered_set<std::string_view> seen;
        for (const auto& c : occ) {
            auto& [df, surfaces] = stats[c.phrase];
            if (seen.insert(c.phrase).second) ++df;
            ++surfaces[c.surface];
        }
    }
    std::vector<CandidatePhrase> out;
    out.reserve(stats.size());
    for (const auto& [phrase, entry] : stats) {
        const auto& [df, surfaces] = entry;
        std::string best;
        std::size_t best_count = 0;
        for (const auto& [surface, count] : surfaces) {
            if (count > best_count) {  // map order gives the lexicographic tie-break
                best = surface;
                best_count = count;
            }
        }
        out.push_back({phrase, best, df});
    }
    return out;
}

std::vector<std::vector<CandidateOccurrence>> document_candidates(const Corpus& corpus,
                                                                  const TextNormalizer& normalizer,
                                                                  int n_min, int n_max) {
    std::vector<std::vector<CandidateOccurrence>> per_doc;
    per_doc.reserve(corpus.size());
    for (const auto& rec : corpus.records())
        per_doc.push_back(extract_candidates(normalizer.normalize_record(rec.title, rec.abstract), n_min, n_max));
    return per_doc;
}

}  // namespace

std::vector<CandidatePhrase> collect_candidates(const Corpus& corpus, const TextNormalizer& normalizer,
                                                int n_min, int n_max) {
    return aggregate_candidates(document_candidates(corpus, normalizer, n_min, n_max));
}

TermExtractionResult extract_terms(const Corpus& corpus, const TermExtractionConfig& config,
                                   const TextNormalizer& normalizer) {
    if (config.ranker == RankerMode::embedding && !config.sidecar)
        throw ConfigError("embedding ranker requires a sidecar file");

    const auto per_doc = document_candidates(corpus, normalizer, config.n_min, config.n_max);
    DocumentFrequencies frequencies;
    for (const auto& occ : per_doc) frequencies.add_document(occ);

    const RankerInputs inputs{config.ranker, &frequencies, config.sidecar};
    std::set<std::string> kept_phrases;
    for (std::size_t i = 0; i < per_doc.size(); ++i) {
        if (per_doc[i].empty()) continue;
        for (auto& r : rank_candidates(corpus.records()[i].id, per_doc[i], inputs, config.top_k))
            kept_phrases.insert(std::move(r.phrase));
    }

    TermExtractionResult result;
    result.candidates = aggregate_candidates(per_doc);
    for (const auto& c : result.candidates)
        if (kept_phrases.contains(c.phrase)) result.kept.push_back(c);
    result.table = clump_terms(result.kept, config.min_doc_frequency, normalizer);
    return result;
}

std::string candidates_to_tsv(const std::vector<CandidatePhrase>& candidates) {
    std::string out = "phrase\tdoc_frequency\tsurface\n";
    for (const auto& c : candidates) {
        out += c.phrase;
        out.push_back('\t');
        out += std::to_string(c.doc_frequency);
        out.push_back('\t');
        out += c.surface;
        out.push_back('\n');
    }
    return out;
}

std::vector<CandidatePhrase> candidates_from_tsv(std::string_view text) {
    std::vector<CandidatePhrase> out;
    const auto all = csv::lines(text);
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (csv::trim(all[i]).empty()) continue;
        const auto f = csv::split(all[i], '\t');
        if (f.size() < 3) throw FormatError("candidates: line " + std::to_string(i + 1) + " needs 3 fields");
        const auto df = csv::parse_int(f[1]);
        if (!df || *df < 0) throw FormatError("candidates: bad doc_frequency on line " + std::to_string(i + 1));
        out.push_back({f[0], f[2], static_cast<std::size_t>(*df)});
    }
    return out;
}

}  // namespace emerge
