#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "emerge/corpus.hpp"
#include "emerge/text.hpp"

namespace emerge {

/// One n-gram occurrence inside a document. `phrase` is the space-joined
/// lemmatized words; `surface` the words as written.
struct CandidateOccurrence {
    std::string phrase;
    std::string surface;

    bool operator==(const CandidateOccurrence&) const = default;
};

/// Contiguous n-grams with n in [n_min, n_max] that do not cross a boundary
/// and neither start nor end on a connector word. Repeats are preserved.
std::vector<CandidateOccurrence> extract_candidates(const TokenSequence& seq, int n_min = 1,
                                                    int n_max = 4);

/// Corpus-wide phrase statistics used by the statistical ranker.
class DocumentFrequencies {
public:
    DocumentFrequencies() = default;

    void add_document(const std::vector<CandidateOccurrence>& candidates);

    std::size_t documents() const { return documents_; }
    std::size_t df(std::string_view phrase) const;
    const std::unordered_map<std::string, std::size_t>& table() const { return df_; }

private:
    std::size_t documents_ = 0;
    std::unordered_map<std::string, std::size_t> df_;
};

/// Embedding vectors keyed by "doc:<record-id>" or "term:<phrase>".
///
/// Text form: first line "dim=N", then one "<id>\t<f1>,<f2>,...,<fN>" line
/// per vector.
class EmbeddingSidecar {
public:
    explicit EmbeddingSidecar(std::size_t dim = 0) : dim_(dim) {}

    static EmbeddingSidecar parse(std::string_view text);
    std::string to_text() const;

    void add(std::string id, std::vector<double> vec);
    const std::vector<double>* find(std::string_view id) const;
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return vectors_.size(); }
    const std::map<std::string, std::vector<double>>& vectors() const { return vectors_; }

    static std::string doc_id(std::string_view record_id) { return "doc:" + std::string(record_id); }
    static std::string term_id(std::string_view phrase) { return "term:" + std::string(phrase); }

private:
    std::size_t dim_;
    std::map<std::string, std::vector<double>> vectors_;
};

/// Cosine similarity; 0 when either vector has zero norm.
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

enum class RankerMode { statistical, embedding };

RankerMode parse_ranker_mode(std::string_view s);
std::string_view to_string(RankerMode mode);

struct RankedCandidate {
    std::string phrase;
    double score = 0;
};

/// Inputs the rankers draw on. Statistical mode needs `frequencies`,
/// embedding mode needs `sidecar`.
struct RankerInputs {
    RankerMode mode = RankerMode::statistical;
    const DocumentFrequencies* frequencies = nullptr;
    const EmbeddingSidecar* sidecar = nullptr;
};

/// Top `top_k` distinct phrases of one document, descending by score with
/// lexicographic tie-break.
///
/// Statistical: tf within the document times ln(N / df).
/// Embedding: cosine between the "term:" and "doc:" vectors.
std::vector<RankedCandidate> rank_candidates(std::string_view record_id,
                                             const std::vector<CandidateOccurrence>& candidates,
                                             const RankerInputs& inputs, int top_k = 5);

/// A distinct phrase with its corpus document frequency and most frequent
/// surface form.
struct CandidatePhrase {
    std::string phrase;
    std::string surface;
    std::size_t doc_frequency = 0;

    bool operator==(const CandidatePhrase&) const = default;
};

/// Canonical terms and their surface variants (lowercased).
class TermTable {
public:
    using Entries = std::map<std::string, std::set<std::string>>;

    TermTable() = default;
    explicit TermTable(Entries entries);

    const Entries& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    bool contains(std::string_view canonical) const;
    std::vector<std::string> canonical_terms() const;

    /// "canonical\tvariant1|variant2|..." one line per term.
    std::string to_tsv() const;
    static TermTable from_tsv(std::string_view text);

    bool operator==(const TermTable&) const = default;

private:
    Entries entries_;
};

/// Merges candidates whose surfaces agree after case folding, hyphen/space
/// substitution and per-token lemmatization. Candidates below
/// `min_doc_frequency` are dropped first. The canonical form of a group is
/// its highest-frequency surface, lowercased (ties: smallest string).
TermTable clump_terms(const std::vector<CandidatePhrase>& kept, std::size_t min_doc_frequency = 3,
                      const TextNormalizer& normalizer = default_normalizer());

/// The clumping key of a surface form.
std::vector<std::string> clump_key(std::string_view surface, const TextNormalizer& normalizer);

struct TermExtractionConfig {
    int n_min = 1;
    int n_max = 4;
    int top_k = 5;
    std::size_t min_doc_frequency = 3;
    RankerMode ranker = RankerMode::statistical;
    const EmbeddingSidecar* sidecar = nullptr;
};

struct TermExtractionResult {
    std::vector<CandidatePhrase> candidates;  // every distinct phrase, sorted by phrase
    std::vector<CandidatePhrase> kept;        // union of per-document top_k, sorted by phrase
    TermTable table;
};

/// All distinct candidate phrases of a corpus with document frequencies.
std::vector<CandidatePhrase> collect_candidates(const Corpus& corpus, const TextNormalizer& normalizer,
                                                int n_min = 1, int n_max = 4);

/// Candidate generation, per-document ranking and clumping over a corpus.
TermExtractionResult extract_terms(const Corpus& corpus, const TermExtractionConfig& config,
                                   const TextNormalizer& normalizer = default_normalizer());

/// "phrase\tdoc_frequency\tsurface" with a header line.
std::string candidates_to_tsv(const std::vector<CandidatePhrase>& candidates);
std::vector<CandidatePhrase> candidates_from_tsv(std::string_view text);

}  // namespace emerge
