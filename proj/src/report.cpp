#include "emerge/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "emerge/csv.hpp"
#include "emerge/error.hpp"

namespace emerge {

namespace {

std::vector<double> average_ranks(std::span<const double> xs) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(xs.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

bool ranked_before(const RankedTerm& a, const RankedTerm& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
}

}  // namespace

Correlation pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("pearson: need at least two values");
    const auto n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) return {0.0, true};
    return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), false};
}

Correlation spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("spearman: length mismatch");
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    return pearson(rx, ry);
}

CorrelationMethod parse_correlation_method(std::string_view s) {
    if (s == "pearson") return CorrelationMethod::pearson;
    if (s == "spearman") return CorrelationMethod::spearman;
    throw ConfigError("unknown correlation method '" + std::string(s) + "'");
}

CorrelationMatrix correlation_matrix(std::span<const MetricVector> vectors, CorrelationMethod method) {
    if (vectors.size() < 2) throw std::invalid_argument("correlation_matrix: need at least two scored terms");
    std::array<std::vector<double>, kCorrelationSize> columns;
    for (const auto& v : vectors) {
        for (std::size_t i = 0; i < kMetricCount; ++i) columns[i].push_back(v.values[i]);
        columns[kMetricCount].push_back(v.emergence_score);
    }
    CorrelationMatrix m;
    for (std::size_t i = 0; i < kMetricCount; ++i) m.labels[i] = std::string(metric_names()[i]);
    m.labels[kMetricCount] = "Emergence_Score";
    for (std::size_t i = 0; i < kCorrelationSize; ++i) {
        m.values[i][i] = 1.0;
        for (std::size_t j = i + 1; j < kCorrelationSize; ++j) {
            const auto c = method == CorrelationMethod::pearson ? pearson(columns[i], columns[j])
                                                                : spearman(columns[i], columns[j]);
            m.values[i][j] = m.values[j][i] = c.r;
            m.zero_variance[i][j] = m.zero_variance[j][i] = c.zero_variance;
        }
    }
    return m;
}

std::string CorrelationMatrix::to_csv() const {
    csv::Row header{"metric"};
    header.insert(header.end(), labels.begin(), labels.end());
    std::string out = csv::join_row(header) + "\n";
    for (std::size_t i = 0; i < kCorrelationSize; ++i) {
        csv::Row row{labels[i]};
        for (std::size_t j = 0; j < kCorrelationSize; ++j) row.push_back(csv::format_double(values[i][j]));
        out += csv::join_row(row) + "\n";
    }
    return out;
}

std::string CorrelationMatrix::flags_csv() const {
    std::string out = "metric_a,metric_b\n";
    for (std::size_t i = 0; i < kCorrelationSize; ++i)
        for (std::size_t j = i + 1; j < kCorrelationSize; ++j)
            if (zero_variance[i][j]) out += labels[i] + "," + labels[j] + "\n";
    return out;
}

std::vector<RankedTerm> rank_terms(std::span<const RankedTerm> scores, int top_n) {
    if (top_n <= 0) throw std::invalid_argument("rank_terms: top_n must be positive");
    if (scores.empty()) throw std::invalid_argument("rank_terms: no scores");
    std::vector<RankedTerm> out(scores.begin(), scores.end());
    std::sort(out.begin(), out.end(), ranked_before);
    if (out.size() > static_cast<std::size_t>(top_n)) out.resize(static_cast<std::size_t>(top_n));
    return out;
}

std::string emergence_ranking_csv(const std::vector<ScoredTerm>& scored, int top_n) {
    std::vector<RankedTerm> scores;
    std::map<std::string, const MetricVector*, std::less<>> by_term;
    for (const auto& [term, mv] : scored) {
        scores.emplace_back(term, mv.emergence_score);
        by_term[term] = &mv;
    }
    csv::Row header{"term", "score"};
    for (auto name : metric_names()) header.emplace_back(name);
    std::string out = csv::join_row(header) + "\n";
    if (scores.empty()) return out;
    for (const auto& [term, score] : rank_terms(scores, top_n)) {
        csv::Row row{term, csv::format_double(score)};
        for (double x : by_term.at(term)->values) row.push_back(csv::format_double(x));
        out += csv::join_row(row) + "\n";
    }
    return out;
}

std::string trends_csv(const TermIndex& index) {
    std::string out = "term,year,papers,authors,orgs,citations,patents\n";
    for (const auto& [term, s] : index.terms()) {
        for (std::size_t y = 0; y < s.years.size(); ++y) {
            const auto& r = s.years[y];
            out += csv::join_row({term, std::to_string(index.study_start() + static_cast<int>(y)),
                                  std::to_string(r.papers_full), std::to_string(r.authors),
                                  std::to_string(r.organizations), std::to_string(r.citations),
                                  std::to_string(r.patents)}) +
                   "\n";
        }
    }
    return out;
}

}  // namespace emerge
