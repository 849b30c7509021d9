#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emerge/index.hpp"
#include "emerge/metrics.hpp"

namespace emerge {

struct Correlation {
    double r = 0;
    bool zero_variance = false;
};

/// Pearson r; 0 with `zero_variance` set when either series is constant.
/// Throws std::invalid_argument on length mismatch or fewer than 2 values.
Correlation pearson(std::span<const double> xs, std::span<const double> ys);

/// Pearson over average ranks.
Correlation spearman(std::span<const double> xs, std::span<const double> ys);

enum class CorrelationMethod { pearson, spearman };

CorrelationMethod parse_correlation_method(std::string_view s);

inline constexpr std::size_t kCorrelationSize = kMetricCount + 1;

/// Twelve metrics plus Emergence_Score, symmetric with a unit diagonal.
struct CorrelationMatrix {
    std::array<std::string, kCorrelationSize> labels;
    std::array<std::array<double, kCorrelationSize>, kCorrelationSize> values{};
    std::array<std::array<bool, kCorrelationSize>, kCorrelationSize> zero_variance{};

    /// Header row and column carry the labels.
    std::string to_csv() const;
    /// "metric_a,metric_b" for each zero-variance pair (upper triangle).
    std::string flags_csv() const;
};

/// Throws std::invalid_argument with fewer than two vectors.
CorrelationMatrix correlation_matrix(std::span<const MetricVector> vectors,
                                     CorrelationMethod method = CorrelationMethod::pearson);

using RankedTerm = std::pair<std::string, double>;

/// Descending by score, ties ascending by term, truncated to `top_n`.
/// Throws std::invalid_argument when top_n <= 0 or the input is empty.
std::vector<RankedTerm> rank_terms(std::span<const RankedTerm> scores, int top_n);

/// term,score then the twelve metric columns, top_n rows in rank order.
std::string emergence_ranking_csv(const std::vector<ScoredTerm>& scored, int top_n);

/// term,year,papers,authors,orgs,citations,patents
std::string trends_csv(const TermIndex& index);

}  // namespace emerge
