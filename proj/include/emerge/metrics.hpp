#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "emerge/index.hpp"

namespace emerge {

/// Inclusive range of 1-based year indices within the study period.
struct Window {
    int lo = 1;
    int hi = 1;

    double center() const { return (lo + hi) / 2.0; }
    int length() const { return hi - lo + 1; }
    bool operator==(const Window&) const = default;
};

/// Named windows used by the growth, novelty, collaboration and impact
/// metrics. Derived automatically for a 10-year period; any other period
/// needs every window given explicitly.
struct StudyWindows {
    int period_length = 10;
    Window first2{1, 2};
    Window first3{1, 3};
    Window first4{1, 4};
    Window first5{1, 5};
    Window first6{1, 6};
    Window first7{1, 7};
    Window years5to10{5, 10};
    Window prior2{7, 8};
    Window last2{9, 10};
    Window last3{8, 10};
    Window last4{7, 10};
    Window last5{6, 10};
    Window last6{5, 10};

    /// Window names accepted by `configure`.
    static const std::vector<std::string>& names();

    /// Defaults for a 10-year period with `overrides` applied; for other
    /// lengths every name must appear in `overrides`. Throws ConfigError.
    static StudyWindows configure(int period_length, const std::map<std::string, Window>& overrides = {});

    /// [mid, period_length] where mid is the floor of the midpoint between the
    /// first active year index and the final year.
    Window mid_to_end(int first_active) const;

    Window& by_name(std::string_view name);
    const Window& by_name(std::string_view name) const;

    void validate() const;

    bool operator==(const StudyWindows&) const = default;
};

/// Parses "1-3" into a window.
Window parse_window(std::string_view text);

/// The twelve indicators, in the order they are summed into the score.
enum class Metric : std::size_t {
    collab_author_growth1,
    collab_author_growth2,
    collab_organization_growth1,
    relative_growth,
    technological_impact,
    scientific_impact,
    novelty,
    novelty2,
    long_term_growth,
    long_term_growth2,
    short_term_growth,
    short_term_growth2,
};

inline constexpr std::size_t kMetricCount = 12;

const std::array<std::string_view, kMetricCount>& metric_names();
std::string_view to_string(Metric m);

struct MetricVector {
    std::array<double, kMetricCount> values{};
    double emergence_score = 0;
    /// Bit i set when metric i hit a degenerate case and was set to 0.
    std::uint32_t degenerate = 0;

    double operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }
    bool is_degenerate(Metric m) const { return (degenerate >> static_cast<std::size_t>(m)) & 1u; }

    /// Sets values and the score as their left-to-right sum.
    static MetricVector from_components(const std::array<double, kMetricCount>& values,
                                        std::uint32_t degenerate = 0);

    bool operator==(const MetricVector&) const = default;
};

/// Signed log: sign(x) * ln(1 + |x|). Throws std::domain_error on non-finite input.
double slog(double x);

/// (late_value - early_value) / (late center - early center).
/// Throws std::invalid_argument unless the early center precedes the late one.
double slope_between(double early_value, Window early, double late_value, Window late);

/// Window-sum slope over a per-year series (series[0] is year index 1).
double window_slope(std::span<const double> series, Window early, Window late);

/// Ordinary least squares slope. Throws std::invalid_argument for fewer than
/// two points or zero x-variance.
double ols_slope(std::span<const std::pair<double, double>> points);

/// How the share in relative novelty is expressed.
enum class NoveltyScale { fraction, percent };

NoveltyScale parse_novelty_scale(std::string_view s);
std::string_view to_string(NoveltyScale scale);

/// 5 * e^(-10x); x must lie in [0, 1] (fraction) or [0, 100] (percent).
double novelty_relative(double x, NoveltyScale scale = NoveltyScale::fraction);

/// 5 * e^(-x) for a non-negative record count.
double novelty_absolute(double x);

struct MetricConfig {
    NoveltyScale novelty_scale = NoveltyScale::fraction;
};

MetricVector compute_metric_vector(const TermIndex& index, std::string_view term,
                                   const StudyWindows& windows, const MetricConfig& config = {});

using ScoredTerm = std::pair<std::string, MetricVector>;

/// Scores every indexed term, sorted by term.
std::vector<ScoredTerm> score_terms(const TermIndex& index, const StudyWindows& windows,
                                    const MetricConfig& config = {}, unsigned threads = 1);

/// term, twelve metric columns, emergence_score, degenerate ('|'-joined names).
std::string metrics_csv(const std::vector<ScoredTerm>& scored);
std::vector<ScoredTerm> metrics_from_csv(std::string_view text);

}  // namespace emerge
