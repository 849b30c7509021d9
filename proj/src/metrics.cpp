#include "emerge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "emerge/csv.hpp"
#include "emerge/error.hpp"

namespace emerge {

namespace {

constexpr std::array<std::string_view, kMetricCount> kMetricNames = {
    "collab_author_growth1", "collab_author_growth2", "collab_organization_growth1",
    "relative_growth",       "technological_impact",  "scientific_impact",
    "novelty",               "novelty2",              "long_term_growth",
    "long_term_growth2",     "short_term_growth",     "short_term_growth2",
};

std::size_t slot(Metric m) { return static_cast<std::size_t>(m); }

}  // namespace

const std::vector<std::string>& StudyWindows::names() {
    static const std::vector<std::string> kNames = {
        "first2", "first3", "first4", "first5", "first6", "first7", "years5to10",
        "prior2", "last2",  "last3",  "last4",  "last5",  "last6",
    };
    return kNames;
}

Window& StudyWindows::by_name(std::string_view name) {
    return const_cast<Window&>(std::as_const(*this).by_name(name));
}

const Window& StudyWindows::by_name(std::string_view name) const {
    if (name == "first2") return first2;
    if (name == "first3") return first3;
    if (name == "first4") return first4;
    if (name == "first5") return first5;
    if (name == "first6") return first6;
    if (name == "first7") return first7;
    if (name == "years5to10") return years5to10;
    if (name == "prior2") return prior2;
    if (name == "last2") return last2;
    if (name == "last3") return last3;
    if (name == "last4") return last4;
    if (name == "last5") return last5;
    if (name == "last6") return last6;
    throw ConfigError("unknown window '" + std::string(name) + "'");
}

StudyWindows StudyWindows::configure(int period_length, const std::map<std::string, Window>& overrides) {
    if (period_length < 1) throw ConfigError("study period must span at least one year");
    StudyWindows w;
    w.period_length = period_length;
    if (period_length != 10) {
        for (const auto& name : names())
            if (!overrides.contains(name))
                throw ConfigError("a " + std::to_string(period_length) +
                                  "-year study period needs an explicit '" + name + "' window");
    }
    for (const auto& [name, window] : overrides) w.by_name(name) = window;
    w.validate();
    return w;
}

void StudyWindows::validate() const {
    for (const auto& name : names()) {
        const auto& w = by_name(name);
        if (w.lo < 1 || w.hi > period_length || w.lo > w.hi)
            throw ConfigError("window '" + name + "' = " + std::to_string(w.lo) + "-" +
                              std::to_string(w.hi) + " lies outside 1-" + std::to_string(period_length));
    }
    const std::pair<const char*, const char*> pairs[] = {
        {"first3", "last3"}, {"first5", "last5"}, {"prior2", "last2"},
        {"first7", "last3"}, {"first4", "last6"}, {"first6", "last4"},
    };
    for (const auto& [early, late] : pairs)
        if (!(by_name(early).center() < by_name(late).center()))
            throw ConfigError(std::string("window '") + early + "' must be centered before '" + late + "'");
}

Window StudyWindows::mid_to_end(int first_active) const {
    return Window{(first_active + period_length) / 2, period_length};
}

Window parse_window(std::string_view text) {
    const auto t = csv::trim(text);
    const auto dash = t.find('-');
    if (dash == std::string_view::npos) throw ConfigError("window '" + std::string(t) + "' must look like LO-HI");
    const auto lo = csv::parse_int(t.substr(0, dash));
    const auto hi = csv::parse_int(t.substr(dash + 1));
    if (!lo || !hi) throw ConfigError("window '" + std::string(t) + "' must look like LO-HI");
    if (*lo > *hi) throw ConfigError("window '" + std::string(t) + "' ends before it starts");
    return Window{static_cast<int>(*lo), static_cast<int>(*hi)};
}

const std::array<std::string_view, kMetricCount>& metric_names() { return kMetricNames; }

std::string_view to_string(Metric m) { return kMetricNames[slot(m)]; }

MetricVector MetricVector::from_components(const std::array<double, kMetricCount>& values,
                                           std::uint32_t degenerate) {
    MetricVector v;
    v.values = values;
    v.degenerate = degenerate;
    double sum = 0;
    for (double x : values) sum += x;
    v.emergence_score = sum;
    return v;
}

double slog(double x) {
    if (!std::isfinite(x)) throw std::domain_error("slog: non-finite input");
    return std::copysign(std::log1p(std::fabs(x)), x) + 0.0;
}

double slope_between(double early_value, Window early, double late_value, Window late) {
    const double distance = late.center() - early.center();
    if (!(distance > 0))
        throw std::invalid_argument("window slope: early window must be centered before late window");
    return (late_value - early_value) / distance;
}

double window_slope(std::span<const double> series, Window early, Window late) {
    auto sum = [&](Window w) {
        if (w.lo < 1 || w.hi > static_cast<int>(series.size()) || w.lo > w.hi)
            throw std::invalid_argument("window_slope: window outside series");
        double s = 0;
        for (int i = w.lo; i <= w.hi; ++i) s += series[static_cast<std::size_t>(i - 1)];
        return s;
    };
    return slope_between(sum(early), early, sum(late), late);
}

double ols_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw std::invalid_argument("ols_slope: need at least two points");
    double mx = 0, my = 0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    const auto n = static_cast<double>(points.size());
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (const auto& [x, y] : points) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if (sxx == 0) throw std::invalid_argument("ols_slope: zero x-variance");
    return sxy / sxx;
}

NoveltyScale parse_novelty_scale(std::string_view s) {
    if (s == "fraction") return NoveltyScale::fraction;
    if (s == "percent") return NoveltyScale::percent;
    throw ConfigError("unknown novelty_x_mode '" + std::string(s) + "'");
}

std::string_view to_string(NoveltyScale scale) {
    return scale == NoveltyScale::fraction ? "fraction" : "percent";
}

double novelty_relative(double x, NoveltyScale scale) {
    const double upper = scale == NoveltyScale::fraction ? 1.0 : 100.0;
    if (!(x >= 0 && x <= upper))
        throw std::invalid_argument("novelty_relative: x outside [0, " + csv::format_double(upper) + "]");
    return 5.0 * std::exp(-10.0 * x);
}

double novelty_absolute(double x) {
    if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("novelty_absolute: x must be >= 0");
    return 5.0 * std::exp(-x);
}

MetricVector compute_metric_vector(const TermIndex& index, std::string_view term,
                                   const StudyWindows& windows, const MetricConfig& config) {
    if (windows.period_length != index.period_length())
        throw ConfigError("windows cover " + std::to_string(windows.period_length) +
                          " years but the index covers " + std::to_string(index.period_length()));
    const auto& stats = index.stats(term);
    const int n = index.period_length();
    const int start = index.study_start();
    auto year_of = [&](int idx) { return start + idx - 1; };
    auto window_sum = [&](Stat stat, Window w) {
        return static_cast<double>(index.window_stat(term, stat, year_of(w.lo), year_of(w.hi)));
    };
    auto total_papers = [&](Window w) {
        std::int64_t s = 0;
        for (int i = w.lo; i <= w.hi; ++i) s += index.totals_for(year_of(i)).papers;
        return static_cast<double>(s);
    };

    std::array<double, kMetricCount> v{};
    std::uint32_t degenerate = 0;
    auto set = [&](Metric m, auto&& compute) {
        try {
            v[slot(m)] = compute();
        } catch (const std::invalid_argument&) {
            v[slot(m)] = 0;
            degenerate |= 1u << slot(m);
        }
    };
    // Occurrence-based series; equals the record count in binary mode.
    const Stat papers = Stat::papers_full;
    auto growth = [&](Stat stat, Window early, Window late) {
        return slog(slope_between(window_sum(stat, early), early, window_sum(stat, late), late));
    };

    set(Metric::long_term_growth, [&] { return growth(papers, windows.first3, windows.last3); });
    set(Metric::long_term_growth2, [&] { return growth(papers, windows.first5, windows.last5); });
    set(Metric::short_term_growth, [&] { return growth(papers, windows.prior2, windows.last2); });
    set(Metric::short_term_growth2, [&] {
        int first_active = 0;
        for (int i = 1; i <= n && first_active == 0; ++i)
            if (stats.years[static_cast<std::size_t>(i - 1)].papers_binary > 0) first_active = i;
        if (first_active == 0 || n - first_active + 1 < 2)
            throw std::invalid_argument("active period shorter than two years");
        const auto w = windows.mid_to_end(first_active);
        std::vector<std::pair<double, double>> pts;
        for (int i = w.lo; i <= w.hi; ++i)
            pts.emplace_back(i, static_cast<double>(stats.years[static_cast<std::size_t>(i - 1)].papers_full));
        return slog(ols_slope(pts));
    });
    set(Metric::relative_growth, [&] {
        std::vector<std::pair<double, double>> pts;
        for (int i = windows.years5to10.lo; i <= windows.years5to10.hi; ++i) {
            const auto total = index.totals_for(year_of(i)).papers;
            const auto hits = stats.years[static_cast<std::size_t>(i - 1)].papers_binary;
            pts.emplace_back(i, total > 0 ? 100.0 * static_cast<double>(hits) / static_cast<double>(total) : 0.0);
        }
        return slog(ols_slope(pts));
    });
    set(Metric::novelty, [&] {
        // An empty base period counts as share 0.
        const double total = total_papers(windows.first3);
        double x = total > 0 ? window_sum(Stat::papers_binary, windows.first3) / total : 0.0;
        if (config.novelty_scale == NoveltyScale::percent) x *= 100.0;
        return novelty_relative(x, config.novelty_scale);
    });
    set(Metric::novelty2, [&] { return novelty_absolute(window_sum(papers, windows.first2)); });
    set(Metric::collab_author_growth1, [&] { return growth(Stat::authors, windows.first7, windows.last3); });
    set(Metric::collab_author_growth2, [&] { return growth(Stat::authors, windows.first4, windows.last6); });
    set(Metric::collab_organization_growth1,
        [&] { return growth(Stat::organizations, windows.first6, windows.last4); });
    set(Metric::scientific_impact, [&] {
        return std::log1p(window_sum(Stat::citations, Window{1, n}) / static_cast<double>(n));
    });
    set(Metric::technological_impact, [&] { return std::log1p(window_sum(Stat::patents, windows.last2)); });

    return MetricVector::from_components(v, degenerate);
}

std::vector<ScoredTerm> score_terms(const TermIndex& index, const StudyWindows& windows,
                                    const MetricConfig& config, unsigned threads) {
    std::vector<ScoredTerm> out;
    for (const auto& [term, stats] : index.terms()) out.emplace_back(term, MetricVector{});
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(out.size(), 1))));
    auto work = [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out[i].second = compute_metric_vector(index, out[i].first, windows, config);
    };
    if (threads == 1) {
        work(0, out.size());
        return out;
    }
    const std::size_t chunk = (out.size() + threads - 1) / threads;
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t b = std::min(out.size(), t * chunk);
        const std::size_t e = std::min(out.size(), b + chunk);
        workers.emplace_back(work, b, e);
    }
    workers.clear();
    return out;
}

std::string metrics_csv(const std::vector<ScoredTerm>& scored) {
    csv::Row header{"term"};
    for (auto name : kMetricNames) header.emplace_back(name);
    header.emplace_back("emergence_score");
    header.emplace_back("degenerate");
    std::string out = csv::join_row(header) + "\n";
    for (const auto& [term, mv] : scored) {
        csv::Row row{term};
        for (double x : mv.values) row.push_back(csv::format_double(x));
        row.push_back(csv::format_double(mv.emergence_score));
        std::string flags;
        for (std::size_t i = 0; i < kMetricCount; ++i) {
            if (!((mv.degenerate >> i) & 1u)) continue;
            if (!flags.empty()) flags.push_back('|');
            flags += kMetricNames[i];
        }
        row.push_back(flags);
        out += csv::join_row(row) + "\n";
    }
    return out;
}

std::vector<ScoredTerm> metrics_from_csv(std::string_view text) {
    const auto rows = csv::parse(text);
    if (rows.empty()) throw FormatError("metrics csv: missing header");
    const csv::Header header(rows.front());
    const auto term_col = header.require("term", "metrics csv");
    std::array<std::size_t, kMetricCount> cols{};
    for (std::size_t i = 0; i < kMetricCount; ++i) cols[i] = header.require(kMetricNames[i], "metrics csv");
    const auto score_col = header.require("emergence_score", "metrics csv");
    const auto flag_col = header.require("degenerate", "metrics csv");

    std::vector<ScoredTerm> out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() < header.names().size()) throw FormatError("metrics csv: short row " + std::to_string(r));
        MetricVector mv;
        for (std::size_t i = 0; i < kMetricCount; ++i) {
            const auto x = csv::parse_double(row[cols[i]]);
            if (!x) throw FormatError("metrics csv: bad value on row " + std::to_string(r));
            mv.values[i] = *x;
        }
        const auto score = csv::parse_double(row[score_col]);
        if (!score) throw FormatError("metrics csv: bad emergence_score on row " + std::to_string(r));
        mv.emergence_score = *score;
        if (!row[flag_col].empty()) {
            for (const auto& name : csv::split(row[flag_col], '|')) {
                const auto it = std::find(kMetricNames.begin(), kMetricNames.end(), name);
                if (it == kMetricNames.end()) throw FormatError("metrics csv: unknown flag '" + name + "'");
                mv.degenerate |= 1u << static_cast<std::size_t>(it - kMetricNames.begin());
            }
        }
        out.emplace_back(row[term_col], mv);
    }
    return out;
}

}  // namespace emerge
