#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "emerge/baselines.hpp"
#include "emerge/config.hpp"
#include "emerge/error.hpp"
#include "emerge/metrics.hpp"
#include "emerge/pipeline.hpp"
#include "emerge/report.hpp"
#include "emerge/terms.hpp"
#include "emerge/text.hpp"

namespace py = pybind11;
using namespace emerge;

namespace {

RunConfig make_config(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out,
                      const std::map<std::string, std::string>& overrides) {
    auto config = load_config(config_path);
    for (const auto& [key, value] : overrides) apply_setting(config, key, value);
    if (out) config.output_dir = *out;
    config.validate();
    return config;
}

py::dict metric_dict(const MetricVector& mv) {
    py::dict d;
    for (std::size_t i = 0; i < kMetricCount; ++i) d[py::str(std::string(metric_names()[i]))] = mv.values[i];
    d["emergence_score"] = mv.emergence_score;
    py::list degenerate;
    for (std::size_t i = 0; i < kMetricCount; ++i)
        if (mv.is_degenerate(static_cast<Metric>(i))) degenerate.append(std::string(metric_names()[i]));
    d["degenerate"] = degenerate;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Emerging-topic detection toolkit (C++ core)";

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<FormatError>(m, "FormatError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<MissingArtifactError>(m, "MissingArtifactError", base.ptr());
    py::register_exception<DataError>(m, "DataError", base.ptr());

    m.def(
        "normalize", [](std::string_view text) { return normalize(text).tokens(); }, py::arg("text"),
        "Content tokens of `text` after lowercasing, stopword removal and lemmatization.");
    m.def("lemmatize", &lemmatize, py::arg("token"));

    m.def("slog", &slog, py::arg("x"));
    m.def(
        "novelty_relative",
        [](double x, std::string_view scale) { return novelty_relative(x, parse_novelty_scale(scale)); },
        py::arg("x"), py::arg("scale") = "fraction");
    m.def("novelty_absolute", &novelty_absolute, py::arg("x"));
    m.def(
        "ols_slope", [](const std::vector<std::pair<double, double>>& pts) { return ols_slope(pts); },
        py::arg("points"));
    m.def(
        "escore_proxy", [](const std::vector<double>& counts) { return escore_proxy(counts); },
        py::arg("yearly_counts"));
    m.def(
        "pearson",
        [](const std::vector<double>& xs, const std::vector<double>& ys) {
            const auto c = pearson(xs, ys);
            return py::make_tuple(c.r, c.zero_variance);
        },
        py::arg("xs"), py::arg("ys"), "Returns (r, zero_variance).");
    m.def(
        "rank_terms",
        [](const std::vector<RankedTerm>& scores, int top_n) { return rank_terms(scores, top_n); },
        py::arg("scores"), py::arg("top_n"));

    m.def(
        "score_corpus",
        [](std::string_view papers, std::string_view patents, std::string_view terms_tsv, int study_start,
           int study_end, std::string_view counting_mode) {
            auto records = parse_paper_export(papers, PaperFormat::wos_tab, "papers").records;
            if (!patents.empty()) {
                auto pats = parse_patent_export(patents).records;
                records.insert(records.end(), pats.begin(), pats.end());
            }
            const auto corpus = build_corpus(std::move(records), study_start, study_end).corpus;
            const auto index = build_index(corpus, TermTable::from_tsv(terms_tsv), parse_counting_mode(counting_mode));
            const auto windows = StudyWindows::configure(index.period_length());
            py::dict out;
            for (const auto& [term, mv] : score_terms(index, windows)) out[py::str(term)] = metric_dict(mv);
            return out;
        },
        py::arg("papers"), py::arg("patents"), py::arg("terms_tsv"), py::arg("study_start"), py::arg("study_end"),
        py::arg("counting_mode") = "binary",
        "Scores a term table against export texts; returns {term: {metric: value}}.");

    m.def(
        "run_pipeline",
        [](const std::filesystem::path& config, std::optional<std::filesystem::path> out,
           std::map<std::string, std::string> overrides) {
            const auto c = make_config(config, out, overrides);
            pipeline::OutputLock lock(c.output_dir);
            py::gil_scoped_release release;
            pipeline::run_all(c);
            return c.output_dir;
        },
        py::arg("config"), py::arg("out") = py::none(), py::arg("overrides") = std::map<std::string, std::string>{},
        "Runs every stage; returns the output directory.");
    m.def(
        "run_stage",
        [](std::string_view stage, const std::filesystem::path& config, std::optional<std::filesystem::path> out,
           std::map<std::string, std::string> overrides) {
            const auto c = make_config(config, out, overrides);
            pipeline::OutputLock lock(c.output_dir);
            if (stage == "ingest") pipeline::ingest(c);
            else if (stage == "terms") pipeline::terms(c);
            else if (stage == "index") pipeline::index(c);
            else if (stage == "score") pipeline::score(c);
            else if (stage == "correlate") pipeline::correlate(c);
            else if (stage == "report") pipeline::report(c);
            else if (stage.substr(0, 9) == "baseline:") pipeline::baseline(c, pipeline::parse_baseline(stage.substr(9)));
            else throw ConfigError("unknown stage '" + std::string(stage) + "'");
            return c.output_dir;
        },
        py::arg("stage"), py::arg("config"), py::arg("out") = py::none(),
        py::arg("overrides") = std::map<std::string, std::string>{},
        "Runs one stage: ingest, terms, index, score, baseline:<kind>, correlate or report.");

    m.def(
        "parse_sidecar",
        [](std::string_view text) {
            const auto s = EmbeddingSidecar::parse(text);
            return py::make_tuple(s.dim(), s.vectors());
        },
        py::arg("text"), "Returns (dim, {id: vector}).");
    m.def(
        "format_sidecar",
        [](std::size_t dim, const std::map<std::string, std::vector<double>>& vectors) {
            EmbeddingSidecar s(dim);
            for (const auto& [id, v] : vectors) s.add(id, v);
            return s.to_text();
        },
        py::arg("dim"), py::arg("vectors"));
    m.def(
        "read_candidates",
        [](std::string_view text) {
            py::list out;
            for (const auto& c : candidates_from_tsv(text)) out.append(py::make_tuple(c.phrase, c.doc_frequency, c.surface));
            return out;
        },
        py::arg("text"), "Rows of candidates.tsv as (phrase, doc_frequency, surface).");
}
