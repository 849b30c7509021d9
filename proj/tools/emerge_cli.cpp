#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "emerge/config.hpp"
#include "emerge/error.hpp"
#include "emerge/pipeline.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string output_dir;
    std::string mode;
    std::string ranker;
    std::string sidecar;
    int top_n = 0;
    std::string baseline;
};

emerge::RunConfig make_config(const Options& o) {
    auto config = emerge::load_config(o.config_path);
    if (!o.output_dir.empty()) config.output_dir = o.output_dir;
    if (!o.mode.empty()) emerge::apply_setting(config, "counting_mode", o.mode);
    if (!o.ranker.empty()) emerge::apply_setting(config, "ranker", o.ranker);
    if (!o.sidecar.empty()) config.sidecar = o.sidecar;
    if (o.top_n != 0) config.top_n = o.top_n;
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Emerging-topic detection for scientometric corpora"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", o.config_path, "Run configuration file")->required();
        sub->add_option("-o,--out", o.output_dir, "Output directory (overrides output_dir)");
        sub->add_option("--mode", o.mode, "Counting mode: binary or full")
            ->check(CLI::IsMember({"binary", "full"}));
        sub->add_option("--ranker", o.ranker, "Keyword ranker: statistical or embedding")
            ->check(CLI::IsMember({"statistical", "embedding"}));
        sub->add_option("--sidecar", o.sidecar, "Embedding sidecar file");
        sub->add_option("--top-n", o.top_n, "Rows in the emergence ranking")->check(CLI::PositiveNumber);
    };

    auto* ingest = app.add_subcommand("ingest", "Parse exports into corpus.csv");
    auto* terms = app.add_subcommand("terms", "Extract and clump candidate terms");
    auto* index = app.add_subcommand("index", "Build the term-year index");
    auto* score = app.add_subcommand("score", "Compute the twelve metrics and Emergence_Score");
    auto* baseline = app.add_subcommand("baseline", "Run a baseline ranking");
    auto* correlate = app.add_subcommand("correlate", "Correlation matrix of the metrics");
    auto* report = app.add_subcommand("report", "Emergence ranking and per-year trends");
    auto* pipeline = app.add_subcommand("pipeline", "Run every stage in order");
    for (auto* sub : {ingest, terms, index, score, baseline, correlate, report, pipeline}) add_common(sub);
    baseline->add_option("kind", o.baseline, "tfidf, escore or cooccur")
        ->required()
        ->check(CLI::IsMember({"tfidf", "escore", "cooccur"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage errors share the configuration exit status.
        return app.exit(e) == 0 ? 0 : 1;
    }

    namespace p = emerge::pipeline;
    try {
        const auto config = make_config(o);
        p::OutputLock lock(config.output_dir);
        if (ingest->parsed()) p::ingest(config);
        else if (terms->parsed()) p::terms(config);
        else if (index->parsed()) p::index(config);
        else if (score->parsed()) p::score(config);
        else if (baseline->parsed()) p::baseline(config, p::parse_baseline(o.baseline));
        else if (correlate->parsed()) p::correlate(config);
        else if (report->parsed()) p::report(config);
        else if (pipeline->parsed()) p::run_all(config);
        return 0;
    } catch (const emerge::MissingArtifactError& e) {
        std::cerr << "emerge: " << e.what() << " (run the earlier stage first)\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "emerge: " << e.what() << "\n";
        return 1;
    }
}
