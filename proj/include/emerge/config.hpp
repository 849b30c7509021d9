#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "emerge/corpus.hpp"
#include "emerge/index.hpp"
#include "emerge/metrics.hpp"
#include "emerge/report.hpp"
#include "emerge/terms.hpp"

namespace emerge {

/// Settings for one run. Read from a key/value file:
///
///     # comment
///     paper_exports = papers.txt, more_papers.txt
///     study_start = 2010
///     window.first3 = 1-3
///
/// Relative paths resolve against the config file's directory.
struct RunConfig {
    std::vector<std::filesystem::path> paper_exports;
    PaperFormat paper_format = PaperFormat::wos_tab;
    std::vector<std::filesystem::path> patent_exports;
    int study_start = 0;  // 0: unset
    int study_end = 0;
    CountingMode counting_mode = CountingMode::binary;
    RankerMode ranker = RankerMode::statistical;
    std::filesystem::path sidecar;
    int top_k = 5;
    std::size_t min_doc_frequency = 3;
    int n_max = 4;
    NoveltyScale novelty_x_mode = NoveltyScale::fraction;
    std::map<std::string, Window> windows;
    std::filesystem::path output_dir = "out";
    int top_n = 20;
    CorrelationMethod correlation = CorrelationMethod::pearson;
    std::size_t cooccur_min_count = 2;
    std::filesystem::path stopwords_path;
    std::filesystem::path lemma_exceptions_path;
    unsigned threads = 0;  // 0: hardware concurrency

    /// Throws ConfigError on any invalid or missing setting.
    void validate() const;
    unsigned worker_threads() const;
};

/// Parses the key/value format; throws ConfigError on unknown keys or bad values.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Applies one key/value setting (shared by the file parser and CLI overrides).
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   const std::filesystem::path& base_dir = {});

}  // namespace emerge
