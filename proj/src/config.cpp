#include "emerge/config.hpp"

#include <thread>

#include "emerge/csv.hpp"
#include "emerge/error.hpp"

namespace emerge {

namespace {

std::filesystem::path resolve(std::string_view value, const std::filesystem::path& base_dir) {
    std::filesystem::path p{std::string(csv::trim(value))};
    if (p.empty() || p.is_absolute() || base_dir.empty()) return p;
    return base_dir / p;
}

std::vector<std::filesystem::path> resolve_list(std::string_view value, const std::filesystem::path& base_dir) {
    std::vector<std::filesystem::path> out;
    for (const auto& item : csv::split(value, ',')) {
        if (csv::trim(item).empty()) continue;
        out.push_back(resolve(item, base_dir));
    }
    return out;
}

long long int_value(std::string_view key, std::string_view value) {
    const auto v = csv::parse_int(value);
    if (!v) throw ConfigError("'" + std::string(key) + "' must be an integer, got '" + std::string(value) + "'");
    return *v;
}

}  // namespace

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw, const std::filesystem::path& base_dir) {
    const auto value = csv::trim(raw);
    const std::string_view window_prefix = "window.";
    if (key.substr(0, window_prefix.size()) == window_prefix) {
        const auto name = std::string(key.substr(window_prefix.size()));
        StudyWindows{}.by_name(name);  // rejects unknown names
        c.windows[name] = parse_window(value);
        return;
    }
    if (key == "paper_exports") {
        c.paper_exports = resolve_list(value, base_dir);
    } else if (key == "paper_format") {
        c.paper_format = parse_paper_format(value);
    } else if (key == "patent_exports") {
        c.patent_exports = resolve_list(value, base_dir);
    } else if (key == "study_start") {
        c.study_start = static_cast<int>(int_value(key, value));
    } else if (key == "study_end") {
        c.study_end = static_cast<int>(int_value(key, value));
    } else if (key == "counting_mode") {
        c.counting_mode = parse_counting_mode(value);
    } else if (key == "ranker") {
        c.ranker = parse_ranker_mode(value);
    } else if (key == "sidecar") {
        c.sidecar = resolve(value, base_dir);
    } else if (key == "top_k") {
        c.top_k = static_cast<int>(int_value(key, value));
    } else if (key == "min_doc_frequency") {
        const auto v = int_value(key, value);
        if (v < 1) throw ConfigError("min_doc_frequency must be >= 1");
        c.min_doc_frequency = static_cast<std::size_t>(v);
    } else if (key == "n_max") {
        c.n_max = static_cast<int>(int_value(key, value));
    } else if (key == "novelty_x_mode") {
        c.novelty_x_mode = parse_novelty_scale(value);
    } else if (key == "output_dir") {
        c.output_dir = resolve(value, base_dir);
    } else if (key == "top_n") {
        c.top_n = static_cast<int>(int_value(key, value));
    } else if (key == "correlation") {
        c.correlation = parse_correlation_method(value);
    } else if (key == "cooccur_min_count") {
        const auto v = int_value(key, value);
        if (v < 1) throw ConfigError("cooccur_min_count must be >= 1");
        c.cooccur_min_count = static_cast<std::size_t>(v);
    } else if (key == "stopwords_path") {
        c.stopwords_path = resolve(value, base_dir);
    } else if (key == "lemma_exceptions_path") {
        c.lemma_exceptions_path = resolve(value, base_dir);
    } else if (key == "threads") {
        const auto v = int_value(key, value);
        if (v < 0) throw ConfigError("threads must be >= 0");
        c.threads = static_cast<unsigned>(v);
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    RunConfig c;
    std::size_t line_no = 0;
    for (auto line : csv::lines(text)) {
        ++line_no;
        line = csv::trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        apply_setting(c, csv::trim(line.substr(0, eq)), line.substr(eq + 1), base_dir);
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ConfigError("config file not found: " + path.string());
    return parse_config(csv::read_file(path), path.parent_path());
}

void RunConfig::validate() const {
    if (study_start == 0 || study_end == 0) throw ConfigError("study_start and study_end are required");
    if (paper_exports.empty()) throw ConfigError("paper_exports is required");
    if (study_start > study_end) throw ConfigError("study_start must not be after study_end");
    if (top_k <= 0) throw ConfigError("top_k must be positive");
    if (top_n <= 0) throw ConfigError("top_n must be positive");
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    if (output_dir.empty()) throw ConfigError("output_dir is required");
    StudyWindows::configure(study_end - study_start + 1, windows);
    for (const auto* p : {&stopwords_path, &lemma_exceptions_path})
        if (!p->empty() && !std::filesystem::exists(*p)) throw ConfigError("file not found: " + p->string());
}

unsigned RunConfig::worker_threads() const {
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace emerge
