#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "emerge/corpus.hpp"
#include "emerge/csv.hpp"
#include "emerge/terms.hpp"

namespace emerge::fixtures {

/// A bundled corpus directory: papers.txt (WOS tab), optional patents.csv and
/// a terms.tsv table.
struct FixtureCorpus {
    std::string name;
    Corpus corpus;
    TermTable table;
};

inline FixtureCorpus load(const std::filesystem::path& dir, int start = 2010, int end = 2019) {
    auto recs = parse_paper_export(csv::read_file(dir / "papers.txt"), PaperFormat::wos_tab, "papers").records;
    if (std::filesystem::exists(dir / "patents.csv")) {
        const auto pats = parse_patent_export(csv::read_file(dir / "patents.csv")).records;
        recs.insert(recs.end(), pats.begin(), pats.end());
    }
    return {dir.filename().string(), build_corpus(recs, start, end).corpus,
            TermTable::from_tsv(csv::read_file(dir / "terms.tsv"))};
}

/// Every fixture corpus under `root`, sorted by name.
inline std::vector<FixtureCorpus> all(const std::filesystem::path& root) {
    std::vector<std::filesystem::path> dirs;
    for (const auto& e : std::filesystem::directory_iterator(root))
        if (e.is_directory() && std::filesystem::exists(e.path() / "terms.tsv")) dirs.push_back(e.path());
    std::sort(dirs.begin(), dirs.end());
    std::vector<FixtureCorpus> out;
    for (const auto& d : dirs) out.push_back(load(d));
    return out;
}

}  // namespace emerge::fixtures
