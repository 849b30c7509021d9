#pragma once

// Minimal RFC 4180 reader/writer plus the number formatting shared by every
// artifact writer. All artifacts are UTF-8 with LF line endings.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace emerge::csv {

using Row = std::vector<std::string>;

/// Parses CSV text. Quoted fields may contain separators, quotes ("") and
/// newlines. A trailing newline does not produce an empty row. CR before LF
/// is dropped.
std::vector<Row> parse(std::string_view text, char sep = ',');

/// Splits on `sep` with no quoting (WOS tab exports, TSV artifacts).
std::vector<std::string> split(std::string_view line, char sep);

/// Splits text into lines, dropping a UTF-8 BOM, trailing CR and the final
/// empty line.
std::vector<std::string_view> lines(std::string_view text);

std::string escape(std::string_view field, char sep = ',');
std::string join_row(const Row& row, char sep = ',');

/// Shortest round-trip representation; -0 is written as 0.
std::string format_double(double v);
std::optional<double> parse_double(std::string_view s);
std::optional<std::int64_t> parse_int(std::string_view s);

std::string_view trim(std::string_view s);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Column lookup over a header row.
class Header {
public:
    explicit Header(Row names);

    std::optional<std::size_t> find(std::string_view name) const;
    /// Throws FormatError naming the column and `what` if absent.
    std::size_t require(std::string_view name, std::string_view what) const;
    const Row& names() const { return names_; }

private:
    Row names_;
};

}  // namespace emerge::csv
