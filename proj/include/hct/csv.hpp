#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hct/errors.hpp"

namespace hct::csv {

// Shortest round-trip decimal form, locale-independent, so identical runs
// produce byte-identical files.
std::string num(double v);

struct Row {
    std::vector<std::string> fields;
    std::size_t line_no = 0;
};

// Strict reader for the small comma-separated schemas this tool uses: no quoting,
// fixed column count, UTF-8 passthrough, tolerant of trailing \r and a final
// newline-less row. Throws CsvFormatError / IoError.
class Reader {
public:
    // header must match exactly (after \r stripping).
    Reader(const std::string& path, const std::vector<std::string>& header);

    // Returns false at end of file.
    bool next(Row& row);

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
    std::vector<std::string> lines_;
    std::size_t pos_ = 0;
    std::size_t n_cols_ = 0;
};

double parse_probability(const Row& row, std::size_t field, const std::string& path);
int parse_binary(const Row& row, std::size_t field, const std::string& path);

} // namespace hct::csv
