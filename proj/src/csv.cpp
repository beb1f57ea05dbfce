#include "hct/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hct::csv {

std::string num(double v) {
    char buf[40];
    // Shortest representation that round-trips: try increasing precision.
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

} // namespace

Reader::Reader(const std::string& path, const std::vector<std::string>& header) : path_(path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }
    std::string line;
    while (std::getline(in, line)) {
        lines_.push_back(strip_cr(line));
    }
    if (lines_.empty()) {
        throw CsvFormatError(path + ": empty file (expected a header row)");
    }
    const auto got = split_fields(lines_[0]);
    if (got != header) {
        std::ostringstream want;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) want << ',';
            want << header[i];
        }
        throw CsvFormatError(path + ": unexpected header '" + lines_[0] + "' (expected '" +
                             want.str() + "')");
    }
    n_cols_ = header.size();
    pos_ = 1;
}

bool Reader::next(Row& row) {
    while (pos_ < lines_.size() && lines_[pos_].empty()) ++pos_; // skip blank lines
    if (pos_ >= lines_.size()) return false;
    row.fields = split_fields(lines_[pos_]);
    row.line_no = pos_ + 1;
    ++pos_;
    if (row.fields.size() != n_cols_) {
        throw CsvFormatError(path_ + ":" + std::to_string(row.line_no) + ": expected " +
                             std::to_string(n_cols_) + " fields, got " +
                             std::to_string(row.fields.size()));
    }
    return true;
}

double parse_probability(const Row& row, std::size_t field, const std::string& path) {
    const std::string& s = row.fields[field];
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw CsvFormatError(path + ":" + std::to_string(row.line_no) + ": not a number: '" + s +
                             "'");
    }
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ScoreRangeError(path + ":" + std::to_string(row.line_no) +
                              ": value out of [0,1]: " + s);
    }
    return v;
}

int parse_binary(const Row& row, std::size_t field, const std::string& path) {
    const std::string& s = row.fields[field];
    if (s == "0") return 0;
    if (s == "1") return 1;
    throw LabelValueError(path + ":" + std::to_string(row.line_no) + ": label must be 0 or 1: '" +
                          s + "'");
}

} // namespace hct::csv
