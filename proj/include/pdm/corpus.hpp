#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdm/charspace.hpp"
#include "pdm/discovery.hpp"

namespace pdm {

/// Malformed input; `row` and `column` are 1-based (row 1 is the header).
class CsvError : public std::runtime_error {
public:
    CsvError(std::size_t row, std::size_t column, const std::string& what);
    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_, column_;
};

/// Comma separated, double-quoted fields with "" as the quote escape, LF or
/// CRLF line ends. Every row must have as many fields as the header.
std::vector<std::vector<std::string>> parse_csv(std::istream& in);

struct CorpusSpec {
    std::string path;
    std::string id_column = "id";
    std::vector<std::string> attributes;  // empty means every other column
    std::vector<std::string> null_markers{"", "NULL"};
};

struct Corpus {
    std::vector<std::string> ids;  // distinct, in first-seen order
    RecordTable records;
    std::size_t duplicate_rows = 0;
    std::vector<std::string> warnings;
};

Corpus load_corpus(const CorpusSpec& spec, const DistanceTable& d);
Corpus load_corpus(std::istream& in, const CorpusSpec& spec, const DistanceTable& d);

}  // namespace pdm
