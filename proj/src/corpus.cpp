#include "pdm/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>
#include <unordered_set>

namespace pdm {

namespace {

std::string locate(std::size_t row, std::size_t column, const std::string& what) {
    return "row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

CsvError::CsvError(std::size_t row, std::size_t column, const std::string& what)
    : std::runtime_error(locate(row, column, what)), row_(row), column_(column) {}

std::vector<std::vector<std::string>> parse_csv(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    std::size_t line = 1, row_start_line = 1;
    bool quoted = false, after_quote = false, any = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        quoted = after_quote = false;
    };
    auto end_row = [&] {
        end_field();
        if (!rows.empty() && row.size() != rows.front().size())
            throw CsvError(rows.size() + 1, std::min(row.size(), rows.front().size()) + 1,
                           "expected " + std::to_string(rows.front().size()) + " fields, found " +
                               std::to_string(row.size()));
        rows.push_back(std::move(row));
        row.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                    after_quote = true;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        if (c == ',') {
            end_field();
            any = true;
        } else if (c == '\n' || (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')) {
            if (c == '\r') ++i;
            if (any || !field.empty() || !row.empty() || after_quote) end_row();
            ++line;
            row_start_line = line;
        } else if (after_quote) {
            throw CsvError(rows.size() + 1, row.size() + 1, "unexpected character after closing quote");
        } else if (c == '"') {
            if (!field.empty()) throw CsvError(rows.size() + 1, row.size() + 1, "quote inside an unquoted field");
            quoted = true;
            any = true;
        } else {
            field.push_back(c);
            any = true;
        }
    }
    if (quoted)
        throw CsvError(rows.size() + 1, row.size() + 1,
                       "unterminated quoted field starting on line " + std::to_string(row_start_line));
    if (any || !field.empty() || !row.empty()) end_row();
    return rows;
}

Corpus load_corpus(const CorpusSpec& spec, const DistanceTable& d) {
    std::ifstream in(spec.path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + spec.path);
    return load_corpus(in, spec, d);
}

Corpus load_corpus(std::istream& in, const CorpusSpec& spec, const DistanceTable& d) {
    const auto rows = parse_csv(in);
    if (rows.empty()) throw CsvError(1, 1, "missing header row");
    const auto& header = rows.front();
    const auto id_it = std::find(header.begin(), header.end(), spec.id_column);
    if (id_it == header.end()) throw CsvError(1, 1, "no column named \"" + spec.id_column + "\"");
    const std::size_t id_col = static_cast<std::size_t>(id_it - header.begin());

    std::vector<std::size_t> attr_cols;
    if (spec.attributes.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c)
            if (c != id_col) attr_cols.push_back(c);
    } else {
        for (const std::string& a : spec.attributes) {
            const auto it = std::find(header.begin(), header.end(), a);
            if (it == header.end()) throw CsvError(1, 1, "no column named \"" + a + "\"");
            attr_cols.push_back(static_cast<std::size_t>(it - header.begin()));
        }
    }

    Corpus corpus;
    std::unordered_set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const std::size_t row_no = r + 1;
        const std::string id = trim(rows[r][id_col]);
        if (id.empty()) throw CsvError(row_no, id_col + 1, "empty id");
        for (std::size_t k = 0; k < id.size(); ++k) {
            const char c = id[k];
            if (!Glyph::is_printable(c) || !d.contains(Glyph::from_char(c))) {
                char code[8];
                std::snprintf(code, sizeof code, "0x%02X", static_cast<unsigned char>(c));
                throw CsvError(row_no, id_col + 1,
                               "id character " + std::string(code) + " at offset " + std::to_string(k) +
                                   " is outside the charset");
            }
        }
        Record rec{id, {}};
        for (std::size_t c : attr_cols) {
            const std::string& v = rows[r][c];
            const bool is_null = std::find(spec.null_markers.begin(), spec.null_markers.end(), v) !=
                                 spec.null_markers.end();
            rec.attributes[header[c]] = is_null ? std::nullopt : std::optional<std::string>(v);
        }
        corpus.records.add(std::move(rec));
        if (seen.insert(id).second) {
            corpus.ids.push_back(id);
        } else {
            ++corpus.duplicate_rows;
        }
    }
    if (corpus.duplicate_rows > 0)
        corpus.warnings.push_back(std::to_string(corpus.duplicate_rows) +
                                  " duplicate id rows merged; each id is aligned once and keeps all its records");
    return corpus;
}

}  // namespace pdm
