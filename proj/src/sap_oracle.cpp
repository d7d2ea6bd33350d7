#include "pdm/sap_oracle.hpp"

#include <limits>
#include <stdexcept>

namespace pdm {

SapSolution exact_sap_oracle(const std::vector<std::string>& strings, const DistanceTable& d,
                             std::size_t max_total_length) {
    const std::size_t k = strings.size();
    if (k == 0) throw std::invalid_argument("exact_sap_oracle needs at least one string");
    if (k > 16) throw std::length_error("exact_sap_oracle supports at most 16 strings");
    std::size_t total = 0;
    for (const std::string& s : strings) {
        if (s.empty()) throw std::invalid_argument("exact_sap_oracle: empty string");
        total += s.size();
    }
    if (total > max_total_length) {
        throw std::length_error("exact_sap_oracle refuses: total length " + std::to_string(total) +
                                " exceeds the guard of " + std::to_string(max_total_length) +
                                " (the search is exponential in the number of strings)");
    }

    std::vector<std::vector<std::size_t>> idx(k);
    for (std::size_t s = 0; s < k; ++s)
        for (char c : strings[s]) idx[s].push_back(d.index_of(Glyph::from_char(c)));

    // Mixed-radix encoding of the position vector.
    std::vector<std::size_t> radix(k), weight(k);
    std::size_t states = 1;
    for (std::size_t s = 0; s < k; ++s) {
        radix[s] = strings[s].size() + 1;
        weight[s] = states;
        states *= radix[s];
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best(states, inf);
    std::vector<std::uint32_t> via(states, 0);  // subset mask used to reach the state
    best[0] = 0.0;

    std::vector<std::size_t> pos(k);
    const std::uint32_t full = (std::uint32_t{1} << k) - 1;
    // States are visited in increasing code order; every transition advances
    // at least one position, so predecessors always come first.
    for (std::size_t code = 0; code < states; ++code) {
        if (best[code] == inf) continue;
        std::size_t rem = code;
        std::uint32_t open = 0;
        for (std::size_t s = 0; s < k; ++s) {
            pos[s] = rem % radix[s];
            rem /= radix[s];
            if (pos[s] < strings[s].size()) open |= std::uint32_t{1} << s;
        }
        for (std::uint32_t sub = open; sub; sub = (sub - 1) & open) {
            GlyphMask col;
            std::size_t next = code;
            for (std::size_t s = 0; s < k; ++s) {
                if (sub & (std::uint32_t{1} << s)) {
                    col.set(idx[s][pos[s]]);
                    next += weight[s];
                }
            }
            if (sub != full) col.set(0);
            const double cost = best[code] + diameter(col, d);
            if (cost < best[next]) {
                best[next] = cost;
                via[next] = sub;
            }
        }
    }

    const std::size_t goal = states - 1;
    std::vector<std::vector<Glyph>> columns;  // reversed
    std::size_t code = goal;
    while (code != 0) {
        const std::uint32_t sub = via[code];
        std::size_t rem = code;
        for (std::size_t s = 0; s < k; ++s) {
            pos[s] = rem % radix[s];
            rem /= radix[s];
        }
        std::vector<Glyph> col(k, Glyph::null());
        for (std::size_t s = 0; s < k; ++s) {
            if (sub & (std::uint32_t{1} << s)) {
                col[s] = Glyph::from_char(strings[s][pos[s] - 1]);
                code -= weight[s];
            }
        }
        columns.push_back(std::move(col));
    }

    std::vector<Row> rows(k);
    for (std::size_t s = 0; s < k; ++s) {
        rows[s].id = strings[s];
        for (auto it = columns.rbegin(); it != columns.rend(); ++it) rows[s].glyphs.push_back((*it)[s]);
    }
    Paradigm p = Paradigm::from_rows(std::move(rows), d);
    return {std::move(p), best[goal]};
}

}  // namespace pdm
