#pragma once

// Slow, direct reimplementations used to cross-check the library. Nothing
// here calls into the code under test.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Rows use '\0' for a gap.
constexpr char kGap = '\0';

using Dist = std::function<double(char, char)>;

inline int char_class(char c) {
    if (std::isdigit(static_cast<unsigned char>(c))) return 0;
    if (std::isalpha(static_cast<unsigned char>(c))) return 1;
    return 2;
}

// identical 0, same class 0.5, other class 1.5, gap 1.0
inline double default_distance(char a, char b) {
    if (a == b) return 0.0;
    if (a == kGap || b == kGap) return 1.0;
    return char_class(a) == char_class(b) ? 0.5 : 1.5;
}

inline double diameter(const std::vector<char>& glyphs, const Dist& d) {
    double best = 0.0;
    for (std::size_t i = 0; i < glyphs.size(); ++i)
        for (std::size_t j = i + 1; j < glyphs.size(); ++j) best = std::max(best, d(glyphs[i], glyphs[j]));
    return best;
}

inline double paradigm_size(const std::vector<std::string>& rows, const Dist& d) {
    if (rows.empty()) return 0.0;
    double total = 0.0;
    for (std::size_t c = 0; c < rows.front().size(); ++c) {
        std::vector<char> col;
        for (const std::string& r : rows) col.push_back(r[c]);
        total += diameter(col, d);
    }
    return total;
}

// Every way of interleaving the columns of two paradigms, each column used
// once and in order, with gaps filling the other side.
inline void enumerate_merges(const std::vector<std::string>& a, const std::vector<std::string>& b,
                             const std::function<void(const std::vector<std::string>&)>& visit) {
    const std::size_t n1 = a.front().size(), n2 = b.front().size();
    std::vector<std::string> rows(a.size() + b.size());
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
        if (i == n1 && j == n2) {
            visit(rows);
            return;
        }
        auto push = [&](int ai, int bj) {
            for (std::size_t r = 0; r < a.size(); ++r) rows[r].push_back(ai >= 0 ? a[r][ai] : kGap);
            for (std::size_t r = 0; r < b.size(); ++r) rows[a.size() + r].push_back(bj >= 0 ? b[r][bj] : kGap);
        };
        auto pop = [&] {
            for (std::string& r : rows) r.pop_back();
        };
        if (i < n1 && j < n2) {
            push(static_cast<int>(i), static_cast<int>(j));
            rec(i + 1, j + 1);
            pop();
        }
        if (j < n2) {
            push(-1, static_cast<int>(j));
            rec(i, j + 1);
            pop();
        }
        if (i < n1) {
            push(static_cast<int>(i), -1);
            rec(i + 1, j);
            pop();
        }
    };
    rec(0, 0);
}

inline double brute_merge_size(const std::vector<std::string>& a, const std::vector<std::string>& b, const Dist& d) {
    double best = 1e300;
    enumerate_merges(a, b, [&](const std::vector<std::string>& rows) { best = std::min(best, paradigm_size(rows, d)); });
    return best;
}

// Every placement of gaps into every string at target lengths from the
// longest string to the total length.
inline double brute_sap(const std::vector<std::string>& strings, const Dist& d) {
    std::size_t longest = 0, total = 0;
    for (const std::string& s : strings) {
        longest = std::max(longest, s.size());
        total += s.size();
    }
    double best = 1e300;
    std::vector<std::string> rows(strings.size());
    for (std::size_t len = longest; len <= total; ++len) {
        std::function<void(std::size_t)> place = [&](std::size_t k) {
            if (k == strings.size()) {
                // Skip all-gap columns; they do not change the size but are
                // not part of a valid paradigm either.
                for (std::size_t c = 0; c < len; ++c) {
                    bool all_gap = true;
                    for (const std::string& r : rows) all_gap = all_gap && r[c] == kGap;
                    if (all_gap) return;
                }
                best = std::min(best, paradigm_size(rows, d));
                return;
            }
            const std::string& s = strings[k];
            // choose positions of s's characters among len slots
            std::vector<std::size_t> pos(s.size());
            std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t idx, std::size_t from) {
                if (idx == s.size()) {
                    std::string r(len, kGap);
                    for (std::size_t t = 0; t < s.size(); ++t) r[pos[t]] = s[t];
                    rows[k] = r;
                    place(k + 1);
                    return;
                }
                for (std::size_t p = from; p + (s.size() - idx) <= len; ++p) {
                    pos[idx] = p;
                    choose(idx + 1, p + 1);
                }
            };
            choose(0, 0);
        };
        place(0);
    }
    return best;
}

inline std::size_t levenshtein(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

// Largest sub-multiset in which each key carries a single value. `counts`
// maps (key, value) to multiplicity.
inline std::size_t brute_support(const std::map<std::pair<int, int>, int>& counts) {
    std::vector<std::pair<std::pair<int, int>, int>> items(counts.begin(), counts.end());
    std::size_t best = 0;
    std::map<int, int> key_value;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx, std::size_t taken) {
        if (idx == items.size()) {
            best = std::max(best, taken);
            return;
        }
        const auto [kv, n] = items[idx];
        for (int take = 0; take <= n; ++take) {
            if (take > 0) {
                auto it = key_value.find(kv.first);
                if (it != key_value.end() && it->second != kv.second) break;
            }
            const bool fresh = take > 0 && !key_value.count(kv.first);
            if (fresh) key_value[kv.first] = kv.second;
            rec(idx + 1, taken + static_cast<std::size_t>(take));
            if (fresh) key_value.erase(kv.first);
        }
    };
    rec(0, 0);
    return best;
}

// Strings drawn from `alphabet`, lengths in [min_len, max_len].
inline std::string random_string(std::mt19937_64& rng, const std::string& alphabet, std::size_t min_len,
                                 std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len), ch(0, alphabet.size() - 1);
    std::string s(len(rng), ' ');
    for (char& c : s) c = alphabet[ch(rng)];
    return s;
}

}  // namespace oracle
