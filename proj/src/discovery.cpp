#include "pdm/discovery.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace pdm {

void RecordTable::add(Record r) {
    for (const auto& [name, value] : r.attributes) {
        if (std::find(attributes_.begin(), attributes_.end(), name) == attributes_.end()) attributes_.push_back(name);
    }
    ++count_;
    by_id_[r.id].push_back(std::move(r));
}

const std::vector<Record>* RecordTable::find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &it->second;
}

std::size_t RecordTable::non_null_count(const std::string& attribute) const {
    std::size_t n = 0;
    for (const auto& [id, recs] : by_id_) {
        for (const Record& r : recs) {
            auto it = r.attributes.find(attribute);
            if (it != r.attributes.end() && it->second) ++n;
        }
    }
    return n;
}

std::vector<Claim> build_claims(const Paradigm& p, std::size_t column, const std::string& attribute,
                                const RecordTable& records) {
    if (column < 1 || column > p.length()) throw std::out_of_range("build_claims: column out of range");
    std::vector<Claim> out;
    for (const Row& row : p.rows()) {
        const std::vector<Record>* recs = records.find(row.id);
        if (!recs) throw std::invalid_argument("build_claims: row \"" + row.id + "\" has no record");
        for (const Record& r : *recs) {
            auto it = r.attributes.find(attribute);
            if (it == r.attributes.end() || !it->second) continue;
            out.push_back({row.glyphs[column - 1], *it->second});
        }
    }
    return out;
}

namespace {

// Per key: count of each value.
std::map<Glyph, std::map<std::string, std::size_t>> tally(std::span<const Claim> claims) {
    std::map<Glyph, std::map<std::string, std::size_t>> t;
    for (const Claim& c : claims) ++t[c.key][c.value];
    return t;
}

std::size_t majority(const std::map<std::string, std::size_t>& values) {
    std::size_t best = 0;
    for (const auto& [v, n] : values) best = std::max(best, n);
    return best;
}

}  // namespace

std::size_t support(std::span<const Claim> claims) {
    std::size_t total = 0;
    for (const auto& [key, values] : tally(claims)) total += majority(values);
    return total;
}

double confidence(std::span<const Claim> claims) {
    if (claims.empty()) return 0.0;
    return static_cast<double>(support(claims)) / static_cast<double>(claims.size());
}

std::size_t diversity(std::span<const Claim> claims) {
    std::unordered_set<std::string> values;
    for (const Claim& c : claims) values.insert(c.value);
    return values.size();
}

std::size_t inner_support(std::span<const Claim> claims) {
    std::size_t best = 0;
    for (const auto& [key, values] : tally(claims)) best = std::max(best, majority(values));
    return best;
}

Measures measure(std::span<const Claim> claims) {
    return {support(claims), confidence(claims), diversity(claims), inner_support(claims), claims.size()};
}

namespace {

enum class ConfStatus : std::uint8_t { Unknown, Passed, Low };

struct Interned {
    // leaf id -> value ids of its records with a non-null value
    std::vector<std::vector<std::uint32_t>> leaf_values;
};

}  // namespace

DiscoveryReport discover(const MergeTree& tree, const RecordTable& records, const DistanceTable& d,
                         const DiscoveryOptions& options) {
    DiscoveryReport report;
    const Thresholds& th = options.thresholds;
    const std::vector<std::string>& attrs =
        options.attributes.empty() ? records.attribute_names() : options.attributes;
    const std::size_t n_attrs = attrs.size();
    const bool prune2 = options.prune_low_confidence_children && options.scope == ConfidenceScope::Claims;

    // Intern attribute values and weigh every leaf by its record count.
    std::vector<Interned> interned(n_attrs);
    std::vector<std::size_t> weight(tree.size(), 0);
    std::vector<std::size_t> dataset_counts(n_attrs, 0);
    for (std::size_t a = 0; a < n_attrs; ++a) {
        std::unordered_map<std::string, std::uint32_t> ids;
        interned[a].leaf_values.resize(tree.leaf_count());
        for (const TreeNode& n : tree.nodes()) {
            if (!n.is_leaf()) continue;
            const std::vector<Record>* recs = records.find(n.leaf_string);
            if (!recs) throw std::invalid_argument("discover: leaf \"" + n.leaf_string + "\" has no record");
            weight[n.id] = recs->size();
            for (const Record& r : *recs) {
                auto it = r.attributes.find(attrs[a]);
                if (it == r.attributes.end() || !it->second) continue;
                auto [slot, fresh] = ids.try_emplace(*it->second, static_cast<std::uint32_t>(ids.size()));
                interned[a].leaf_values[n.id].push_back(slot->second);
            }
        }
    }
    for (std::size_t a = 0; a < n_attrs; ++a) dataset_counts[a] = records.non_null_count(attrs[a]);
    if (n_attrs == 0) {
        for (const TreeNode& n : tree.nodes()) {
            if (!n.is_leaf()) continue;
            const std::vector<Record>* recs = records.find(n.leaf_string);
            if (!recs) throw std::invalid_argument("discover: leaf \"" + n.leaf_string + "\" has no record");
            weight[n.id] = recs->size();
        }
    }
    for (const TreeNode& n : tree.nodes())
        if (!n.is_leaf()) weight[n.id] = weight[*n.left] + weight[*n.right];

    std::unordered_map<ParadigmId, std::vector<ConfStatus>> status;
    std::unordered_map<std::uint64_t, std::size_t> counts;
    std::vector<std::size_t> key_best(d.glyph_count());
    std::vector<bool> value_seen;

    for (const TreeNode& n : tree.nodes()) {
        if (weight[n.id] <= th.support_min) {
            ++report.nodes_skipped_by_cardinality;
            continue;
        }
        const std::size_t length = n.profile.length();
        const auto leaves = tree.leaves_under(n.id);
        const auto sources = tree.column_sources(n.id);
        std::vector<ConfStatus> mine(length * n_attrs, ConfStatus::Unknown);
        const std::vector<ConfStatus>* left_status = nullptr;
        const std::vector<ConfStatus>* right_status = nullptr;
        if (!n.is_leaf()) {
            if (auto it = status.find(*n.left); it != status.end()) left_status = &it->second;
            if (auto it = status.find(*n.right); it != status.end()) right_status = &it->second;
        }
        const CompactPattern pattern = compact(n.profile, d);

        for (std::size_t col = 0; col < length; ++col) {
            for (std::size_t a = 0; a < n_attrs; ++a) {
                bool skip = false;
                if (prune2 && left_status && right_status) {
                    const AlignStep st = n.alignment.steps()[col];
                    skip = st.left >= 0 && st.right >= 0 &&
                           (*left_status)[static_cast<std::size_t>(st.left) * n_attrs + a] == ConfStatus::Low &&
                           (*right_status)[static_cast<std::size_t>(st.right) * n_attrs + a] == ConfStatus::Low;
                }
                if (skip && !options.validate_pruning) {
                    mine[col * n_attrs + a] = ConfStatus::Low;
                    ++report.cells_skipped_by_children;
                    continue;
                }

                counts.clear();
                std::size_t n_claims = 0;
                for (std::size_t r = 0; r < leaves.size(); ++r) {
                    const std::int32_t src = sources[r][col];
                    if (src < 0 && !options.null_keys) continue;
                    const std::size_t key =
                        src >= 0 ? d.index_of(Glyph::from_char(tree.node(leaves[r]).leaf_string[src])) : 0;
                    for (std::uint32_t v : interned[a].leaf_values[leaves[r]]) {
                        ++counts[(static_cast<std::uint64_t>(key) << 32) | v];
                        ++n_claims;
                    }
                }
                std::fill(key_best.begin(), key_best.end(), 0);
                std::size_t distinct = 0;
                value_seen.assign(value_seen.size(), false);
                for (const auto& [packed, c] : counts) {
                    const std::size_t key = packed >> 32;
                    const std::uint32_t v = static_cast<std::uint32_t>(packed & 0xffffffffu);
                    key_best[key] = std::max(key_best[key], c);
                    if (v >= value_seen.size()) value_seen.resize(v + 1, false);
                    if (!value_seen[v]) {
                        value_seen[v] = true;
                        ++distinct;
                    }
                }
                Measures m;
                m.claims = n_claims;
                for (std::size_t k : key_best) {
                    m.support += k;
                    m.inner_support = std::max(m.inner_support, k);
                }
                m.diversity = distinct;
                const std::size_t denom = options.scope == ConfidenceScope::Claims ? n_claims : dataset_counts[a];
                m.confidence = denom == 0 ? 0.0 : static_cast<double>(m.support) / static_cast<double>(denom);

                if (skip) {
                    ++report.cells_skipped_by_children;
                    if (m.confidence >= th.confidence_min)
                        report.findings.push_back({n.id, col + 1, attrs[a], m});
                    mine[col * n_attrs + a] = ConfStatus::Low;
                    continue;
                }
                ++report.cells_evaluated;
                const bool conf_ok = m.confidence >= th.confidence_min;
                mine[col * n_attrs + a] = conf_ok ? ConfStatus::Passed : ConfStatus::Low;
                if (conf_ok && m.support >= th.support_min && m.diversity >= th.diversity_min &&
                    m.inner_support >= th.inner_support_min) {
                    report.rules.push_back({n.id, col + 1, attrs[a], m.support, m.confidence, m.diversity,
                                            m.inner_support, pattern.render_marked(col)});
                }
            }
        }
        if (!n.is_leaf()) {
            status.erase(*n.left);
            status.erase(*n.right);
        }
        status.emplace(n.id, std::move(mine));
    }
    // Nodes are visited in id order, columns and attributes in order, so the
    // list is already sorted by (node, column); attribute order follows the
    // attribute list.
    std::stable_sort(report.rules.begin(), report.rules.end(), [](const Dependency& x, const Dependency& y) {
        if (x.node != y.node) return x.node < y.node;
        if (x.column != y.column) return x.column < y.column;
        return x.attribute < y.attribute;
    });
    return report;
}

std::string render_rule(const Dependency& dep) {
    char conf[32];
    std::snprintf(conf, sizeof conf, "%.4f", dep.confidence);
    return dep.pattern + " → " + dep.attribute + "  support=" + std::to_string(dep.support) +
           " confidence=" + conf + " diversity=" + std::to_string(dep.diversity) +
           " inner_support=" + std::to_string(dep.inner_support);
}

std::string rule_json(const Dependency& dep) {
    nlohmann::json j{{"node", dep.node},
                     {"column", dep.column},
                     {"attribute", dep.attribute},
                     {"pattern", dep.pattern},
                     {"support", dep.support},
                     {"confidence", dep.confidence},
                     {"diversity", dep.diversity},
                     {"inner_support", dep.inner_support}};
    return j.dump();
}

}  // namespace pdm
