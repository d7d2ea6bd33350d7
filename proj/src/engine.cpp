#include "pdm/engine.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <memory>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace pdm {

std::string_view engine_name(EngineKind k) {
    switch (k) {
        case EngineKind::Single: return "single";
        case EngineKind::Baseline: return "baseline";
        case EngineKind::PruningPlus: return "pruning+";
        case EngineKind::PruningMinus: return "pruning-";
    }
    return "unknown";
}

std::optional<EngineKind> parse_engine(std::string_view name) {
    for (EngineKind k : {EngineKind::Single, EngineKind::Baseline, EngineKind::PruningPlus, EngineKind::PruningMinus})
        if (engine_name(k) == name) return k;
    if (name == "pruning-plus") return EngineKind::PruningPlus;
    if (name == "pruning-minus") return EngineKind::PruningMinus;
    return std::nullopt;
}

void write_metrics_text(std::ostream& out, const RunMetrics& m) {
    out << "dp_merges " << m.dp_merges << '\n'
        << "alignments " << m.alignments << '\n'
        << "commits " << m.commits << '\n'
        << "refine_calls " << m.refine_calls << '\n'
        << "intervals_pruned " << m.intervals_pruned << '\n'
        << "safety_valve_triggers " << m.safety_valve_triggers << '\n'
        << "soundness_anomalies " << m.soundness_anomalies << '\n'
        << "wall_time_s " << std::setprecision(6) << m.wall_time.count() << '\n';
    for (const auto& [iters, freq] : m.refine_iterations_histogram)
        out << "refine_iterations." << iters << ' ' << freq << '\n';
}

std::string metrics_json(const RunMetrics& m, std::string_view engine) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [iters, freq] : m.refine_iterations_histogram) hist[std::to_string(iters)] = freq;
    nlohmann::json j{{"engine", engine},
                     {"dp_merges", m.dp_merges},
                     {"alignments", m.alignments},
                     {"commits", m.commits},
                     {"refine_calls", m.refine_calls},
                     {"intervals_pruned", m.intervals_pruned},
                     {"safety_valve_triggers", m.safety_valve_triggers},
                     {"soundness_anomalies", m.soundness_anomalies},
                     {"wall_time_s", m.wall_time.count()},
                     {"refine_iterations_histogram", hist}};
    return j.dump();
}

void write_trace(std::ostream& out, const std::vector<CommitRecord>& trace) {
    for (const CommitRecord& c : trace) {
        out << "commit " << c.merged << " = " << c.left << " + " << c.right << " size " << std::setprecision(17)
            << c.size << " refines " << c.refine_iterations << '\n';
    }
}

namespace {

using Clock = std::chrono::steady_clock;

void require_two(const std::vector<std::string>& strings) {
    if (strings.size() < 2) throw std::invalid_argument("need ≥2 strings");
}

MergeTree make_leaves(const std::vector<std::string>& strings, const DistanceTable& d) {
    MergeTree tree;
    for (const std::string& s : strings) tree.add_leaf(s, d);
    return tree;
}

}  // namespace

SingleMergeResult single_merge(const std::vector<std::string>& strings, const DistanceTable& d) {
    require_two(strings);
    const auto start = Clock::now();
    RunMetrics m;
    std::vector<Paradigm> leaves;
    leaves.reserve(strings.size());
    for (const std::string& s : strings) leaves.push_back(Paradigm::from_string(s, d));

    std::size_t bi = 0, bj = 1;
    double best = kInfinity;
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        for (std::size_t j = i + 1; j < leaves.size(); ++j) {
            const double s = merge_size(leaves[i].profile(), leaves[j].profile(), d);
            ++m.dp_merges;
            if (s < best) {
                best = s;
                bi = i;
                bj = j;
            }
        }
    }
    Paradigm current = merge(leaves[bi], leaves[bj], d).paradigm;
    ++m.alignments;
    ++m.commits;
    std::vector<std::size_t> order{bi, bj};
    std::vector<bool> used(leaves.size(), false);
    used[bi] = used[bj] = true;
    for (std::size_t round = 2; round < leaves.size(); ++round) {
        std::size_t pick = leaves.size();
        best = kInfinity;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            if (used[i]) continue;
            const double s = merge_size(current.profile(), leaves[i].profile(), d);
            ++m.dp_merges;
            if (pick == leaves.size() || s < best) {
                best = s;
                pick = i;
            }
        }
        current = merge(current, leaves[pick], d).paradigm;
        ++m.alignments;
        ++m.commits;
        used[pick] = true;
        order.push_back(pick);
    }
    m.wall_time = Clock::now() - start;
    return {std::move(current), m, std::move(order)};
}

EngineResult pairwise_merge_baseline(const std::vector<std::string>& strings, const DistanceTable& d,
                                     EngineObserver* observer) {
    require_two(strings);
    const auto start = Clock::now();
    EngineResult r{make_leaves(strings, d), {}, {}};
    RunMetrics& m = r.metrics;

    // An interval table whose intervals are all exact doubles as the pair
    // cache with O(live) minimum lookup.
    IntervalTable table;
    for (const TreeNode& n : r.tree.nodes()) table.add(n.id);
    const auto& nodes = r.tree.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            table.set_exact(nodes[i].id, nodes[j].id, merge_size(nodes[i].profile, nodes[j].profile, d));
            ++m.dp_merges;
        }
    }
    if (observer) observer->on_table_updated(table, r.tree);

    while (table.live_count() > 1) {
        const auto [key, size] = table.min_ub();
        ProfileMerge pm = align(r.tree.node(key.a).profile, r.tree.node(key.b).profile, d);
        ++m.alignments;
        if (pm.profile.size != size) throw std::logic_error("baseline: traceback size differs from cached size");
        const ParadigmId merged = r.tree.add_merge(key.a, key.b, std::move(pm));
        table.remove(key.a);
        table.remove(key.b);
        table.add(merged);
        const Profile& mp = r.tree.node(merged).profile;
        for (ParadigmId p : table.live()) {
            if (p == merged) continue;
            table.set_exact(merged, p, merge_size(mp, r.tree.node(p).profile, d));
            ++m.dp_merges;
        }
        ++m.commits;
        r.trace.push_back({key.a, key.b, merged, size, 0});
        if (observer) {
            observer->on_commit(r.trace.back(), r.tree);
            observer->on_table_updated(table, r.tree);
        }
    }
    m.soundness_anomalies = table.soundness_anomalies();
    m.wall_time = Clock::now() - start;
    return r;
}

EngineResult pruning_merge(const std::vector<std::string>& strings, const DistanceTable& d, bool use_commit_bounds,
                           EngineObserver* observer) {
    require_two(strings);
    const auto start = Clock::now();
    EngineResult r{make_leaves(strings, d), {}, {}};
    RunMetrics& m = r.metrics;
    IntervalTable table;
    for (const TreeNode& n : r.tree.nodes()) table.add(n.id);
    if (observer) observer->on_table_updated(table, r.tree);

    const ExactSizeFn exact = [&](ParadigmId a, ParadigmId b) {
        ++m.dp_merges;
        return merge_size(r.tree.node(a).profile, r.tree.node(b).profile, d);
    };

    while (table.live_count() > 1) {
        std::size_t iterations = 0;
        CriticalSet cr = identify_critical(table, true);
        m.intervals_pruned += cr.pruned;
        while (cr.intervals.size() > 1) {
            const ParadigmId pivot = select_pivot(cr, table);
            const RefineOutcome out = refine(cr, pivot, table, exact);
            ++m.refine_calls;
            ++iterations;
            if (out.exact_merges == 0) {
                // No progress from the pivot star: settle the critical set exactly.
                ++m.safety_valve_triggers;
                for (const PairKey& k : cr.intervals) {
                    if (!table.get(k.a, k.b).exact) table.set_exact(k.a, k.b, exact(k.a, k.b));
                }
            }
            if (observer) observer->on_table_updated(table, r.tree);
            cr = identify_critical(table, true);
            m.intervals_pruned += cr.pruned;
            if (out.exact_merges == 0 && cr.intervals.size() > 1) {
                bool all_exact = true;
                for (const PairKey& k : cr.intervals) all_exact = all_exact && table.get(k.a, k.b).exact;
                if (all_exact) break;
            }
        }
        ++m.refine_iterations_histogram[iterations];

        const PairKey key = cr.ub_min_pair;
        const BoundInterval iv = table.get(key.a, key.b);
        ProfileMerge pm = align(r.tree.node(key.a).profile, r.tree.node(key.b).profile, d);
        ++m.alignments;
        const double size = pm.profile.size;
        if (iv.exact) {
            if (size != iv.lb) ++m.soundness_anomalies;
        } else {
            // The commit's own DP is the first exact evaluation of this pair.
            ++m.dp_merges;
            if (!iv.brackets(size, 1e-9)) ++m.soundness_anomalies;
        }
        const ParadigmId merged = r.tree.add_merge(key.a, key.b, std::move(pm));
        on_merge_commit(merged, key.a, key.b, size, table, use_commit_bounds);
        ++m.commits;
        r.trace.push_back({key.a, key.b, merged, size, iterations});
        if (observer) {
            observer->on_commit(r.trace.back(), r.tree);
            if (table.live_count() > 1) observer->on_table_updated(table, r.tree);
        }
    }
    m.soundness_anomalies += table.soundness_anomalies();
    m.wall_time = Clock::now() - start;
    return r;
}

EngineResult run_engine(EngineKind kind, const std::vector<std::string>& strings, const DistanceTable& d,
                        EngineObserver* observer) {
    switch (kind) {
        case EngineKind::Baseline: return pairwise_merge_baseline(strings, d, observer);
        case EngineKind::PruningPlus: return pruning_merge(strings, d, true, observer);
        case EngineKind::PruningMinus: return pruning_merge(strings, d, false, observer);
        case EngineKind::Single: break;
    }
    throw std::invalid_argument("the single-merge engine does not build a merge tree");
}

PairSizeOracle make_exact_oracle(const MergeTree& tree, const DistanceTable& d) {
    auto cache = std::make_shared<std::map<PairKey, double>>();
    return [&tree, &d, cache](ParadigmId a, ParadigmId b) {
        const PairKey k = PairKey::of(a, b);
        auto it = cache->find(k);
        if (it != cache->end()) return it->second;
        const double s = merge_size(tree.node(k.a).profile, tree.node(k.b).profile, d);
        cache->emplace(k, s);
        return s;
    };
}

MinimalityReport verify_local_minimality(const MergeTree& tree, const PairSizeOracle& oracle) {
    MinimalityReport report;
    std::vector<ParadigmId> live;
    for (const TreeNode& n : tree.nodes())
        if (n.is_leaf()) live.push_back(n.id);
    std::size_t commit = 0;
    for (const TreeNode& n : tree.nodes()) {
        if (n.is_leaf()) continue;
        const ParadigmId a = *n.left, b = *n.right;
        const double committed = oracle(a, b);
        for (ParadigmId p : live) {
            if (p == a || p == b) continue;
            for (ParadigmId member : {a, b}) {
                const double alt = oracle(member, p);
                if (committed > alt) {
                    report.ok = false;
                    report.violations.push_back({commit, PairKey::of(a, b), p, committed, alt});
                }
            }
        }
        live.erase(std::remove_if(live.begin(), live.end(), [&](ParadigmId p) { return p == a || p == b; }),
                   live.end());
        live.push_back(n.id);
        ++commit;
    }
    return report;
}

}  // namespace pdm
