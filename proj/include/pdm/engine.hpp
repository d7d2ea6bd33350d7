#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdm/bounds.hpp"
#include "pdm/merge_tree.hpp"
#include "pdm/paradigm.hpp"

namespace pdm {

enum class EngineKind { Single, Baseline, PruningPlus, PruningMinus };

std::string_view engine_name(EngineKind k);
std::optional<EngineKind> parse_engine(std::string_view name);

struct RunMetrics {
    std::size_t dp_merges = 0;       // exact size evaluations (DP runs)
    std::size_t alignments = 0;      // traceback passes that build committed paradigms
    std::size_t commits = 0;
    std::size_t refine_calls = 0;
    std::size_t intervals_pruned = 0;
    std::size_t safety_valve_triggers = 0;
    std::size_t soundness_anomalies = 0;
    std::map<std::size_t, std::size_t> refine_iterations_histogram;  // refines per commit -> frequency
    std::chrono::duration<double> wall_time{0};
};

/// Flat `key value` lines.
void write_metrics_text(std::ostream& out, const RunMetrics& m);
std::string metrics_json(const RunMetrics& m, std::string_view engine);

struct CommitRecord {
    ParadigmId left = 0;
    ParadigmId right = 0;
    ParadigmId merged = 0;
    double size = 0.0;
    std::size_t refine_iterations = 0;
};

void write_trace(std::ostream& out, const std::vector<CommitRecord>& trace);

/// Hooks for instrumented runs. Callbacks fire after every change to the
/// interval table (initialization, each refine, each commit).
class EngineObserver {
public:
    virtual ~EngineObserver() = default;
    virtual void on_table_updated(const IntervalTable& /*table*/, const MergeTree& /*tree*/) {}
    virtual void on_commit(const CommitRecord& /*commit*/, const MergeTree& /*tree*/) {}
};

struct EngineResult {
    MergeTree tree;
    RunMetrics metrics;
    std::vector<CommitRecord> trace;
};

struct SingleMergeResult {
    Paradigm paradigm;
    RunMetrics metrics;
    std::vector<std::size_t> order;  // input indices in absorption order
};

/// Greedy growth of one paradigm: the best pair first, then one string at a
/// time, each time the one giving the smallest merged size.
SingleMergeResult single_merge(const std::vector<std::string>& strings, const DistanceTable& d);

/// Hierarchical merging of the exact minimum pair at every step, with every
/// live pair's size cached; (N-1)² size evaluations in total.
EngineResult pairwise_merge_baseline(const std::vector<std::string>& strings, const DistanceTable& d,
                                     EngineObserver* observer = nullptr);

/// Bound-based merging with critical-set refinement and independency
/// pruning. `use_commit_bounds` selects Pruning+ (bounds for new
/// paradigms from monotonicity and the pseudo-triangle inequality) versus
/// Pruning- (new intervals start at [0, +inf]).
EngineResult pruning_merge(const std::vector<std::string>& strings, const DistanceTable& d, bool use_commit_bounds,
                           EngineObserver* observer = nullptr);

/// Runs the chosen hierarchical engine. Single is not hierarchical and is
/// rejected here.
EngineResult run_engine(EngineKind kind, const std::vector<std::string>& strings, const DistanceTable& d,
                        EngineObserver* observer = nullptr);

using PairSizeOracle = std::function<double(ParadigmId, ParadigmId)>;

/// Memoized exact merge sizes between any two tree nodes.
PairSizeOracle make_exact_oracle(const MergeTree& tree, const DistanceTable& d);

struct MinimalityViolation {
    std::size_t commit_index;
    PairKey committed;
    ParadigmId competitor;
    double committed_size;
    double competitor_size;
};

struct MinimalityReport {
    bool ok = true;
    std::vector<MinimalityViolation> violations;
};

/// Replays the commits of `tree` in order and checks that each committed
/// pair was no larger than any merge of either member with another live
/// paradigm at that moment.
MinimalityReport verify_local_minimality(const MergeTree& tree, const PairSizeOracle& oracle);

}  // namespace pdm
