#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace pdm {

using ParadigmId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Unordered pair of paradigm ids, stored with a < b.
struct PairKey {
    ParadigmId a = 0;
    ParadigmId b = 0;

    static PairKey of(ParadigmId x, ParadigmId y) { return x < y ? PairKey{x, y} : PairKey{y, x}; }
    bool touches(ParadigmId p) const { return a == p || b == p; }
    bool shares_with(const PairKey& o) const { return touches(o.a) || touches(o.b); }
    ParadigmId other(ParadigmId p) const { return a == p ? b : a; }

    friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

/// Bracket [lb, ub] on size(P1 ⊎ P2).
struct BoundInterval {
    double lb = 0.0;
    double ub = kInfinity;
    bool exact = false;

    /// ub - lb, saturating at +inf for open intervals.
    double width() const { return ub == kInfinity ? kInfinity : ub - lb; }
    bool brackets(double size, double slack = 0.0) const { return lb - slack <= size && size <= ub + slack; }
};

/// One interval per unordered pair of live paradigms. Intervals only ever
/// tighten; the table tracks the per-row minimum upper bound so that the
/// global minimum costs O(live) instead of O(live²).
class IntervalTable {
public:
    IntervalTable() = default;

    /// Adds a live paradigm; its intervals to every other live paradigm start
    /// at [0, +inf].
    void add(ParadigmId id);
    /// Retires a paradigm and drops its intervals.
    void remove(ParadigmId id);

    bool is_live(ParadigmId id) const;
    /// Live ids, ascending.
    std::vector<ParadigmId> live() const;
    std::size_t live_count() const { return live_count_; }
    std::size_t interval_count() const { return live_count_ * (live_count_ - (live_count_ > 0)) / 2; }

    const BoundInterval& get(ParadigmId x, ParadigmId y) const;

    /// Raises lb and/or lowers ub where the candidates are tighter. Returns
    /// true if the interval changed. A collapsed interval (lb == ub) becomes
    /// exact.
    bool tighten(ParadigmId x, ParadigmId y, double lb, double ub);
    /// Records the exact size. A value outside the current bracket counts as
    /// a soundness anomaly; the value is still stored.
    void set_exact(ParadigmId x, ParadigmId y, double size);

    /// Interval with the lowest upper bound; ties go to the smallest pair
    /// key. Requires at least two live paradigms.
    std::pair<PairKey, double> min_ub() const;

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t t = 0; t < slot_id_.size(); ++t) {
            if (!alive_[t]) continue;
            for (std::size_t s = 0; s < t; ++s) {
                if (!alive_[s]) continue;
                fn(PairKey::of(slot_id_[s], slot_id_[t]), cell(s, t));
            }
        }
    }

    std::size_t soundness_anomalies() const { return anomalies_; }

private:
    struct RowMin {
        double ub = kInfinity;
        PairKey key{};
        std::int64_t partner = -1;  // slot
    };

    static std::size_t tri(std::size_t s, std::size_t t) { return t * (t - 1) / 2 + s; }  // s < t
    BoundInterval& cell(std::size_t s, std::size_t t) { return s < t ? cells_[tri(s, t)] : cells_[tri(t, s)]; }
    const BoundInterval& cell(std::size_t s, std::size_t t) const {
        return s < t ? cells_[tri(s, t)] : cells_[tri(t, s)];
    }
    std::size_t slot_of(ParadigmId id) const;
    bool better(double ub, const PairKey& k, const RowMin& m) const {
        return m.partner < 0 || ub < m.ub || (ub == m.ub && k < m.key);
    }
    void offer(std::size_t s, std::size_t t);
    void recompute_row(std::size_t s);
    void grow_to(std::size_t slots);

    std::vector<ParadigmId> slot_id_;
    std::vector<bool> alive_;
    std::vector<std::size_t> free_slots_;
    std::vector<std::int64_t> id_slot_;  // indexed by id, -1 when not live
    std::vector<BoundInterval> cells_;
    std::vector<RowMin> row_min_;
    std::size_t live_count_ = 0;
    std::size_t anomalies_ = 0;
};

IntervalTable init_intervals(const std::vector<ParadigmId>& paradigms);

struct CriticalSet {
    std::vector<PairKey> intervals;      // ascending
    std::vector<ParadigmId> involved;    // ascending
    double ub_min = kInfinity;
    PairKey ub_min_pair{};
    std::size_t pruned = 0;              // candidates in scope rejected by lb > ub_min
};

/// Critical intervals for the current table. An interval is critical when
/// its lower bound does not exceed ub_min; exact intervals tied with ub_min
/// lose to the minimum-upper-bound interval on the pair-key tie-break. With
/// `independency`, only intervals sharing a paradigm with that interval are
/// considered.
CriticalSet identify_critical(const IntervalTable& table, bool independency);

/// Sum of widths of the critical intervals touching `p`.
double pivot_score(ParadigmId p, const CriticalSet& cr, const IntervalTable& table);
/// Highest score; ties go to the smallest id.
ParadigmId select_pivot(const CriticalSet& cr, const IntervalTable& table);

using ExactSizeFn = std::function<double(ParadigmId, ParadigmId)>;

struct RefineOutcome {
    std::size_t exact_merges = 0;
    std::size_t tightened = 0;
};

/// Single-pivot-star refinement: exact sizes from the pivot to every other
/// involved paradigm, then triangle bounds for every remaining pair.
RefineOutcome refine(const CriticalSet& cr, ParadigmId pivot, IntervalTable& table, const ExactSizeFn& exact_size);

/// Retires `left` and `right`, adds `merged` and initializes its intervals.
/// With `use_commit_bounds` the monotonicity and pseudo-triangle bounds
/// are applied; otherwise the new intervals stay [0, +inf].
void on_merge_commit(ParadigmId merged, ParadigmId left, ParadigmId right, double merged_size,
                     IntervalTable& table, bool use_commit_bounds);

}  // namespace pdm
