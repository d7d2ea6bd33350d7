#include "pdm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdm {

std::size_t IntervalTable::slot_of(ParadigmId id) const {
    if (id >= id_slot_.size() || id_slot_[id] < 0) {
        throw std::out_of_range("paradigm " + std::to_string(id) + " is not live in the interval table");
    }
    return static_cast<std::size_t>(id_slot_[id]);
}

bool IntervalTable::is_live(ParadigmId id) const { return id < id_slot_.size() && id_slot_[id] >= 0; }

std::vector<ParadigmId> IntervalTable::live() const {
    std::vector<ParadigmId> out;
    out.reserve(live_count_);
    for (std::size_t s = 0; s < slot_id_.size(); ++s)
        if (alive_[s]) out.push_back(slot_id_[s]);
    std::sort(out.begin(), out.end());
    return out;
}

void IntervalTable::grow_to(std::size_t slots) {
    slot_id_.resize(slots, 0);
    alive_.resize(slots, false);
    row_min_.resize(slots);
    cells_.resize(slots * (slots - 1) / 2);
}

void IntervalTable::offer(std::size_t s, std::size_t t) {
    const BoundInterval& c = cell(s, t);
    const PairKey k = PairKey::of(slot_id_[s], slot_id_[t]);
    if (better(c.ub, k, row_min_[s])) row_min_[s] = {c.ub, k, static_cast<std::int64_t>(t)};
}

void IntervalTable::recompute_row(std::size_t s) {
    row_min_[s] = RowMin{};
    for (std::size_t t = 0; t < slot_id_.size(); ++t)
        if (t != s && alive_[t]) offer(s, t);
}

void IntervalTable::add(ParadigmId id) {
    if (is_live(id)) throw std::invalid_argument("paradigm " + std::to_string(id) + " is already live");
    std::size_t s;
    if (!free_slots_.empty()) {
        s = free_slots_.back();
        free_slots_.pop_back();
    } else {
        s = slot_id_.size();
        grow_to(s + 1);
    }
    if (id >= id_slot_.size()) id_slot_.resize(static_cast<std::size_t>(id) + 1, -1);
    id_slot_[id] = static_cast<std::int64_t>(s);
    slot_id_[s] = id;
    alive_[s] = true;
    ++live_count_;
    row_min_[s] = RowMin{};
    for (std::size_t t = 0; t < slot_id_.size(); ++t) {
        if (t == s || !alive_[t]) continue;
        cell(s, t) = BoundInterval{};
        offer(s, t);
        offer(t, s);
    }
}

void IntervalTable::remove(ParadigmId id) {
    const std::size_t s = slot_of(id);
    alive_[s] = false;
    id_slot_[id] = -1;
    free_slots_.push_back(s);
    --live_count_;
    for (std::size_t t = 0; t < slot_id_.size(); ++t)
        if (alive_[t] && row_min_[t].partner == static_cast<std::int64_t>(s)) recompute_row(t);
}

const BoundInterval& IntervalTable::get(ParadigmId x, ParadigmId y) const {
    if (x == y) throw std::invalid_argument("interval of a paradigm with itself");
    return cell(slot_of(x), slot_of(y));
}

bool IntervalTable::tighten(ParadigmId x, ParadigmId y, double lb, double ub) {
    if (x == y) throw std::invalid_argument("interval of a paradigm with itself");
    const std::size_t s = slot_of(x), t = slot_of(y);
    BoundInterval& c = cell(s, t);
    if (c.exact) return false;
    bool changed = false;
    if (lb > c.lb) {
        c.lb = lb;
        changed = true;
    }
    if (ub < c.ub) {
        c.ub = ub;
        changed = true;
    }
    if (c.lb > c.ub) {
        // Crossed bounds mean one of them was unsound.
        ++anomalies_;
        c.lb = c.ub;
    }
    if (c.lb == c.ub) c.exact = true;
    if (changed) {
        offer(s, t);
        offer(t, s);
    }
    return changed;
}

void IntervalTable::set_exact(ParadigmId x, ParadigmId y, double size) {
    if (x == y) throw std::invalid_argument("interval of a paradigm with itself");
    const std::size_t s = slot_of(x), t = slot_of(y);
    BoundInterval& c = cell(s, t);
    const double slack = 1e-9 * std::max(1.0, std::abs(size));
    if (!c.brackets(size, slack)) ++anomalies_;
    c.lb = c.ub = size;
    c.exact = true;
    offer(s, t);
    offer(t, s);
}

std::pair<PairKey, double> IntervalTable::min_ub() const {
    if (live_count_ < 2) throw std::logic_error("min_ub needs at least two live paradigms");
    const RowMin* best = nullptr;
    for (std::size_t s = 0; s < slot_id_.size(); ++s) {
        if (!alive_[s]) continue;
        const RowMin& m = row_min_[s];
        if (!best || m.ub < best->ub || (m.ub == best->ub && m.key < best->key)) best = &m;
    }
    return {best->key, best->ub};
}

IntervalTable init_intervals(const std::vector<ParadigmId>& paradigms) {
    IntervalTable t;
    for (ParadigmId id : paradigms) t.add(id);
    return t;
}

CriticalSet identify_critical(const IntervalTable& table, bool independency) {
    CriticalSet cr;
    const auto [um, ub_min] = table.min_ub();
    cr.ub_min = ub_min;
    cr.ub_min_pair = um;

    auto consider = [&](const PairKey& k, const BoundInterval& iv) {
        const bool tied_exact = iv.exact && iv.lb == ub_min;
        if (k == um || (iv.lb <= ub_min && !tied_exact)) {
            cr.intervals.push_back(k);
        } else {
            ++cr.pruned;
        }
    };

    if (independency) {
        for (ParadigmId p : table.live()) {
            if (p != um.a) consider(PairKey::of(um.a, p), table.get(um.a, p));
            if (p != um.a && p != um.b) consider(PairKey::of(um.b, p), table.get(um.b, p));
        }
    } else {
        table.for_each(consider);
    }
    std::sort(cr.intervals.begin(), cr.intervals.end());
    for (const PairKey& k : cr.intervals) {
        cr.involved.push_back(k.a);
        cr.involved.push_back(k.b);
    }
    std::sort(cr.involved.begin(), cr.involved.end());
    cr.involved.erase(std::unique(cr.involved.begin(), cr.involved.end()), cr.involved.end());
    return cr;
}

double pivot_score(ParadigmId p, const CriticalSet& cr, const IntervalTable& table) {
    double score = 0.0;
    for (const PairKey& k : cr.intervals)
        if (k.touches(p)) score += table.get(k.a, k.b).width();
    return score;
}

ParadigmId select_pivot(const CriticalSet& cr, const IntervalTable& table) {
    if (cr.involved.empty()) throw std::invalid_argument("select_pivot on an empty critical set");
    ParadigmId best = cr.involved.front();
    double best_score = pivot_score(best, cr, table);
    for (std::size_t i = 1; i < cr.involved.size(); ++i) {
        const double s = pivot_score(cr.involved[i], cr, table);
        if (s > best_score) {
            best = cr.involved[i];
            best_score = s;
        }
    }
    return best;
}

RefineOutcome refine(const CriticalSet& cr, ParadigmId pivot, IntervalTable& table, const ExactSizeFn& exact_size) {
    if (!std::binary_search(cr.involved.begin(), cr.involved.end(), pivot)) {
        throw std::invalid_argument("refine pivot is not involved in the critical set");
    }
    RefineOutcome out;
    std::vector<ParadigmId> others;
    for (ParadigmId p : cr.involved)
        if (p != pivot) others.push_back(p);

    // The exact sizes are independent of each other; evaluate first, then
    // apply in ascending id order.
    std::vector<ParadigmId> pending;
    for (ParadigmId p : others)
        if (!table.get(pivot, p).exact) pending.push_back(p);
    std::vector<double> sizes(pending.size());
    for (std::size_t i = 0; i < pending.size(); ++i) sizes[i] = exact_size(pivot, pending[i]);
    for (std::size_t i = 0; i < pending.size(); ++i) table.set_exact(pivot, pending[i], sizes[i]);
    out.exact_merges = pending.size();

    std::vector<double> star(others.size());
    for (std::size_t i = 0; i < others.size(); ++i) star[i] = table.get(pivot, others[i]).ub;
    for (std::size_t i = 0; i < others.size(); ++i) {
        for (std::size_t j = i + 1; j < others.size(); ++j) {
            const double lb = std::abs(star[i] - star[j]);
            const double ub = star[i] + star[j];
            if (table.tighten(others[i], others[j], lb, ub)) ++out.tightened;
        }
    }
    return out;
}

void on_merge_commit(ParadigmId merged, ParadigmId left, ParadigmId right, double merged_size,
                     IntervalTable& table, bool use_commit_bounds) {
    struct Pending {
        ParadigmId other;
        double lb, ub;
    };
    std::vector<Pending> pending;
    if (use_commit_bounds) {
        for (ParadigmId p : table.live()) {
            if (p == left || p == right) continue;
            const BoundInterval& l = table.get(left, p);
            const BoundInterval& r = table.get(right, p);
            pending.push_back({p, std::max({merged_size, l.lb, r.lb}),
                               std::min(l.ub + merged_size, r.ub + merged_size)});
        }
    }
    table.remove(left);
    table.remove(right);
    table.add(merged);
    for (const Pending& p : pending) table.tighten(merged, p.other, p.lb, p.ub);
}

}  // namespace pdm
