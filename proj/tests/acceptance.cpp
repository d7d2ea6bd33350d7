// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pdm/bounds.hpp"
#include "pdm/commands.hpp"
#include "pdm/discovery.hpp"
#include "pdm/engine.hpp"
#include "pdm/sap_oracle.hpp"
#include "pdm/synth.hpp"

using namespace pdm;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok, const std::string& detail,
            std::chrono::steady_clock::time_point started) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    std::printf("[%s] %2d %s (%s; %.2fs)\n", ok ? "PASS" : "FAIL", id, what, detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
}

const DistanceTable& default_table() {
    static const DistanceTable d = default_distance_table(DistanceTable::printable_ascii());
    return d;
}

std::vector<std::string> synthetic_ids(std::size_t n, std::size_t clusters, double sigma, std::uint64_t seed,
                                       std::size_t length = 20) {
    GenConfig g;
    g.count = n;
    g.clusters = clusters;
    g.sigma = sigma;
    g.seed = seed;
    g.length = length;
    std::vector<std::string> out;
    for (const GeneratedRecord& r : generate(g)) out.push_back(r.id);
    return out;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

void refine_example() {
    const auto t0 = std::chrono::steady_clock::now();
    IntervalTable t = init_intervals({0, 1, 2, 3, 4});
    const CriticalSet cr = identify_critical(t, false);
    const std::map<ParadigmId, double> star{{1, 1.5}, {2, 2.0}, {3, 2.0}, {4, 1.0}};
    const ParadigmId pivot = select_pivot(cr, t);
    refine(cr, 0, t, [&](ParadigmId, ParadigmId b) { return star.at(b); });
    struct Want {
        ParadigmId a, b;
        double lb, ub;
    };
    const Want want[] = {{1, 2, 0.5, 3.5}, {1, 3, 0.5, 3.5}, {1, 4, 0.5, 2.5},
                         {2, 3, 0.0, 4.0}, {2, 4, 1.0, 3.0}, {3, 4, 1.0, 3.0}};
    bool ok = pivot == 0;
    for (const Want& w : want) ok = ok && t.get(w.a, w.b).lb == w.lb && t.get(w.a, w.b).ub == w.ub;
    for (const auto& [p, s] : star) ok = ok && t.get(0, p).exact && t.get(0, p).lb == s;
    report(1, "single pivot star refinement example", ok, "pivot 0, all ten intervals as expected", t0);
}

void eta_example() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Claim> claims;
    for (char k : std::string("aababacd")) claims.push_back({Glyph::from_char(k), std::string(1, k)});
    const std::size_t eta = inner_support(claims);
    report(2, "inner support worked example", eta == 4, "eta=" + std::to_string(eta), t0);
}

void compaction() {
    const auto t0 = std::chrono::steady_clock::now();
    const DistanceTable& d = default_table();
    const EngineResult r = pairwise_merge_baseline({"SL410", "T520i", "T560"}, d);
    const std::string got = compact(r.tree.materialize(r.tree.root(), d), d).render();
    report(3, "Thinkpad compaction", got == "{ST}[L]{45}{126}0[i]", got, t0);
}

void baseline_law() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    std::mt19937_64 rng(4);
    for (std::size_t n : {3u, 10u, 100u, 500u}) {
        std::vector<std::string> ids;
        for (std::size_t k = 0; k < n; ++k) ids.push_back(oracle::random_string(rng, "abcdXYZ0123-_", 4, 16));
        const RunMetrics m = pairwise_merge_baseline(ids, default_table()).metrics;
        ok = ok && m.dp_merges == (n - 1) * (n - 1);
        detail += (detail.empty() ? "" : " ") + std::to_string(n) + ":" + std::to_string(m.dp_merges);
    }
    report(4, "baseline evaluates (N-1)^2 sizes", ok, detail, t0);
}

DistanceTable random_grid_metric(std::mt19937_64& rng, const std::string& cs) {
    std::uniform_int_distribution<int> coord(0, 8);
    std::vector<std::array<int, 3>> pts(cs.size() + 1);
    for (auto& p : pts) p = {coord(rng), coord(rng), coord(rng)};
    DistanceTable d(cs, DistanceDefaults{});
    auto glyph = [&](std::size_t i) { return i == cs.size() ? Glyph::null() : Glyph::from_char(cs[i]); };
    for (std::size_t i = 0; i <= cs.size(); ++i)
        for (std::size_t j = i + 1; j <= cs.size(); ++j) {
            int s = 0;
            for (int k = 0; k < 3; ++k) s += std::abs(pts[i][k] - pts[j][k]);
            d.set(glyph(i), glyph(j), s * 0.25 + 0.25);
        }
    return d;
}

void oracle_gap() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(5);
    std::size_t below = 0, two_mismatch = 0, bad_metric = 0, two = 0, strict = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::string cs = "pqrs";
        const DistanceTable d = random_grid_metric(rng, cs);
        if (!validate_metric(d).ok) ++bad_metric;
        const std::size_t n = 2 + rng() % 4;
        std::vector<std::string> s;
        for (std::size_t k = 0; k < n; ++k) s.push_back(oracle::random_string(rng, cs, 1, 5));
        const EngineResult r = pairwise_merge_baseline(s, d);
        const double greedy = r.tree.node(r.tree.root()).profile.size;
        const double exact = exact_sap_oracle(s, d, 25).size;
        if (greedy < exact) ++below;
        if (greedy > exact) ++strict;
        if (n == 2) {
            ++two;
            if (greedy != exact) ++two_mismatch;
        }
    }
    report(5, "greedy size vs exact alignment oracle", below == 0 && two_mismatch == 0 && bad_metric == 0,
           "below=" + std::to_string(below) + " two-string mismatches=" + std::to_string(two_mismatch) + "/" +
               std::to_string(two) + " greedy>exact=" + std::to_string(strict) +
               " invalid metrics=" + std::to_string(bad_metric),
           t0);
}

void inequality_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    const DistanceTable& d = default_table();
    const std::string alphabet = "abcAB019-_/";
    if (!validate_metric(default_distance_table(alphabet)).ok) {
        report(6, "inequality suite", false, "default metric failed validation", t0);
        return;
    }
    std::mt19937_64 rng(6);
    const double eps = 1e-9;
    std::map<std::string, std::size_t> violations;
    auto check = [&](bool ok, const char* what) {
        if (!ok) ++violations[what];
    };
    auto random_paradigm = [&] {
        const std::size_t rows = 1 + rng() % 3;
        Paradigm p = Paradigm::from_string(oracle::random_string(rng, alphabet, 1, 7), d);
        for (std::size_t k = 1; k < rows; ++k)
            p = merge(p, Paradigm::from_string(oracle::random_string(rng, alphabet, 1, 7), d), d).paradigm;
        return p;
    };
    auto glyph_set = [&](std::size_t n) {
        std::vector<Glyph> g;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = rng() % (alphabet.size() + 1);
            g.push_back(i == alphabet.size() ? Glyph::null() : Glyph::from_char(alphabet[i]));
        }
        return g;
    };
    auto diam = [&](const std::vector<Glyph>& g) { return diameter(std::span<const Glyph>(g), d); };
    auto join = [](std::vector<Glyph> a, const std::vector<Glyph>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };

    const int triples = 1200;
    for (int trial = 0; trial < triples; ++trial) {
        const auto c1 = glyph_set(1 + rng() % 4), c2 = glyph_set(1 + rng() % 4), c3 = glyph_set(1 + rng() % 4);
        check(diam(c1) <= diam(join(c1, c2)) + eps, "diameter-monotone");
        check(diam(join(join(c1, c2), c3)) <= diam(join(c1, c2)) + diam(join(c2, c3)) + eps, "set-triangle");

        const Paradigm p1 = random_paradigm(), p2 = random_paradigm(), p3 = random_paradigm();
        const MergeResult m12 = merge(p1, p2, d);
        const double s12 = m12.size, s13 = merge_size(p1.profile(), p3.profile(), d),
                     s23 = merge_size(p2.profile(), p3.profile(), d);
        const double s12_3 = merge_size(m12.paradigm.profile(), p3.profile(), d);
        check(s12 + eps >= p1.size() && s12 + eps >= p2.size(), "size-monotone");
        check(s12_3 + eps >= s13 && s12_3 + eps >= s23, "sub-paradigm");
        check(s12_3 <= s13 + s12 + eps && s12_3 <= s23 + s12 + eps, "pseudo-triangle");
        check(s12 + s23 + eps >= s13, "triangle-upper");
        check(std::abs(s12 - s23) <= s13 + eps, "triangle-lower");
    }
    std::string detail = std::to_string(triples) + " triples";
    std::size_t total = 0;
    for (const auto& [what, n] : violations) {
        detail += " " + what + "=" + std::to_string(n);
        total += n;
    }
    if (total == 0) detail += ", no violations";
    report(6, "diameter and merge-size inequalities", total == 0, detail, t0);
}

// Checks every live interval against the exact size after each table update.
class ShadowOracle : public EngineObserver {
public:
    explicit ShadowOracle(const DistanceTable& d) : d_(d) {}

    void on_table_updated(const IntervalTable& table, const MergeTree& tree) override {
        ++updates_;
        table.for_each([&](const PairKey& k, const BoundInterval& iv) {
            ++checks_;
            if (!iv.brackets(exact(k, tree), 1e-9)) ++violations_;
        });
    }

    std::size_t updates_ = 0, checks_ = 0, violations_ = 0;

private:
    double exact(const PairKey& k, const MergeTree& tree) {
        auto [it, fresh] = cache_.try_emplace(k, 0.0);
        if (fresh) it->second = merge_size(tree.node(k.a).profile, tree.node(k.b).profile, d_);
        return it->second;
    }

    const DistanceTable& d_;
    std::map<PairKey, double> cache_;
};

void bound_soundness() {
    const auto t0 = std::chrono::steady_clock::now();
    ShadowOracle shadow(default_table());
    const EngineResult r = pruning_merge(synthetic_ids(60, 6, 0.05, 7), default_table(), true, &shadow);
    report(7, "interval soundness against shadow oracle (pruning+, N=60)",
           shadow.violations_ == 0 && shadow.updates_ > 0 && r.metrics.soundness_anomalies == 0,
           std::to_string(shadow.checks_) + " checks over " + std::to_string(shadow.updates_) +
               " updates, violations=" + std::to_string(shadow.violations_) +
               " anomalies=" + std::to_string(r.metrics.soundness_anomalies),
           t0);
}

void local_minimality() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ids = synthetic_ids(60, 6, 0.05, 8);
    std::size_t violations = 0;
    std::string detail;
    for (bool plus : {true, false}) {
        const EngineResult r = pruning_merge(ids, default_table(), plus);
        const MinimalityReport rep = verify_local_minimality(r.tree, make_exact_oracle(r.tree, default_table()));
        violations += rep.violations.size();
        detail += std::string(plus ? "pruning+ " : " pruning- ") + std::to_string(r.metrics.commits) +
                  " commits, " + std::to_string(rep.violations.size()) + " violations" + (plus ? ";" : "");
    }
    report(8, "local minimality of commits (N=60)", violations == 0, detail, t0);
}

void efficiency() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ids = synthetic_ids(500, 10, 0.01, 9);
    const RunMetrics plus = pruning_merge(ids, default_table(), true).metrics;
    const std::size_t base = 499u * 499u;
    const double ratio = static_cast<double>(plus.dp_merges) / static_cast<double>(base);
    std::string detail = "pruning+ " + std::to_string(plus.dp_merges) + " vs baseline " + std::to_string(base) +
                         fmt(", ratio %.4f", ratio);
    if (ratio > 0.1) detail += " (reduction weaker than an order of magnitude)";
    report(9, "pruning+ needs at most half the baseline size evaluations", 2 * plus.dp_merges <= base, detail, t0);
}

void planted_recovery() {
    const auto t0 = std::chrono::steady_clock::now();
    GenConfig g;
    g.count = 1000;
    g.clusters = 20;
    g.length = 12;
    g.sigma = 0.01;
    g.seed = 10;
    g.plant = PlantSpec{3, "grade", {{'P', "p"}, {'Q', "q"}, {'R', "r"}, {'S', "s"}, {'T', "t"}, {'U', "u"}}};
    const auto gen = generate(g);
    std::ostringstream csv;
    write_csv(csv, gen, g);
    std::istringstream in(csv.str());
    const DistanceTable& d = default_table();
    const Corpus corpus = load_corpus(in, CorpusSpec{}, d);

    std::map<std::string, std::set<std::int32_t>> planted_at;
    for (const GeneratedRecord& r : gen) planted_at[r.id].insert(static_cast<std::int32_t>(*r.planted_position));

    DiscoveryOptions opt;
    opt.thresholds = {10, 0.9, 5, 5};
    opt.attributes = {"grade"};
    std::ostringstream rules;
    const DiscoverOutcome out = cmd_discover(corpus, d, EngineKind::PruningPlus, opt, rules);

    // Rebuild the same tree to map rule columns back to string positions.
    const EngineResult tree = pruning_merge(corpus.ids, d, true);
    std::size_t exact_rules = 0, on_planted = 0;
    for (const Dependency& dep : out.report.rules) {
        if (dep.confidence != 1.0) continue;
        ++exact_rules;
        const auto leaves = tree.tree.leaves_under(dep.node);
        const auto sources = tree.tree.column_sources(dep.node);
        bool all = true;
        for (std::size_t r = 0; r < leaves.size() && all; ++r) {
            const std::string& id = tree.tree.node(leaves[r]).leaf_string;
            all = planted_at[id].count(sources[r][dep.column - 1]) > 0;
        }
        on_planted += all;
    }
    report(10, "planted rule recovered at confidence 1.0", on_planted > 0,
           std::to_string(out.report.rules.size()) + " grade rules, " + std::to_string(exact_rules) +
               " at confidence 1.0, " + std::to_string(on_planted) + " on the planted column",
           t0);
}

void support_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    // Every multiset of at most 12 claims over 3 keys x 3 values.
    std::array<int, 9> counts{};
    std::size_t tested = 0, mismatches = 0;
    std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int left) {
        if (slot == counts.size()) {
            std::map<std::pair<int, int>, int> m;
            std::vector<Claim> claims;
            for (std::size_t s = 0; s < counts.size(); ++s) {
                if (counts[s] == 0) continue;
                const int key = static_cast<int>(s / 3), value = static_cast<int>(s % 3);
                m[{key, value}] = counts[s];
                for (int c = 0; c < counts[s]; ++c)
                    claims.push_back({Glyph::from_char(static_cast<char>('a' + key)), std::to_string(value)});
            }
            ++tested;
            if (support(claims) != oracle::brute_support(m)) ++mismatches;
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[slot] = c;
            rec(slot + 1, left - c);
        }
        counts[slot] = 0;
    };
    rec(0, 12);
    report(11, "support equals exhaustive subset oracle", mismatches == 0,
           std::to_string(tested) + " multisets, mismatches=" + std::to_string(mismatches), t0);
}

void prune2_audit() {
    const auto t0 = std::chrono::steady_clock::now();
    const DistanceTable& d = default_table();
    std::size_t findings = 0, skipped = 0, rule_mismatch = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        GenConfig g;
        g.count = 120;
        g.clusters = 6;
        g.length = 10;
        g.sigma = 0.08;
        g.seed = 1000 + seed;
        g.plant = PlantSpec{2, "grade", {{'1', "a"}, {'2', "b"}, {'3', "c"}, {'4', "d"}, {'5', "e"}}};
        const auto gen = generate(g);
        RecordTable records;
        std::vector<std::string> ids;
        std::set<std::string> seen;
        std::mt19937_64 rng(seed);
        for (const GeneratedRecord& r : gen) {
            Record rec{r.id, {}};
            for (const auto& [k, v] : r.attributes) rec.attributes[k] = v;
            // Random noise attribute so that many cells fail confidence.
            rec.attributes["noise"] = std::to_string(rng() % 4);
            records.add(std::move(rec));
            if (seen.insert(r.id).second) ids.push_back(r.id);
        }
        const EngineResult r = pruning_merge(ids, d, true);
        DiscoveryOptions opt;
        opt.thresholds = {5, 0.8, 2, 2};
        const DiscoveryReport plain = discover(r.tree, records, d, opt);
        opt.validate_pruning = true;
        const DiscoveryReport audited = discover(r.tree, records, d, opt);
        findings += audited.findings.size();
        skipped += audited.cells_skipped_by_children;
        if (plain.rules.size() != audited.rules.size()) ++rule_mismatch;
    }
    report(12, "child-confidence pruning audit (50 corpora)", rule_mismatch == 0,
           std::to_string(skipped) + " cells skipped, " + std::to_string(findings) +
               " skipped cells would have passed confidence (informational)",
           t0);
}

}  // namespace

int main() {
    refine_example();
    eta_example();
    compaction();
    baseline_law();
    oracle_gap();
    inequality_suite();
    bound_soundness();
    local_minimality();
    efficiency();
    planted_recovery();
    support_equivalence();
    prune2_audit();
    std::printf("%s: %d failing\n", failures == 0 ? "all criteria pass" : "acceptance failed", failures);
    return failures == 0 ? 0 : 1;
}
