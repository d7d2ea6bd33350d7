#include "pdm/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pdm {

namespace {

void require_two(const Corpus& corpus) {
    if (corpus.ids.size() < 2) throw std::invalid_argument("need ≥2 strings");
}

std::string histogram_text(const RunMetrics& m) {
    std::string s;
    for (const auto& [iters, freq] : m.refine_iterations_histogram) {
        if (!s.empty()) s += ',';
        s += std::to_string(iters) + ':' + std::to_string(freq);
    }
    return s.empty() ? "-" : s;
}

}  // namespace

AlignOutcome cmd_align(const Corpus& corpus, const DistanceTable& d, EngineKind engine, std::ostream& out,
                       std::ostream* trace) {
    require_two(corpus);
    AlignOutcome outcome;
    if (engine == EngineKind::Single) {
        SingleMergeResult r = single_merge(corpus.ids, d);
        out << "# single paradigm\n"
            << "rows " << r.paradigm.cardinality() << " size " << r.paradigm.size() << " pattern "
            << compact(r.paradigm, d).render() << '\n';
        write_paradigm(out, r.paradigm);
        outcome.metrics = r.metrics;
        return outcome;
    }
    EngineResult r = run_engine(engine, corpus.ids, d);
    write_tree(out, r.tree, d);
    if (trace) write_trace(*trace, r.trace);
    outcome.metrics = r.metrics;
    outcome.result = std::move(r);
    return outcome;
}

DiscoverOutcome cmd_discover(const Corpus& corpus, const DistanceTable& d, EngineKind engine,
                             const DiscoveryOptions& options, std::ostream& out, bool json) {
    require_two(corpus);
    if (engine == EngineKind::Single)
        throw std::invalid_argument("discovery needs a merge tree; use baseline, pruning+ or pruning-");
    EngineResult r = run_engine(engine, corpus.ids, d);
    DiscoverOutcome outcome{r.metrics, discover(r.tree, corpus.records, d, options)};
    auto& rules = outcome.report.rules;
    std::stable_sort(rules.begin(), rules.end(), [](const Dependency& a, const Dependency& b) {
        if (a.support != b.support) return a.support > b.support;
        return a.confidence > b.confidence;
    });
    for (const Dependency& dep : rules) out << (json ? rule_json(dep) : render_rule(dep)) << '\n';
    return outcome;
}

void cmd_gen(const GenConfig& cfg, std::ostream& out) { write_csv(out, generate(cfg), cfg); }

std::vector<BenchRow> cmd_bench(const BenchConfig& cfg, const DistanceTable& d, std::ostream& out,
                                std::ostream* json) {
    std::vector<std::size_t> counts = cfg.counts;
    if (counts.empty()) counts.push_back(cfg.base.count);
    std::vector<BenchRow> rows;

    char line[256];
    std::snprintf(line, sizeof line, "%8s  %-9s  %10s  %8s  %8s  %10s  %s\n", "N", "engine", "dp_merges", "refines",
                  "pruned", "wall_s", "refine_hist");
    out << line;
    for (std::size_t n : counts) {
        GenConfig g = cfg.base;
        g.count = n;
        g.clusters = std::min(g.clusters, n);
        std::vector<std::string> strings;
        for (GeneratedRecord& rec : generate(g)) strings.push_back(std::move(rec.id));
        for (EngineKind e : cfg.engines) {
            BenchRow row{n, e, {}};
            if (e == EngineKind::Single) {
                row.metrics = single_merge(strings, d).metrics;
            } else {
                row.metrics = run_engine(e, strings, d).metrics;
            }
            const RunMetrics& m = row.metrics;
            std::snprintf(line, sizeof line, "%8zu  %-9s  %10zu  %8zu  %8zu  %10.3f  %s\n", n,
                          std::string(engine_name(e)).c_str(), m.dp_merges, m.refine_calls, m.intervals_pruned,
                          m.wall_time.count(), histogram_text(m).c_str());
            out << line;
            if (json) {
                nlohmann::json j = nlohmann::json::parse(metrics_json(m, engine_name(e)));
                j["count"] = n;
                j["clusters"] = g.clusters;
                j["sigma"] = g.sigma;
                j["length"] = g.length;
                j["seed"] = g.seed;
                *json << j.dump() << '\n';
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace pdm
