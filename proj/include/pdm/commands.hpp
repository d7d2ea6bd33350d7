#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdm/corpus.hpp"
#include "pdm/discovery.hpp"
#include "pdm/engine.hpp"
#include "pdm/synth.hpp"

namespace pdm {

struct AlignOutcome {
    RunMetrics metrics;
    std::optional<EngineResult> result;  // unset for the single engine
};

/// Writes the tree dump (or, for the single engine, the one paradigm) to
/// `out` and the commit trace to `trace` when given.
AlignOutcome cmd_align(const Corpus& corpus, const DistanceTable& d, EngineKind engine, std::ostream& out,
                       std::ostream* trace = nullptr);

struct DiscoverOutcome {
    RunMetrics metrics;
    DiscoveryReport report;  // rules by support desc, then confidence desc
};

/// Text: one rule per line. JSON: one object per line.
DiscoverOutcome cmd_discover(const Corpus& corpus, const DistanceTable& d, EngineKind engine,
                             const DiscoveryOptions& options, std::ostream& out, bool json = false);

void cmd_gen(const GenConfig& cfg, std::ostream& out);

struct BenchRow {
    std::size_t count = 0;
    EngineKind engine = EngineKind::Baseline;
    RunMetrics metrics;
};

struct BenchConfig {
    GenConfig base;
    std::vector<std::size_t> counts;  // N sweep; empty means base.count only
    std::vector<EngineKind> engines{EngineKind::Baseline, EngineKind::PruningPlus};
};

/// Aligned table to `out`; one JSON object per row to `json` when given.
std::vector<BenchRow> cmd_bench(const BenchConfig& cfg, const DistanceTable& d, std::ostream& out,
                                std::ostream* json = nullptr);

}  // namespace pdm
