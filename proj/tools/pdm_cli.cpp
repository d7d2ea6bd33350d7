#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdm/commands.hpp"
#include "pdm/config.hpp"

namespace {

struct Common {
    std::string input;
    std::string id_column = "id";
    std::string engine = "pruning+";
    std::string distance_config;
    std::string config;
    std::string output;
    std::string metrics_out;
    std::string trace;
    bool json = false;
};

struct GenFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> length, count, clusters;
    std::optional<double> sigma, delete_prob, same_type_bias;
    std::optional<std::string> charset;
    std::optional<std::size_t> plant_column;
    std::optional<std::string> plant_attribute, plant_map;
};

struct ThresholdFlags {
    std::optional<std::size_t> support_min, diversity_min, inner_support_min;
    std::optional<double> confidence_min;
};

pdm::KeyValueConfig load_config(const std::string& path) {
    return path.empty() ? pdm::KeyValueConfig{} : pdm::KeyValueConfig::load(path);
}

pdm::DistanceTable distance_table(const Common& c, const pdm::KeyValueConfig& cfg) {
    if (!c.distance_config.empty()) return pdm::distance_table_from(pdm::KeyValueConfig::load(c.distance_config));
    return pdm::distance_table_from(cfg);
}

pdm::EngineKind engine_of(const std::string& name) {
    if (auto e = pdm::parse_engine(name)) return *e;
    throw std::invalid_argument("unknown engine \"" + name + "\" (single, baseline, pruning+, pruning-)");
}

// Opens the file, or returns stdout for an empty path.
std::ostream& open_out(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
    if (path.empty()) return std::cout;
    holder = std::make_unique<std::ofstream>(path);
    if (!*holder) throw std::runtime_error("cannot write " + path);
    return *holder;
}

void write_metrics(const Common& c, const pdm::RunMetrics& m) {
    if (c.metrics_out.empty()) {
        pdm::write_metrics_text(std::cerr, m);
        return;
    }
    std::ofstream out(c.metrics_out);
    if (!out) throw std::runtime_error("cannot write " + c.metrics_out);
    const bool as_json = c.metrics_out.size() >= 5 && c.metrics_out.compare(c.metrics_out.size() - 5, 5, ".json") == 0;
    if (as_json) {
        out << pdm::metrics_json(m, c.engine) << '\n';
    } else {
        out << "engine " << c.engine << '\n';
        pdm::write_metrics_text(out, m);
    }
}

pdm::Corpus load(const Common& c, const pdm::DistanceTable& d) {
    if (c.input.empty()) throw std::invalid_argument("--input is required");
    pdm::CorpusSpec spec;
    spec.path = c.input;
    spec.id_column = c.id_column;
    pdm::Corpus corpus = pdm::load_corpus(spec, d);
    for (const std::string& w : corpus.warnings) std::cerr << "warning: " << w << '\n';
    return corpus;
}

std::map<char, std::string> parse_plant_map(const std::string& text) {
    std::map<char, std::string> m;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq != 1) throw std::invalid_argument("plant map entries look like k=value, got \"" + item + "\"");
        m[item[0]] = item.substr(2);
    }
    return m;
}

pdm::GenConfig gen_config(const GenFlags& f, const pdm::KeyValueConfig& cfg) {
    pdm::GenConfig g;
    auto pick_int = [&](const std::optional<std::size_t>& flag, const char* key, std::size_t& field) {
        if (flag) {
            field = *flag;
        } else if (auto v = cfg.get_int("synth", key)) {
            if (*v < 0) throw std::invalid_argument(std::string("[synth] ") + key + " must not be negative");
            field = static_cast<std::size_t>(*v);
        }
    };
    auto pick_double = [&](const std::optional<double>& flag, const char* key) -> std::optional<double> {
        if (flag) return flag;
        return cfg.get_double("synth", key);
    };
    pick_int(f.length, "length", g.length);
    pick_int(f.count, "count", g.count);
    pick_int(f.clusters, "clusters", g.clusters);
    if (f.seed) {
        g.seed = *f.seed;
    } else if (auto v = cfg.get_int("synth", "seed")) {
        g.seed = static_cast<std::uint64_t>(*v);
    }
    if (auto v = pick_double(f.sigma, "sigma")) g.sigma = *v;
    if (auto v = pick_double(f.delete_prob, "delete_prob")) g.delete_prob = *v;
    if (auto v = pick_double(f.same_type_bias, "same_type_bias")) g.same_type_bias = *v;
    if (f.charset) {
        g.charset = pdm::decode_charset(*f.charset);
    } else if (auto v = cfg.get("synth", "charset")) {
        g.charset = pdm::decode_charset(*v);
    }

    std::optional<std::string> map_text = f.plant_map ? f.plant_map : cfg.get("synth", "plant_map");
    if (map_text) {
        pdm::PlantSpec p;
        p.values = parse_plant_map(*map_text);
        std::size_t col = 1;
        pick_int(f.plant_column, "plant_column", col);
        p.column = col;
        if (f.plant_attribute) {
            p.attribute = *f.plant_attribute;
        } else if (auto v = cfg.get("synth", "plant_attribute")) {
            p.attribute = *v;
        }
        g.plant = p;
    }
    return g;
}

pdm::Thresholds thresholds(const ThresholdFlags& f, const pdm::KeyValueConfig& cfg) {
    pdm::Thresholds t;
    auto count = [&](const std::optional<std::size_t>& flag, const char* key, std::size_t& field) {
        if (flag) {
            field = *flag;
        } else if (auto v = cfg.get_int("discovery", key)) {
            if (*v < 0) throw std::invalid_argument(std::string("[discovery] ") + key + " must not be negative");
            field = static_cast<std::size_t>(*v);
        }
    };
    count(f.support_min, "support_min", t.support_min);
    count(f.diversity_min, "diversity_min", t.diversity_min);
    count(f.inner_support_min, "inner_support_min", t.inner_support_min);
    if (f.confidence_min) {
        t.confidence_min = *f.confidence_min;
    } else if (auto v = cfg.get_double("discovery", "confidence_min")) {
        t.confidence_min = *v;
    }
    return t;
}

void add_common(CLI::App* app, Common& c, bool corpus) {
    if (corpus) {
        app->add_option("--input,-i", c.input, "CSV file with a header row")->required();
        app->add_option("--id-column", c.id_column, "column holding the identifier strings");
        app->add_option("--engine,-e", c.engine, "single, baseline, pruning+ or pruning-");
        app->add_option("--trace", c.trace, "write the commit trace to this file");
    }
    app->add_option("--distance-config", c.distance_config, "key-value file with [distance] and [pairs]");
    app->add_option("--config", c.config, "shared key-value config file");
    app->add_option("--output,-o", c.output, "output file (default stdout)");
    app->add_option("--metrics-out", c.metrics_out, "metrics file; .json selects JSON (default stderr)");
}

void add_gen_flags(CLI::App* app, GenFlags& f) {
    app->add_option("--seed", f.seed);
    app->add_option("--length", f.length);
    app->add_option("--count", f.count);
    app->add_option("--clusters", f.clusters);
    app->add_option("--sigma", f.sigma, "per-character replacement probability");
    app->add_option("--delete-prob", f.delete_prob, "per-character deletion probability (default sigma/5)");
    app->add_option("--same-type-bias", f.same_type_bias);
    app->add_option("--charset", f.charset, "characters to draw from; \\xHH escapes allowed");
    app->add_option("--plant-column", f.plant_column, "1-based column that determines the planted attribute");
    app->add_option("--plant-attribute", f.plant_attribute);
    app->add_option("--plant-map", f.plant_map, "key=value list, e.g. 4=14in,5=15in");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Align identifier strings into paradigms and mine paradigm dependencies"};
    app.require_subcommand(1);

    Common c;
    GenFlags gen;
    ThresholdFlags th;
    bool validate_prune2 = false, no_prune2 = false, dataset_scope = false;
    std::string counts_text, engines_text = "baseline,pruning+", json_out;

    CLI::App* align_cmd = app.add_subcommand("align", "build the merge tree and dump it");
    add_common(align_cmd, c, true);

    CLI::App* discover_cmd = app.add_subcommand("discover", "align, then list paradigm dependencies");
    add_common(discover_cmd, c, true);
    discover_cmd->add_option("--support-min", th.support_min);
    discover_cmd->add_option("--confidence-min", th.confidence_min);
    discover_cmd->add_option("--diversity-min", th.diversity_min);
    discover_cmd->add_option("--inner-support-min", th.inner_support_min);
    discover_cmd->add_flag("--validate-prune2", validate_prune2,
                           "evaluate cells skipped by child-confidence pruning and report any that pass");
    discover_cmd->add_flag("--no-prune2", no_prune2, "disable child-confidence pruning");
    discover_cmd->add_flag("--dataset-confidence", dataset_scope,
                           "divide support by all non-null values of the attribute");
    discover_cmd->add_flag("--json", c.json, "one JSON object per rule");

    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a synthetic corpus as CSV");
    add_common(gen_cmd, c, false);
    add_gen_flags(gen_cmd, gen);

    CLI::App* bench_cmd = app.add_subcommand("bench", "compare engines on generated corpora");
    add_common(bench_cmd, c, false);
    add_gen_flags(bench_cmd, gen);
    bench_cmd->add_option("--counts", counts_text, "comma-separated N sweep (default --count)");
    bench_cmd->add_option("--engines", engines_text, "comma-separated engines");
    bench_cmd->add_option("--json-out", json_out, "write one JSON object per row");

    CLI11_PARSE(app, argc, argv);

    try {
        const pdm::KeyValueConfig cfg = load_config(c.config);
        std::unique_ptr<std::ofstream> holder;

        if (*align_cmd) {
            const pdm::DistanceTable d = distance_table(c, cfg);
            const pdm::Corpus corpus = load(c, d);
            std::ostream& out = open_out(c.output, holder);
            std::unique_ptr<std::ofstream> trace;
            if (!c.trace.empty()) {
                trace = std::make_unique<std::ofstream>(c.trace);
                if (!*trace) throw std::runtime_error("cannot write " + c.trace);
            }
            const pdm::AlignOutcome r = pdm::cmd_align(corpus, d, engine_of(c.engine), out, trace.get());
            write_metrics(c, r.metrics);
        } else if (*discover_cmd) {
            const pdm::DistanceTable d = distance_table(c, cfg);
            const pdm::Corpus corpus = load(c, d);
            pdm::DiscoveryOptions opt;
            opt.thresholds = thresholds(th, cfg);
            opt.prune_low_confidence_children = !no_prune2;
            opt.validate_pruning = validate_prune2;
            if (dataset_scope) opt.scope = pdm::ConfidenceScope::Dataset;
            std::ostream& out = open_out(c.output, holder);
            const pdm::DiscoverOutcome r = pdm::cmd_discover(corpus, d, engine_of(c.engine), opt, out, c.json);
            if (validate_prune2) {
                std::cerr << "prune2 audit: " << r.report.cells_skipped_by_children << " skipped cells, "
                          << r.report.findings.size() << " would have passed confidence\n";
                for (const pdm::PruneFinding& f : r.report.findings)
                    std::cerr << "  node " << f.node << " column " << f.column << " " << f.attribute
                              << " confidence " << f.measures.confidence << '\n';
            }
            write_metrics(c, r.metrics);
        } else if (*gen_cmd) {
            std::ostream& out = open_out(c.output, holder);
            pdm::cmd_gen(gen_config(gen, cfg), out);
        } else if (*bench_cmd) {
            const pdm::DistanceTable d = distance_table(c, cfg);
            pdm::BenchConfig b;
            b.base = gen_config(gen, cfg);
            std::string item;
            std::stringstream counts(counts_text);
            while (std::getline(counts, item, ',')) b.counts.push_back(std::stoul(item));
            b.engines.clear();
            std::stringstream engines(engines_text);
            while (std::getline(engines, item, ',')) b.engines.push_back(engine_of(item));
            std::ostream& out = open_out(c.output, holder);
            std::unique_ptr<std::ofstream> json;
            if (!json_out.empty()) {
                json = std::make_unique<std::ofstream>(json_out);
                if (!*json) throw std::runtime_error("cannot write " + json_out);
            }
            pdm::cmd_bench(b, d, out, json.get());
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
