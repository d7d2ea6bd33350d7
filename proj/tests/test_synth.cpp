#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "pdm/engine.hpp"
#include "pdm/synth.hpp"

using namespace pdm;

TEST_CASE("same seed, same corpus") {
    GenConfig g;
    g.count = 300;
    g.clusters = 7;
    g.seed = 99;
    const auto a = generate(g), b = generate(g);
    REQUIRE(a.size() == 300);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].attributes == b[i].attributes);
        CHECK(a[i].cluster == i % 7);
    }
    g.seed = 100;
    const auto c = generate(g);
    std::size_t differ = 0;
    for (std::size_t i = 0; i < a.size(); ++i) differ += a[i].id != c[i].id;
    CHECK(differ > 250);
}

TEST_CASE("zero noise reproduces the seeds") {
    GenConfig g;
    g.count = 40;
    g.clusters = 4;
    g.sigma = 0.0;
    g.delete_prob = 0.0;
    g.length = 10;
    const auto recs = generate(g);
    for (const GeneratedRecord& r : recs) {
        CHECK(r.id == recs[r.cluster].id);
        CHECK(r.mutations == 0);
        CHECK(r.id.size() == 10);
        CHECK(r.attributes.at("cluster") == std::to_string(r.cluster));
    }
    const DistanceTable d = default_distance_table(DistanceTable::printable_ascii());
    std::vector<std::string> cluster0;
    for (const GeneratedRecord& r : recs)
        if (r.cluster == 0) cluster0.push_back(r.id);
    const SingleMergeResult m = single_merge(cluster0, d);
    CHECK(m.paradigm.size() == 0.0);
}

TEST_CASE("mutation rate matches sigma") {
    GenConfig g;
    g.count = 5000;
    g.sigma = 0.05;
    g.delete_prob = 0.0;
    g.seed = 7;
    const auto recs = generate(g);
    double mutations = 0, trials = 0, sum = 0, sum_sq = 0;
    for (const GeneratedRecord& r : recs) {
        mutations += static_cast<double>(r.mutations);
        trials += static_cast<double>(r.trials);
        sum += static_cast<double>(r.mutations);
        sum_sq += static_cast<double>(r.mutations * r.mutations);
        CHECK(r.id.size() == g.length);
    }
    const double rate = mutations / trials;
    const double se = std::sqrt(g.sigma * (1 - g.sigma) / trials);
    CHECK(std::abs(rate - g.sigma) <= 3 * se);

    // Twenty characters at five percent: one mutation per string on average.
    const double n = static_cast<double>(recs.size());
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean - 1.0) <= 3 * std::sqrt(var / n));
}

TEST_CASE("deletions shorten strings") {
    GenConfig g;
    g.count = 2000;
    g.sigma = 0.0;
    g.delete_prob = 0.1;
    g.clusters = 2000;
    const auto recs = generate(g);
    double total = 0;
    for (const GeneratedRecord& r : recs) total += static_cast<double>(r.id.size());
    // One cluster per string: every string is a single noisy copy of its seed.
    const double se = std::sqrt(20 * 0.1 * 0.9 / 2000.0);
    CHECK(std::abs(total / 2000.0 - 18.0) <= 3 * se);
    // With few clusters, copies of copies keep shrinking.
    g.clusters = 10;
    double shorter = 0;
    for (const GeneratedRecord& r : generate(g)) shorter += static_cast<double>(r.id.size());
    CHECK(shorter / 2000.0 < 18.0 - 3 * se);
}

TEST_CASE("configuration errors") {
    auto bad = [](auto tweak) {
        GenConfig g;
        tweak(g);
        CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    };
    bad([](GenConfig& g) { g.length = 0; });
    bad([](GenConfig& g) { g.count = 0; });
    bad([](GenConfig& g) { g.clusters = 0; });
    bad([](GenConfig& g) { g.count = 3; });
    bad([](GenConfig& g) { g.sigma = 1.5; });
    bad([](GenConfig& g) { g.delete_prob = -0.1; });
    bad([](GenConfig& g) { g.same_type_bias = 2; });
    bad([](GenConfig& g) { g.charset = "a"; });
    bad([](GenConfig& g) { g.charset = "ab\t"; });
    bad([](GenConfig& g) { g.plant = PlantSpec{0, "x", {{'a', "1"}}}; });
    bad([](GenConfig& g) { g.plant = PlantSpec{1, "x", {}}; });
    bad([](GenConfig& g) { g.plant = PlantSpec{1, "cluster", {{'a', "1"}}}; });
    GenConfig ok;
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.effective_delete_prob() == doctest::Approx(0.01));
}

TEST_CASE("planted column") {
    GenConfig g;
    g.count = 500;
    g.clusters = 10;
    g.sigma = 0.1;
    g.plant = PlantSpec{4, "grade", {{'A', "alpha"}, {'B', "beta"}, {'C', "gamma"}}};
    std::set<std::string> values;
    for (const GeneratedRecord& r : generate(g)) {
        REQUIRE(r.planted_position.has_value());
        const char key = r.id.at(*r.planted_position);
        REQUIRE(g.plant->values.count(key));
        CHECK(r.attributes.at("grade") == g.plant->values.at(key));
        values.insert(r.attributes.at("grade"));
    }
    CHECK(values.size() == 3);
}

TEST_CASE("csv output") {
    GenConfig g;
    g.count = 3;
    g.clusters = 3;
    g.charset = "a,\"b";
    g.length = 4;
    g.plant = PlantSpec{1, "p", {{'x', "1"}}};
    std::ostringstream out;
    write_csv(out, generate(g), g);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "id,cluster,p");
    CHECK(csv_quote("plain") == "plain");
    CHECK(csv_quote("a,b") == "\"a,b\"");
    CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
}
