#include "pdm/synth.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <random>
#include <stdexcept>

#include "pdm/charspace.hpp"

namespace pdm {

std::string GenConfig::default_charset() {
    std::string s;
    for (char c = '0'; c <= '9'; ++c) s.push_back(c);
    for (char c = 'a'; c <= 'z'; ++c) s.push_back(c);
    for (char c = 'A'; c <= 'Z'; ++c) s.push_back(c);
    s += "-_/";
    return s;
}

void GenConfig::validate() const {
    if (length == 0) throw std::invalid_argument("length must be positive");
    if (count == 0) throw std::invalid_argument("count must be positive");
    if (clusters == 0) throw std::invalid_argument("clusters must be positive");
    if (clusters > count) throw std::invalid_argument("clusters must not exceed count");
    if (!(sigma >= 0.0 && sigma <= 1.0)) throw std::invalid_argument("sigma must lie in [0, 1]");
    const double del = effective_delete_prob();
    if (!(del >= 0.0 && del <= 1.0)) throw std::invalid_argument("delete_prob must lie in [0, 1]");
    if (!(same_type_bias >= 0.0 && same_type_bias <= 1.0))
        throw std::invalid_argument("same_type_bias must lie in [0, 1]");
    if (charset.size() < 2) throw std::invalid_argument("charset needs at least two characters");
    for (char c : charset)
        if (!Glyph::is_printable(c)) throw std::invalid_argument("charset must be printable ASCII");
    if (plant) {
        if (plant->column < 1 || plant->column > length)
            throw std::invalid_argument("plant column must lie in [1, length]");
        if (plant->values.empty()) throw std::invalid_argument("plant map is empty");
        if (plant->attribute.empty() || plant->attribute == "id" || plant->attribute == "cluster")
            throw std::invalid_argument("plant attribute needs a name other than id/cluster");
        for (const auto& [key, value] : plant->values)
            if (!Glyph::is_printable(key)) throw std::invalid_argument("plant keys must be printable ASCII");
    }
}

namespace {

class Mutator {
public:
    Mutator(const std::string& charset, double same_type_bias) : bias_(same_type_bias) {
        for (char c : charset) by_type_[static_cast<std::size_t>(glyph_type(Glyph::from_char(c)))].push_back(c);
        all_ = charset;
    }

    char replace(char c, std::mt19937_64& rng) const {
        const auto t = static_cast<std::size_t>(glyph_type(Glyph::from_char(c)));
        std::string same, other;
        for (std::size_t k = 0; k < by_type_.size(); ++k) {
            for (char x : by_type_[k]) {
                if (x == c) continue;
                (k == t ? same : other).push_back(x);
            }
        }
        const bool want_same = std::bernoulli_distribution(bias_)(rng);
        const std::string& pool = (want_same && !same.empty()) || other.empty() ? same : other;
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        return pool[pick(rng)];
    }

    char draw(std::mt19937_64& rng) const {
        std::uniform_int_distribution<std::size_t> pick(0, all_.size() - 1);
        return all_[pick(rng)];
    }

private:
    std::array<std::string, 4> by_type_;
    std::string all_;
    double bias_;
};

struct PoolEntry {
    std::string text;
    std::optional<std::size_t> planted;
};

}  // namespace

std::vector<GeneratedRecord> generate(const GenConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    const Mutator mutator(cfg.charset, cfg.same_type_bias);
    std::vector<char> keys;
    if (cfg.plant)
        for (const auto& [key, value] : cfg.plant->values) keys.push_back(key);
    auto draw_key = [&] {
        std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
        return keys[pick(rng)];
    };

    std::vector<std::vector<PoolEntry>> pools(cfg.clusters);
    for (auto& pool : pools) {
        PoolEntry seed;
        for (std::size_t k = 0; k < cfg.length; ++k) seed.text.push_back(mutator.draw(rng));
        if (cfg.plant) {
            seed.planted = cfg.plant->column - 1;
            seed.text[*seed.planted] = draw_key();
        }
        pool.push_back(std::move(seed));
    }

    std::bernoulli_distribution mutate(cfg.sigma);
    std::bernoulli_distribution remove(cfg.effective_delete_prob());
    std::vector<GeneratedRecord> out;
    out.reserve(cfg.count);
    for (std::size_t i = 0; i < cfg.count; ++i) {
        const std::size_t c = i % cfg.clusters;
        auto& pool = pools[c];
        const PoolEntry base = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];

        GeneratedRecord rec;
        rec.cluster = c;
        PoolEntry copy;
        for (std::size_t k = 0; k < base.text.size(); ++k) {
            if (base.planted && k == *base.planted) {
                copy.planted = copy.text.size();
                copy.text.push_back(draw_key());
                continue;
            }
            ++rec.trials;
            if (mutate(rng)) {
                copy.text.push_back(mutator.replace(base.text[k], rng));
                ++rec.mutations;
            } else if (!remove(rng)) {
                copy.text.push_back(base.text[k]);
            }
        }
        if (copy.text.empty()) copy = base;

        rec.id = copy.text;
        rec.planted_position = copy.planted;
        rec.attributes["cluster"] = std::to_string(c);
        if (cfg.plant) rec.attributes[cfg.plant->attribute] = cfg.plant->values.at(copy.text[*copy.planted]);
        pool.push_back(std::move(copy));
        out.push_back(std::move(rec));
    }
    return out;
}

std::string csv_quote(const std::string& field) {
    const bool needs = field.find_first_of(",\"\r\n") != std::string::npos ||
                       (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs) return field;
    std::string q = "\"";
    for (char c : field) {
        if (c == '"') q.push_back('"');
        q.push_back(c);
    }
    q.push_back('"');
    return q;
}

void write_csv(std::ostream& out, const std::vector<GeneratedRecord>& records, const GenConfig& cfg) {
    out << "id,cluster";
    if (cfg.plant) out << ',' << csv_quote(cfg.plant->attribute);
    out << '\n';
    for (const GeneratedRecord& r : records) {
        out << csv_quote(r.id) << ',' << r.attributes.at("cluster");
        if (cfg.plant) out << ',' << csv_quote(r.attributes.at(cfg.plant->attribute));
        out << '\n';
    }
}

}  // namespace pdm
