#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pdm {

/// Column `column` (1-based) of every generated string carries one of the
/// map's keys, and `attribute` is set to the key's value.
struct PlantSpec {
    std::size_t column = 1;
    std::string attribute = "planted";
    std::map<char, std::string> values;
};

struct GenConfig {
    std::size_t length = 20;
    std::size_t count = 5000;
    std::size_t clusters = 50;
    double sigma = 0.05;
    std::optional<double> delete_prob;  // unset means sigma / 5
    double same_type_bias = 0.8;
    std::uint64_t seed = 1;
    std::string charset = default_charset();
    std::optional<PlantSpec> plant;

    static std::string default_charset();
    double effective_delete_prob() const { return delete_prob.value_or(sigma / 5.0); }
    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

struct GeneratedRecord {
    std::string id;
    std::map<std::string, std::string> attributes;
    std::size_t cluster = 0;
    std::size_t mutations = 0;  // characters replaced while copying
    std::size_t trials = 0;     // characters that could have been replaced
    std::optional<std::size_t> planted_position;  // 0-based, in `id`
};

std::vector<GeneratedRecord> generate(const GenConfig& cfg);

/// Header "id,cluster[,attribute]" then one line per record.
void write_csv(std::ostream& out, const std::vector<GeneratedRecord>& records, const GenConfig& cfg);

std::string csv_quote(const std::string& field);

}  // namespace pdm
