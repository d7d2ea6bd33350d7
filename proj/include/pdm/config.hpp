#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <boost/property_tree/ptree.hpp>

#include "pdm/charspace.hpp"

namespace pdm {

/// INI-style key-value file shared by the commands:
///
///   [distance]   charset, identical, same_type, diff_type, gap
///   [pairs]      a:b = 0.7   (glyphs are a character, "null" or \xHH)
///   [discovery]  support_min, confidence_min, diversity_min, inner_support_min
///   [synth]      length, count, clusters, sigma, delete_prob, seed, ...
class KeyValueConfig {
public:
    KeyValueConfig() = default;
    static KeyValueConfig load(const std::string& path);
    static KeyValueConfig parse(std::istream& in);

    std::optional<std::string> get(std::string_view section, std::string_view key) const;
    std::optional<double> get_double(std::string_view section, std::string_view key) const;
    std::optional<long long> get_int(std::string_view section, std::string_view key) const;

    const boost::property_tree::ptree& tree() const { return tree_; }

private:
    boost::property_tree::ptree tree_;
};

/// Decodes \xHH escapes; the literal word "printable" expands to all of
/// printable ASCII.
std::string decode_charset(std::string_view spec);
Glyph parse_glyph_token(std::string_view token);

/// Builds the table from [distance] and [pairs], then rejects it unless it
/// is a metric.
DistanceTable distance_table_from(const KeyValueConfig& cfg);

}  // namespace pdm
