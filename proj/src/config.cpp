#include "pdm/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>

namespace pdm {

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return parse(in);
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
    KeyValueConfig c;
    try {
        boost::property_tree::ini_parser::read_ini(in, c.tree_);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw std::runtime_error(std::string("config: ") + e.what());
    }
    return c;
}

std::optional<std::string> KeyValueConfig::get(std::string_view section, std::string_view key) const {
    const auto sec = tree_.get_child_optional(boost::property_tree::ptree::path_type(std::string(section), '\0'));
    if (!sec) return std::nullopt;
    const auto v = sec->get_optional<std::string>(boost::property_tree::ptree::path_type(std::string(key), '\0'));
    if (!v) return std::nullopt;
    return *v;
}

std::optional<double> KeyValueConfig::get_double(std::string_view section, std::string_view key) const {
    const auto v = get(section, key);
    if (!v) return std::nullopt;
    try {
        std::size_t used = 0;
        const double d = std::stod(*v, &used);
        if (used != v->size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw std::runtime_error("config: [" + std::string(section) + "] " + std::string(key) + " is not a number: " + *v);
    }
}

std::optional<long long> KeyValueConfig::get_int(std::string_view section, std::string_view key) const {
    const auto v = get(section, key);
    if (!v) return std::nullopt;
    try {
        std::size_t used = 0;
        const long long n = std::stoll(*v, &used);
        if (used != v->size()) throw std::invalid_argument("trailing characters");
        return n;
    } catch (const std::exception&) {
        throw std::runtime_error("config: [" + std::string(section) + "] " + std::string(key) +
                                 " is not an integer: " + *v);
    }
}

namespace {

char decode_hex(std::string_view s) {
    if (s.size() != 2) throw std::invalid_argument("bad \\x escape");
    return static_cast<char>(std::stoi(std::string(s), nullptr, 16));
}

}  // namespace

std::string decode_charset(std::string_view spec) {
    if (spec == "printable") return DistanceTable::printable_ascii();
    std::string out;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (spec[i] == '\\' && i + 3 < spec.size() && spec[i + 1] == 'x') {
            out.push_back(decode_hex(spec.substr(i + 2, 2)));
            i += 3;
        } else {
            out.push_back(spec[i]);
        }
    }
    return out;
}

Glyph parse_glyph_token(std::string_view token) {
    if (token == "null") return Glyph::null();
    if (token.size() == 1) return Glyph::from_char(token[0]);
    if (token.size() == 4 && token[0] == '\\' && token[1] == 'x') return Glyph::from_char(decode_hex(token.substr(2)));
    throw std::invalid_argument("bad glyph token '" + std::string(token) + "'");
}

DistanceTable distance_table_from(const KeyValueConfig& cfg) {
    DistanceDefaults defs;
    if (auto v = cfg.get_double("distance", "identical")) defs.identical = *v;
    if (auto v = cfg.get_double("distance", "same_type")) defs.same_type = *v;
    if (auto v = cfg.get_double("distance", "diff_type")) defs.diff_type = *v;
    if (auto v = cfg.get_double("distance", "gap")) defs.gap = *v;
    const std::string charset =
        decode_charset(cfg.get("distance", "charset").value_or(std::string("printable")));
    DistanceTable table(charset, defs);

    if (const auto pairs = cfg.tree().get_child_optional("pairs")) {
        for (const auto& [key, value] : *pairs) {
            // A literal colon glyph must be written \x3a.
            const auto sep = key.find(':');
            if (sep == std::string::npos) throw std::runtime_error("config: [pairs] key '" + key + "' needs a:b form");
            Glyph a, b;
            try {
                a = parse_glyph_token(std::string_view(key).substr(0, sep));
                b = parse_glyph_token(std::string_view(key).substr(sep + 1));
            } catch (const std::invalid_argument& e) {
                throw std::runtime_error("config: [pairs] " + std::string(e.what()));
            }
            const std::string raw = value.get_value<std::string>();
            double v;
            try {
                v = std::stod(raw);
            } catch (const std::exception&) {
                throw std::runtime_error("config: [pairs] " + key + " is not a number: " + raw);
            }
            table.set(a, b, v);
        }
    }

    const MetricReport report = validate_metric(table);
    if (!report.ok) {
        std::ostringstream msg;
        msg << "distance table is not a metric (" << report.violations.size() << " violations)";
        const MetricViolation& v = report.violations.front();
        auto show = [](Glyph g) { return g.is_null() ? std::string("null") : std::string(1, g.to_char()); };
        msg << "; first: " << show(v.a) << ", " << show(v.b) << ", " << show(v.c) << " slack " << v.slack;
        throw std::runtime_error(msg.str());
    }
    return table;
}

}  // namespace pdm
