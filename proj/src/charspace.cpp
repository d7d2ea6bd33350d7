#include "pdm/charspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdm {

Glyph Glyph::from_char(char c) {
    if (!is_printable(c)) {
        throw std::invalid_argument("glyph must be a printable ASCII character, got code " +
                                    std::to_string(static_cast<unsigned char>(c)));
    }
    return Glyph{static_cast<std::uint8_t>(c)};
}

GlyphType glyph_type(Glyph g) {
    if (g.is_null()) return GlyphType::Null;
    const char c = g.to_char();
    if (c >= '0' && c <= '9') return GlyphType::Digit;
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return GlyphType::Letter;
    return GlyphType::Other;
}

std::string DistanceTable::printable_ascii() {
    std::string s;
    for (char c = 0x20; c <= 0x7E; ++c) s.push_back(c);
    return s;
}

DistanceTable::DistanceTable(std::string_view charset, const DistanceDefaults& defaults)
    : defaults_(defaults) {
    if (charset.empty()) throw std::invalid_argument("charset must not be empty");
    std::string sorted(charset);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (char c : sorted) (void)Glyph::from_char(c);
    charset_ = sorted;

    lookup_.fill(-1);
    glyphs_.push_back(Glyph::null());
    for (char c : charset_) {
        lookup_[static_cast<std::uint8_t>(c)] = static_cast<std::int16_t>(glyphs_.size());
        glyphs_.push_back(Glyph::from_char(c));
    }
    // Rows padded to a multiple of 4 doubles for the 256-bit kernels.
    stride_ = (glyphs_.size() + 3) & ~std::size_t{3};
    matrix_.assign(stride_ * stride_, 0.0);

    for (std::size_t i = 0; i < glyphs_.size(); ++i) {
        for (std::size_t j = 0; j < glyphs_.size(); ++j) {
            double v;
            const Glyph a = glyphs_[i], b = glyphs_[j];
            if (a == b) {
                v = defaults.identical;
            } else if (a.is_null() || b.is_null()) {
                v = defaults.gap;
            } else if (glyph_type(a) == glyph_type(b)) {
                v = defaults.same_type;
            } else {
                v = defaults.diff_type;
            }
            matrix_[i * stride_ + j] = v;
        }
    }
}

std::size_t DistanceTable::index_of(Glyph g) const {
    if (g.is_null()) return 0;
    const std::int16_t idx = lookup_[g.code()];
    if (idx < 0) {
        throw std::out_of_range(std::string("glyph '") + g.to_char() + "' is not in the charset");
    }
    return static_cast<std::size_t>(idx);
}

void DistanceTable::set(Glyph a, Glyph b, double value) {
    const std::size_t i = index_of(a), j = index_of(b);
    matrix_[i * stride_ + j] = value;
    matrix_[j * stride_ + i] = value;
}

DistanceTable default_distance_table(std::string_view charset) {
    return DistanceTable(charset, DistanceDefaults{});
}

MetricReport validate_metric(const DistanceTable& d, double tolerance) {
    MetricReport report;
    const std::size_t n = d.glyph_count();
    auto add = [&](MetricViolation::Kind k, std::size_t a, std::size_t b, std::size_t c, double slack) {
        report.ok = false;
        report.violations.push_back({k, d.glyph_at(a), d.glyph_at(b), d.glyph_at(c), slack});
    };
    for (std::size_t a = 0; a < n; ++a) {
        if (std::abs(d.at(a, a)) > tolerance) add(MetricViolation::Kind::NonZeroSelf, a, a, a, d.at(a, a));
        for (std::size_t b = a + 1; b < n; ++b) {
            if (d.at(a, b) < 0) add(MetricViolation::Kind::Negative, a, b, b, -d.at(a, b));
            const double asym = std::abs(d.at(a, b) - d.at(b, a));
            if (asym > tolerance) add(MetricViolation::Kind::Asymmetric, a, b, b, asym);
        }
    }
    // Reported as (a, b, c) with a-b the long edge and c the detour.
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double direct = d.at(a, b);
            for (std::size_t c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                const double slack = direct - (d.at(a, c) + d.at(c, b));
                if (slack > tolerance) add(MetricViolation::Kind::Triangle, a, b, c, slack);
            }
        }
    }
    return report;
}

double diameter(const GlyphMask& members, const DistanceTable& d) {
    double best = 0.0;
    members.for_each([&](std::size_t i) {
        members.for_each([&](std::size_t j) {
            if (j > i) best = std::max(best, d.at(i, j));
        });
    });
    return best;
}

double diameter(std::span<const Glyph> glyphs, const DistanceTable& d) {
    double best = 0.0;
    for (std::size_t i = 0; i < glyphs.size(); ++i)
        for (std::size_t j = i + 1; j < glyphs.size(); ++j) best = std::max(best, d(glyphs[i], glyphs[j]));
    return best;
}

GlyphSet GlyphSet::singleton(std::size_t index, const DistanceTable& d) {
    GlyphMask m;
    m.set(index);
    return GlyphSet(m, 0.0, d.at(index, 0));
}

GlyphSet GlyphSet::of(std::span<const Glyph> glyphs, const DistanceTable& d) {
    GlyphSet s;
    for (Glyph g : glyphs) s.insert(d.index_of(g), d);
    return s;
}

void GlyphSet::insert(std::size_t index, const DistanceTable& d) {
    if (members_.test(index)) return;
    double far = 0.0;
    members_.for_each([&](std::size_t j) { far = std::max(far, d.at(index, j)); });
    members_.set(index);
    diameter_ = std::max(diameter_, far);
    null_far_ = std::max(null_far_, d.at(index, 0));
}

std::vector<Glyph> GlyphSet::glyphs(const DistanceTable& d) const {
    std::vector<Glyph> out;
    members_.for_each([&](std::size_t i) { out.push_back(d.glyph_at(i)); });
    return out;
}

double union_diameter(const GlyphSet& a, const GlyphSet& b, const DistanceTable& d) {
    double best = std::max(a.diameter(), b.diameter());
    a.members().for_each([&](std::size_t i) {
        const auto row = d.row(i);
        b.members().for_each([&](std::size_t j) { best = std::max(best, row[j]); });
    });
    return best;
}

GlyphSet unite(const GlyphSet& a, const GlyphSet& b, const DistanceTable& d) {
    return GlyphSet(a.members() | b.members(), union_diameter(a, b, d), std::max(a.null_far(), b.null_far()));
}

GlyphSet with_null(const GlyphSet& a) {
    GlyphMask m = a.members();
    m.set(0);
    return GlyphSet(m, a.gap_cost(), a.null_far());
}

}  // namespace pdm
