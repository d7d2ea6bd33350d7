#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pdm {

/// A character of the working charset, or the distinguished gap value.
/// Printable ASCII (0x20..0x7E) only; code 0 is reserved for null.
class Glyph {
public:
    constexpr Glyph() = default;

    static constexpr Glyph null() { return Glyph{}; }
    static Glyph from_char(char c);
    static constexpr bool is_printable(char c) { return c >= 0x20 && c <= 0x7E; }

    constexpr bool is_null() const { return code_ == 0; }
    constexpr char to_char() const { return static_cast<char>(code_); }
    constexpr std::uint8_t code() const { return code_; }

    friend constexpr bool operator==(Glyph, Glyph) = default;
    friend constexpr auto operator<=>(Glyph, Glyph) = default;

private:
    constexpr explicit Glyph(std::uint8_t code) : code_(code) {}
    std::uint8_t code_ = 0;
};

enum class GlyphType { Digit, Letter, Other, Null };

GlyphType glyph_type(Glyph g);

/// Bit set over the dense indices of a DistanceTable (index 0 is null).
class GlyphMask {
public:
    static constexpr std::size_t kCapacity = 128;

    constexpr void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    constexpr bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    constexpr std::size_t count() const {
        return static_cast<std::size_t>(std::popcount(words_[0]) + std::popcount(words_[1]));
    }
    constexpr bool empty() const { return (words_[0] | words_[1]) == 0; }
    constexpr GlyphMask operator|(const GlyphMask& o) const {
        GlyphMask r;
        r.words_ = {words_[0] | o.words_[0], words_[1] | o.words_[1]};
        return r;
    }
    constexpr bool is_subset_of(const GlyphMask& o) const {
        return (words_[0] & ~o.words_[0]) == 0 && (words_[1] & ~o.words_[1]) == 0;
    }
    /// Lowest set index; undefined when empty.
    constexpr std::size_t first() const {
        return words_[0] ? static_cast<std::size_t>(std::countr_zero(words_[0]))
                         : 64 + static_cast<std::size_t>(std::countr_zero(words_[1]));
    }

    template <typename Fn>
    constexpr void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < 2; ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    friend constexpr bool operator==(const GlyphMask&, const GlyphMask&) = default;

private:
    std::array<std::uint64_t, 2> words_{};
};

struct DistanceDefaults {
    double identical = 0.0;
    double same_type = 0.5;
    double diff_type = 1.5;
    double gap = 1.0;
};

/// Symmetric distance over charset ∪ {null}, stored as a dense padded matrix.
/// Rows are addressable as contiguous spans for the vector kernels.
class DistanceTable {
public:
    /// Builds the type-class table; charset characters must be printable.
    DistanceTable(std::string_view charset, const DistanceDefaults& defaults);

    static std::string printable_ascii();

    double operator()(Glyph a, Glyph b) const { return at(index_of(a), index_of(b)); }
    double at(std::size_t i, std::size_t j) const { return matrix_[i * stride_ + j]; }

    /// Row i over all dense indices (padding entries are zero).
    std::span<const double> row(std::size_t i) const { return {matrix_.data() + i * stride_, stride_}; }

    /// Sets d(a,b) = d(b,a) = value.
    void set(Glyph a, Glyph b, double value);

    bool contains(Glyph g) const { return g.is_null() || lookup_[g.code()] >= 0; }
    std::size_t index_of(Glyph g) const;
    Glyph glyph_at(std::size_t index) const { return glyphs_[index]; }

    /// Number of dense indices including null.
    std::size_t glyph_count() const { return glyphs_.size(); }
    std::size_t stride() const { return stride_; }
    const std::string& charset() const { return charset_; }
    const DistanceDefaults& defaults() const { return defaults_; }

private:
    std::string charset_;
    DistanceDefaults defaults_;
    std::vector<Glyph> glyphs_;  // dense index -> glyph, [0] is null
    std::array<std::int16_t, 128> lookup_{};
    std::size_t stride_ = 0;
    std::vector<double> matrix_;
};

DistanceTable default_distance_table(std::string_view charset);

struct MetricViolation {
    enum class Kind { Asymmetric, NonZeroSelf, Negative, Triangle };
    Kind kind;
    Glyph a, b, c;  // Triangle: a-b is the long edge, c the detour
    double slack;   // amount by which the property is violated
};

struct MetricReport {
    bool ok = true;
    std::vector<MetricViolation> violations;
};

/// Exhaustive symmetry, self-distance and triangle check over charset ∪ {null}.
MetricReport validate_metric(const DistanceTable& d, double tolerance = 1e-12);

/// Set of glyphs with a cached diameter. `null_far` is the largest distance
/// from any member to null, which makes D(C ∪ {null}) an O(1) lookup.
class GlyphSet {
public:
    GlyphSet() = default;
    GlyphSet(GlyphMask members, double diameter, double null_far)
        : members_(members), diameter_(diameter), null_far_(null_far) {}

    static GlyphSet singleton(std::size_t index, const DistanceTable& d);
    static GlyphSet of(std::span<const Glyph> glyphs, const DistanceTable& d);

    /// Incremental insert: the diameter grows to the farthest distance from
    /// the new glyph, never a full recomputation.
    void insert(std::size_t index, const DistanceTable& d);

    const GlyphMask& members() const { return members_; }
    std::size_t count() const { return members_.count(); }
    bool contains_null() const { return members_.test(0); }
    double diameter() const { return diameter_; }
    double null_far() const { return null_far_; }
    /// D(C ∪ {null}).
    double gap_cost() const { return diameter_ > null_far_ ? diameter_ : null_far_; }

    std::vector<Glyph> glyphs(const DistanceTable& d) const;

    friend bool operator==(const GlyphSet&, const GlyphSet&) = default;

private:
    GlyphMask members_;
    double diameter_ = 0.0;
    double null_far_ = 0.0;
};

/// From-scratch max pairwise distance; 0 for sets of size ≤ 1.
double diameter(const GlyphMask& members, const DistanceTable& d);
double diameter(std::span<const Glyph> glyphs, const DistanceTable& d);

/// D(A ∪ B) using the cached diameters plus the cross maximum.
double union_diameter(const GlyphSet& a, const GlyphSet& b, const DistanceTable& d);
GlyphSet unite(const GlyphSet& a, const GlyphSet& b, const DistanceTable& d);
GlyphSet with_null(const GlyphSet& a);

}  // namespace pdm
