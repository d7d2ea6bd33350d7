#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdm/charspace.hpp"

namespace pdm {

/// Columns of a paradigm without its rows. This is all the DP needs, and it
/// is what the engines keep for every live paradigm.
struct Profile {
    std::vector<GlyphSet> columns;
    std::size_t cardinality = 0;
    double size = 0.0;

    std::size_t length() const { return columns.size(); }
};

/// Σ of column diameters recomputed from the member masks.
double recompute_size(const Profile& p, const DistanceTable& d);

/// One output column of a two-way merge: the source column on each side, or
/// -1 where that side receives nulls.
struct AlignStep {
    std::int32_t left = -1;
    std::int32_t right = -1;
    friend bool operator==(const AlignStep&, const AlignStep&) = default;
};

class Alignment {
public:
    Alignment() = default;
    explicit Alignment(std::vector<AlignStep> steps) : steps_(std::move(steps)) {}

    const std::vector<AlignStep>& steps() const { return steps_; }
    std::size_t length() const { return steps_.size(); }

    /// Output column indices where nulls were inserted into the left rows.
    std::vector<std::size_t> gap_positions_left() const;
    std::vector<std::size_t> gap_positions_right() const;

    /// Checks that each side's columns appear exactly once and in order.
    bool is_valid(std::size_t left_length, std::size_t right_length) const;

    friend bool operator==(const Alignment&, const Alignment&) = default;

private:
    std::vector<AlignStep> steps_;
};

struct Row {
    std::string id;
    std::vector<Glyph> glyphs;
};

/// A set of equal-length glyph rows with per-column glyph sets. Immutable
/// once built; every constructor path checks the row/column invariants.
class Paradigm {
public:
    static Paradigm from_string(std::string_view s, const DistanceTable& d);
    static Paradigm from_string(std::string_view id, std::string_view s, const DistanceTable& d);
    /// Rows must share one length, and none may be all null.
    static Paradigm from_rows(std::vector<Row> rows, const DistanceTable& d);

    const Profile& profile() const { return profile_; }
    const std::vector<GlyphSet>& columns() const { return profile_.columns; }
    const std::vector<Row>& rows() const { return rows_; }
    std::size_t length() const { return profile_.length(); }
    std::size_t cardinality() const { return profile_.cardinality; }
    double size() const { return profile_.size; }

private:
    Paradigm(Profile profile, std::vector<Row> rows)
        : profile_(std::move(profile)), rows_(std::move(rows)) {}
    friend Paradigm apply_alignment(const Paradigm&, const Paradigm&, const Alignment&, const DistanceTable&);

    Profile profile_;
    std::vector<Row> rows_;
};

double size_of(const Paradigm& p);

/// Exact size of the optimal column-atomic merge, without traceback. Runs on
/// the active vector kernels.
double merge_size(const Profile& a, const Profile& b, const DistanceTable& d);

struct ProfileMerge {
    Profile profile;
    Alignment alignment;
};

/// Optimal merge with traceback. Among optimal alignments the one chosen is
/// smallest when its steps are read from the start, ordering the diagonal
/// step before the left gap (right column against nulls) before the up gap
/// (left column against nulls).
ProfileMerge align(const Profile& a, const Profile& b, const DistanceTable& d);

/// Columns of the merged paradigm for a given alignment.
Profile merge_profiles(const Profile& a, const Profile& b, const Alignment& al, const DistanceTable& d);

/// Rows of `a` followed by rows of `b`, with nulls inserted per `al`.
Paradigm apply_alignment(const Paradigm& a, const Paradigm& b, const Alignment& al, const DistanceTable& d);

struct MergeResult {
    Paradigm paradigm;
    Alignment alignment;
    double size;
};

MergeResult merge(const Paradigm& a, const Paradigm& b, const DistanceTable& d);

/// Deduplicated columns in star-free regular-expression form.
struct CompactCell {
    std::vector<Glyph> glyphs;  // non-null members, ascending by code
    bool optional = false;      // null was present in the column
};

class CompactPattern {
public:
    explicit CompactPattern(std::vector<CompactCell> cells) : cells_(std::move(cells)) {}

    const std::vector<CompactCell>& cells() const { return cells_; }
    std::string render() const;
    /// Same as render() with the cell at `column` (0-based) wrapped in '<' '>'.
    std::string render_marked(std::size_t column) const;

    static std::string render_cell(const CompactCell& cell);

private:
    std::vector<CompactCell> cells_;
};

CompactPattern compact(const Profile& p, const DistanceTable& d);
CompactPattern compact(const Paradigm& p, const DistanceTable& d);

// Line-oriented row text: null is '_', a literal '_' is "\_" and a literal
// backslash is "\\".
std::string serialize_row(std::span<const Glyph> glyphs);
std::vector<Glyph> parse_row(std::string_view text);
/// Row text with nulls removed.
std::string strip_nulls(std::span<const Glyph> glyphs);

/// One row per line, then an empty line.
void write_paradigm(std::ostream& out, const Paradigm& p);
/// Reads rows until an empty line or end of input. Row ids are the
/// null-stripped row text.
Paradigm read_paradigm(std::istream& in, const DistanceTable& d);

}  // namespace pdm
