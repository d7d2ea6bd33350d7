#include "pdm/paradigm.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "pdm/kernels.hpp"

namespace pdm {

double recompute_size(const Profile& p, const DistanceTable& d) {
    double total = 0.0;
    for (const GlyphSet& c : p.columns) total += diameter(c.members(), d);
    return total;
}

std::vector<std::size_t> Alignment::gap_positions_left() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < steps_.size(); ++k)
        if (steps_[k].left < 0) out.push_back(k);
    return out;
}

std::vector<std::size_t> Alignment::gap_positions_right() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < steps_.size(); ++k)
        if (steps_[k].right < 0) out.push_back(k);
    return out;
}

bool Alignment::is_valid(std::size_t left_length, std::size_t right_length) const {
    std::int32_t next_left = 0, next_right = 0;
    for (const AlignStep& s : steps_) {
        if (s.left < 0 && s.right < 0) return false;
        if (s.left >= 0 && s.left != next_left++) return false;
        if (s.right >= 0 && s.right != next_right++) return false;
    }
    return static_cast<std::size_t>(next_left) == left_length &&
           static_cast<std::size_t>(next_right) == right_length;
}

Paradigm Paradigm::from_string(std::string_view s, const DistanceTable& d) { return from_string(s, s, d); }

Paradigm Paradigm::from_string(std::string_view id, std::string_view s, const DistanceTable& d) {
    if (s.empty()) throw std::invalid_argument("cannot build a paradigm from an empty string");
    Row row{std::string(id), {}};
    row.glyphs.reserve(s.size());
    for (char c : s) {
        if (!Glyph::is_printable(c) || !d.contains(Glyph::from_char(c))) {
            throw std::invalid_argument("string \"" + std::string(s) + "\" has a character outside the charset");
        }
        row.glyphs.push_back(Glyph::from_char(c));
    }
    std::vector<Row> rows;
    rows.push_back(std::move(row));
    return from_rows(std::move(rows), d);
}

Paradigm Paradigm::from_rows(std::vector<Row> rows, const DistanceTable& d) {
    if (rows.empty()) throw std::invalid_argument("a paradigm needs at least one row");
    const std::size_t length = rows.front().glyphs.size();
    if (length == 0) throw std::invalid_argument("paradigm rows must not be empty");
    Profile p;
    p.columns.resize(length);
    p.cardinality = rows.size();
    for (const Row& r : rows) {
        if (r.glyphs.size() != length) throw std::invalid_argument("paradigm rows differ in length");
        if (std::all_of(r.glyphs.begin(), r.glyphs.end(), [](Glyph g) { return g.is_null(); })) {
            throw std::invalid_argument("paradigm row \"" + r.id + "\" is entirely null");
        }
        for (std::size_t i = 0; i < length; ++i) p.columns[i].insert(d.index_of(r.glyphs[i]), d);
    }
    for (const GlyphSet& c : p.columns) p.size += c.diameter();
    return Paradigm(std::move(p), std::move(rows));
}

double size_of(const Paradigm& p) { return p.size(); }

namespace {

struct DpScratch {
    std::vector<double> profiles;
    std::vector<const double*> profile_rows;
    std::vector<double> prev, cur, cand, cross, right_gap;
};

DpScratch& scratch() {
    thread_local DpScratch s;
    return s;
}

// For every right column j, the row of max distances from each glyph to the
// column's members. Singletons point straight into the distance table.
void build_right_profiles(const Profile& b, const DistanceTable& d, DpScratch& s) {
    const kernels::Dispatch& k = kernels::active();
    const std::size_t stride = d.stride();
    std::size_t multi = 0;
    for (const GlyphSet& c : b.columns) multi += c.count() > 1;
    s.profiles.assign(multi * stride, 0.0);
    s.profile_rows.resize(b.length());
    std::size_t slot = 0;
    for (std::size_t j = 0; j < b.length(); ++j) {
        const GlyphSet& c = b.columns[j];
        if (c.count() == 1) {
            s.profile_rows[j] = d.row(c.members().first()).data();
            continue;
        }
        double* acc = s.profiles.data() + slot++ * stride;
        c.members().for_each([&](std::size_t g) { k.max_accumulate(acc, d.row(g).data(), stride); });
        s.profile_rows[j] = acc;
    }
}

// cross[j] = D(a ∪ b[j]).
void fill_cross(const GlyphSet& a, const Profile& b, const DpScratch& s, double* cross) {
    const std::size_t n2 = b.length();
    if (a.count() == 1) {
        const std::size_t g = a.members().first();
        for (std::size_t j = 0; j < n2; ++j) {
            const double far = s.profile_rows[j][g];
            const double diam = b.columns[j].diameter();
            cross[j] = far > diam ? far : diam;
        }
        return;
    }
    for (std::size_t j = 0; j < n2; ++j) {
        double c = std::max(a.diameter(), b.columns[j].diameter());
        const double* prof = s.profile_rows[j];
        a.members().for_each([&](std::size_t g) { c = c < prof[g] ? prof[g] : c; });
        cross[j] = c;
    }
}

}  // namespace

double merge_size(const Profile& a, const Profile& b, const DistanceTable& d) {
    DpScratch& s = scratch();
    const kernels::Dispatch& k = kernels::active();
    const std::size_t n1 = a.length(), n2 = b.length();
    build_right_profiles(b, d, s);
    s.prev.resize(n2 + 1);
    s.cur.resize(n2 + 1);
    s.cand.resize(n2);
    s.cross.resize(n2);
    s.right_gap.resize(n2);
    for (std::size_t j = 0; j < n2; ++j) s.right_gap[j] = b.columns[j].gap_cost();

    s.prev[0] = 0.0;
    for (std::size_t j = 0; j < n2; ++j) s.prev[j + 1] = s.prev[j] + s.right_gap[j];

    for (std::size_t i = 0; i < n1; ++i) {
        const GlyphSet& col = a.columns[i];
        const double up_cost = col.gap_cost();
        fill_cross(col, b, s, s.cross.data());
        k.relax_diag_up(s.prev.data(), s.cross.data(), up_cost, s.cand.data(), n2);
        s.cur[0] = s.prev[0] + up_cost;
        for (std::size_t j = 0; j < n2; ++j) {
            const double left = s.cur[j] + s.right_gap[j];
            s.cur[j + 1] = left < s.cand[j] ? left : s.cand[j];
        }
        std::swap(s.prev, s.cur);
    }
    return s.prev[n2];
}

ProfileMerge align(const Profile& a, const Profile& b, const DistanceTable& d) {
    enum : std::uint8_t { kDiag, kLeft, kUp };
    DpScratch& s = scratch();
    const std::size_t n1 = a.length(), n2 = b.length();
    const std::size_t w = n2 + 1;
    build_right_profiles(b, d, s);
    s.cross.resize(n2);

    std::vector<double> cost((n1 + 1) * w);
    std::vector<std::uint8_t> dir((n1 + 1) * w, kDiag);
    // Steps from (0,0) that reach (i,j) through its predecessor for `last`.
    auto path_from_start = [&](std::uint8_t last, std::size_t i, std::size_t j) {
        std::vector<std::uint8_t> path{last};
        std::size_t pi = last == kLeft ? i : i - 1, pj = last == kUp ? j : j - 1;
        while (pi > 0 || pj > 0) {
            const std::uint8_t st = dir[pi * w + pj];
            path.push_back(st);
            if (st != kLeft) --pi;
            if (st != kUp) --pj;
        }
        std::reverse(path.begin(), path.end());
        return path;
    };
    cost[0] = 0.0;
    for (std::size_t j = 1; j <= n2; ++j) {
        cost[j] = cost[j - 1] + b.columns[j - 1].gap_cost();
        dir[j] = kLeft;
    }
    for (std::size_t i = 1; i <= n1; ++i) {
        const GlyphSet& col = a.columns[i - 1];
        const double up_cost = col.gap_cost();
        fill_cross(col, b, s, s.cross.data());
        cost[i * w] = cost[(i - 1) * w] + up_cost;
        dir[i * w] = kUp;
        for (std::size_t j = 1; j <= n2; ++j) {
            const double diag = cost[(i - 1) * w + j - 1] + s.cross[j - 1];
            const double left = cost[i * w + j - 1] + b.columns[j - 1].gap_cost();
            const double up = cost[(i - 1) * w + j] + up_cost;
            const double best = std::min({diag, left, up});
            cost[i * w + j] = best;
            const int ties = (diag == best) + (left == best) + (up == best);
            if (ties == 1) {
                dir[i * w + j] = diag == best ? kDiag : (left == best ? kLeft : kUp);
                continue;
            }
            // Several optimal predecessors: keep the path that is smallest
            // read from the start, diagonal < left < up step by step.
            std::uint8_t pick = 0;
            bool have = false;
            for (std::uint8_t step : {kDiag, kLeft, kUp}) {
                const double v = step == kDiag ? diag : (step == kLeft ? left : up);
                if (v != best) continue;
                if (!have) {
                    pick = step;
                    have = true;
                    continue;
                }
                if (path_from_start(step, i, j) < path_from_start(pick, i, j)) pick = step;
            }
            dir[i * w + j] = pick;
        }
    }

    std::vector<AlignStep> steps;
    steps.reserve(n1 + n2);
    std::size_t i = n1, j = n2;
    while (i > 0 || j > 0) {
        switch (dir[i * w + j]) {
            case kDiag:
                --i, --j;
                steps.push_back({static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)});
                break;
            case kLeft:
                --j;
                steps.push_back({-1, static_cast<std::int32_t>(j)});
                break;
            default:
                --i;
                steps.push_back({static_cast<std::int32_t>(i), -1});
                break;
        }
    }
    std::reverse(steps.begin(), steps.end());
    Alignment al(std::move(steps));
    Profile merged = merge_profiles(a, b, al, d);
    return {std::move(merged), std::move(al)};
}

Profile merge_profiles(const Profile& a, const Profile& b, const Alignment& al, const DistanceTable& d) {
    Profile out;
    out.cardinality = a.cardinality + b.cardinality;
    out.columns.reserve(al.length());
    for (const AlignStep& st : al.steps()) {
        if (st.left >= 0 && st.right >= 0) {
            out.columns.push_back(unite(a.columns[st.left], b.columns[st.right], d));
        } else if (st.left >= 0) {
            out.columns.push_back(with_null(a.columns[st.left]));
        } else {
            out.columns.push_back(with_null(b.columns[st.right]));
        }
        out.size += out.columns.back().diameter();
    }
    return out;
}

Paradigm apply_alignment(const Paradigm& a, const Paradigm& b, const Alignment& al, const DistanceTable& d) {
    if (!al.is_valid(a.length(), b.length())) throw std::invalid_argument("alignment does not fit the paradigms");
    std::vector<Row> rows;
    rows.reserve(a.cardinality() + b.cardinality());
    auto expand = [&](const Row& r, bool left) {
        Row out{r.id, {}};
        out.glyphs.reserve(al.length());
        for (const AlignStep& st : al.steps()) {
            const std::int32_t src = left ? st.left : st.right;
            out.glyphs.push_back(src >= 0 ? r.glyphs[src] : Glyph::null());
        }
        rows.push_back(std::move(out));
    };
    for (const Row& r : a.rows()) expand(r, true);
    for (const Row& r : b.rows()) expand(r, false);
    return Paradigm(merge_profiles(a.profile(), b.profile(), al, d), std::move(rows));
}

MergeResult merge(const Paradigm& a, const Paradigm& b, const DistanceTable& d) {
    ProfileMerge pm = align(a.profile(), b.profile(), d);
    Paradigm p = apply_alignment(a, b, pm.alignment, d);
    const double s = p.size();
    return {std::move(p), std::move(pm.alignment), s};
}

namespace {

int run_class(char c) {
    if (c >= '0' && c <= '9') return 1;
    if (c >= 'a' && c <= 'z') return 2;
    if (c >= 'A' && c <= 'Z') return 3;
    return 0;
}

// Runs of three or more consecutive digits or same-case letters collapse to
// "first-last".
std::string render_glyph_run(const std::vector<Glyph>& glyphs) {
    std::string out;
    std::size_t i = 0;
    while (i < glyphs.size()) {
        const char start = glyphs[i].to_char();
        std::size_t j = i;
        if (run_class(start) != 0) {
            while (j + 1 < glyphs.size() && glyphs[j + 1].to_char() == glyphs[j].to_char() + 1 &&
                   run_class(glyphs[j + 1].to_char()) == run_class(start)) {
                ++j;
            }
        }
        if (j - i + 1 >= 3) {
            out.push_back(start);
            out.push_back('-');
            out.push_back(glyphs[j].to_char());
        } else {
            for (std::size_t k = i; k <= j; ++k) out.push_back(glyphs[k].to_char());
        }
        i = j + 1;
    }
    return out;
}

}  // namespace

std::string CompactPattern::render_cell(const CompactCell& cell) {
    if (cell.optional) return "[" + render_glyph_run(cell.glyphs) + "]";
    if (cell.glyphs.size() == 1) return std::string(1, cell.glyphs.front().to_char());
    return "{" + render_glyph_run(cell.glyphs) + "}";
}

std::string CompactPattern::render() const {
    std::string out;
    for (const CompactCell& c : cells_) out += render_cell(c);
    return out;
}

std::string CompactPattern::render_marked(std::size_t column) const {
    std::string out;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (i == column) {
            out += "<" + render_cell(cells_[i]) + ">";
        } else {
            out += render_cell(cells_[i]);
        }
    }
    return out;
}

CompactPattern compact(const Profile& p, const DistanceTable& d) {
    std::vector<CompactCell> cells;
    cells.reserve(p.length());
    for (const GlyphSet& col : p.columns) {
        CompactCell cell;
        col.members().for_each([&](std::size_t g) {
            if (g == 0) {
                cell.optional = true;
            } else {
                cell.glyphs.push_back(d.glyph_at(g));
            }
        });
        // Dense indices follow code order already; keep the contract explicit.
        std::sort(cell.glyphs.begin(), cell.glyphs.end());
        cells.push_back(std::move(cell));
    }
    return CompactPattern(std::move(cells));
}

CompactPattern compact(const Paradigm& p, const DistanceTable& d) { return compact(p.profile(), d); }

std::string serialize_row(std::span<const Glyph> glyphs) {
    std::string out;
    out.reserve(glyphs.size());
    for (Glyph g : glyphs) {
        if (g.is_null()) {
            out.push_back('_');
        } else if (g.to_char() == '_' || g.to_char() == '\\') {
            out.push_back('\\');
            out.push_back(g.to_char());
        } else {
            out.push_back(g.to_char());
        }
    }
    return out;
}

std::vector<Glyph> parse_row(std::string_view text) {
    std::vector<Glyph> out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\\') {
            if (i + 1 >= text.size()) throw std::invalid_argument("dangling escape in row text");
            out.push_back(Glyph::from_char(text[++i]));
        } else if (c == '_') {
            out.push_back(Glyph::null());
        } else {
            out.push_back(Glyph::from_char(c));
        }
    }
    return out;
}

std::string strip_nulls(std::span<const Glyph> glyphs) {
    std::string out;
    for (Glyph g : glyphs)
        if (!g.is_null()) out.push_back(g.to_char());
    return out;
}

void write_paradigm(std::ostream& out, const Paradigm& p) {
    for (const Row& r : p.rows()) out << serialize_row(r.glyphs) << '\n';
    out << '\n';
}

Paradigm read_paradigm(std::istream& in, const DistanceTable& d) {
    std::vector<Row> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;
        Row r;
        r.glyphs = parse_row(line);
        r.id = strip_nulls(r.glyphs);
        rows.push_back(std::move(r));
    }
    return Paradigm::from_rows(std::move(rows), d);
}

}  // namespace pdm
