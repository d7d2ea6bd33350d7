#include "pdm/merge_tree.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pdm {

ParadigmId MergeTree::add_leaf(std::string s, const DistanceTable& d) {
    if (leaf_count_ != nodes_.size()) throw std::logic_error("leaves must be added before any merge");
    Paradigm p = Paradigm::from_string(s, d);
    TreeNode n;
    n.id = static_cast<ParadigmId>(nodes_.size());
    n.profile = p.profile();
    n.leaf_string = std::move(s);
    nodes_.push_back(std::move(n));
    ++leaf_count_;
    return nodes_.back().id;
}

ParadigmId MergeTree::add_merge(ParadigmId left, ParadigmId right, ProfileMerge merged) {
    if (left >= nodes_.size() || right >= nodes_.size() || left == right) {
        throw std::invalid_argument("add_merge: bad child ids");
    }
    if (!merged.alignment.is_valid(nodes_[left].profile.length(), nodes_[right].profile.length())) {
        throw std::invalid_argument("add_merge: alignment does not fit the children");
    }
    TreeNode n;
    n.id = static_cast<ParadigmId>(nodes_.size());
    n.left = left;
    n.right = right;
    n.profile = std::move(merged.profile);
    n.alignment = std::move(merged.alignment);
    nodes_.push_back(std::move(n));
    return nodes_.back().id;
}

ParadigmId MergeTree::root() const {
    if (nodes_.empty()) throw std::logic_error("empty merge tree");
    return nodes_.back().id;
}

std::vector<ParadigmId> MergeTree::leaves_under(ParadigmId id) const {
    std::vector<ParadigmId> out;
    std::vector<ParadigmId> stack{id};
    while (!stack.empty()) {
        const TreeNode& n = nodes_.at(stack.back());
        stack.pop_back();
        if (n.is_leaf()) {
            out.push_back(n.id);
        } else {
            stack.push_back(*n.right);
            stack.push_back(*n.left);
        }
    }
    return out;
}

std::vector<std::vector<std::int32_t>> MergeTree::column_sources(ParadigmId id) const {
    // Depth-first with the column map composed on the way down: O(card * length).
    struct Frame {
        ParadigmId node;
        std::vector<std::int32_t> map;  // column of `id` -> column of `node`
    };
    std::vector<std::vector<std::int32_t>> out;
    const std::size_t length = nodes_.at(id).profile.length();
    std::vector<std::int32_t> identity(length);
    for (std::size_t i = 0; i < length; ++i) identity[i] = static_cast<std::int32_t>(i);
    std::vector<Frame> stack;
    stack.push_back({id, std::move(identity)});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const TreeNode& n = nodes_[f.node];
        if (n.is_leaf()) {
            out.push_back(std::move(f.map));
            continue;
        }
        std::vector<std::int32_t> lmap(f.map.size()), rmap(f.map.size());
        const auto& steps = n.alignment.steps();
        for (std::size_t i = 0; i < f.map.size(); ++i) {
            const std::int32_t c = f.map[i];
            lmap[i] = c >= 0 ? steps[c].left : -1;
            rmap[i] = c >= 0 ? steps[c].right : -1;
        }
        stack.push_back({*n.right, std::move(rmap)});
        stack.push_back({*n.left, std::move(lmap)});
    }
    return out;
}

Paradigm MergeTree::materialize(ParadigmId id, const DistanceTable& d) const {
    const auto leaves = leaves_under(id);
    const auto sources = column_sources(id);
    std::vector<Row> rows;
    rows.reserve(leaves.size());
    for (std::size_t r = 0; r < leaves.size(); ++r) {
        const std::string& s = nodes_[leaves[r]].leaf_string;
        Row row{s, {}};
        row.glyphs.reserve(sources[r].size());
        for (std::int32_t c : sources[r]) row.glyphs.push_back(c >= 0 ? Glyph::from_char(s[c]) : Glyph::null());
        rows.push_back(std::move(row));
    }
    return Paradigm::from_rows(std::move(rows), d);
}

std::string MergeTree::check_invariants(const DistanceTable& d) const {
    std::ostringstream err;
    std::size_t internal = 0;
    for (const TreeNode& n : nodes_) {
        const double recomputed = recompute_size(n.profile, d);
        if (std::abs(recomputed - n.profile.size) > 1e-9) err << "node " << n.id << ": size cache mismatch\n";
        if (n.is_leaf()) {
            if (n.profile.cardinality != 1) err << "leaf " << n.id << ": cardinality != 1\n";
            continue;
        }
        ++internal;
        if (!n.right) err << "node " << n.id << ": not binary\n";
        const TreeNode& l = nodes_.at(*n.left);
        const TreeNode& r = nodes_.at(*n.right);
        if (n.profile.cardinality != l.profile.cardinality + r.profile.cardinality)
            err << "node " << n.id << ": cardinality is not the sum of its children\n";
        if (n.profile.size + 1e-9 < l.profile.size || n.profile.size + 1e-9 < r.profile.size)
            err << "node " << n.id << ": smaller than a child\n";
        const Profile rebuilt = merge_profiles(l.profile, r.profile, n.alignment, d);
        if (!(rebuilt.columns == n.profile.columns)) err << "node " << n.id << ": columns disagree with alignment\n";
    }
    if (complete() && internal != leaf_count_ - 1) err << "internal node count != leaves - 1\n";
    return err.str();
}

void write_tree(std::ostream& out, const MergeTree& tree, const DistanceTable& d) {
    out << "# merge tree\n";
    out << "leaves " << tree.leaf_count() << " nodes " << tree.size() << '\n';
    for (const TreeNode& n : tree.nodes()) {
        out << "node " << n.id;
        if (n.is_leaf()) {
            out << " leaf";
        } else {
            out << " children " << *n.left << ' ' << *n.right;
        }
        out << " card " << n.profile.cardinality << " size " << std::setprecision(17) << n.profile.size
            << " pattern " << compact(n.profile, d).render() << '\n';
        write_paradigm(out, tree.materialize(n.id, d));
    }
}

std::vector<DumpedNode> read_tree_dump(std::istream& in) {
    std::vector<DumpedNode> out;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw std::runtime_error("tree dump line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#' || line.rfind("leaves ", 0) == 0) continue;
        if (line.rfind("node ", 0) != 0) fail("expected a node header");
        DumpedNode n{};
        std::istringstream hdr(line);
        std::string word;
        hdr >> word >> n.id >> word;
        if (word == "children") {
            ParadigmId l, r;
            hdr >> l >> r >> word;
            n.left = l;
            n.right = r;
        } else if (word == "leaf") {
            hdr >> word;
        } else {
            fail("expected 'leaf' or 'children'");
        }
        if (word != "card") fail("expected 'card'");
        hdr >> n.cardinality >> word;
        if (word != "size") fail("expected 'size'");
        hdr >> n.size >> word;
        if (word != "pattern" || !hdr) fail("malformed node header");
        std::getline(hdr, n.pattern);
        if (!n.pattern.empty() && n.pattern.front() == ' ') n.pattern.erase(0, 1);
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) break;
            n.rows.push_back(parse_row(line));
        }
        if (n.rows.size() != n.cardinality) fail("row count does not match card");
        out.push_back(std::move(n));
    }
    return out;
}

}  // namespace pdm
