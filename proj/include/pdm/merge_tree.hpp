#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdm/bounds.hpp"
#include "pdm/paradigm.hpp"

namespace pdm {

struct TreeNode {
    ParadigmId id = 0;
    std::optional<ParadigmId> left, right;  // both set for internal nodes
    Profile profile;
    Alignment alignment;                    // internal nodes only
    std::string leaf_string;                // leaves only

    bool is_leaf() const { return !left.has_value(); }
};

/// Binary merge history. Leaves hold the input strings, internal nodes the
/// alignment of their two children plus the merged columns; full rows are
/// rebuilt on demand. Ids are dense: leaves first, then one id per commit
/// in commit order.
class MergeTree {
public:
    ParadigmId add_leaf(std::string s, const DistanceTable& d);
    ParadigmId add_merge(ParadigmId left, ParadigmId right, ProfileMerge merged);

    const TreeNode& node(ParadigmId id) const { return nodes_.at(id); }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    std::size_t leaf_count() const { return leaf_count_; }
    bool empty() const { return nodes_.empty(); }
    /// Last committed node (or the single leaf).
    ParadigmId root() const;
    /// True once every leaf is under one root.
    bool complete() const { return leaf_count_ > 0 && nodes_.size() == 2 * leaf_count_ - 1; }

    /// Leaf ids under `id`, in row order (left subtree first).
    std::vector<ParadigmId> leaves_under(ParadigmId id) const;
    /// For each leaf under `id` (row order), the source position in the leaf
    /// string of every column of `id`, or -1 for null.
    std::vector<std::vector<std::int32_t>> column_sources(ParadigmId id) const;
    Paradigm materialize(ParadigmId id, const DistanceTable& d) const;

    /// Structural invariants: binary shape, cardinalities, size monotonicity
    /// and column/profile agreement. Returns an empty string when all hold.
    std::string check_invariants(const DistanceTable& d) const;

private:
    std::vector<TreeNode> nodes_;
    std::size_t leaf_count_ = 0;
};

/// Text dump: a header, then one block per node with its compact pattern
/// followed by its serialized rows.
void write_tree(std::ostream& out, const MergeTree& tree, const DistanceTable& d);

struct DumpedNode {
    ParadigmId id;
    std::optional<ParadigmId> left, right;
    std::size_t cardinality;
    double size;
    std::string pattern;
    std::vector<std::vector<Glyph>> rows;
};

/// Parses the output of write_tree.
std::vector<DumpedNode> read_tree_dump(std::istream& in);

}  // namespace pdm
