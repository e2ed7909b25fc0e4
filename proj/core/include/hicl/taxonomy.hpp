#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hicl/sparse.hpp"

namespace hicl {

// How a flattening plan was produced.
enum class PlanMethod { LevelINF, GlobalINF, TLF, BLF, MLF, Manual };

std::string to_string(PlanMethod m);

// A batch of internal nodes to remove from a taxonomy, plus optional
// per-node provenance (validation objective and the threshold applied)
// for reporting.
struct FlatteningPlan {
    std::set<NodeId> removed;
    PlanMethod method = PlanMethod::Manual;
    std::map<NodeId, double> fstar;  // provenance; empty for manual/level plans
    std::map<NodeId, double> tau;    // threshold each node was compared against
};

// Rooted tree of category nodes. Immutable after construction; all
// transformations return new values, so instances are safe to share
// read-only across threads. The root sits at level 0 and is excluded
// from the non-root node set used for training.
class Taxonomy {
public:
    Taxonomy() = default;

    // Builds and validates a taxonomy from (parent, child) edges.
    // Throws data_error on: empty edge list, negative ids, self-edges,
    // a node with two parents, multiple roots, or cycles.
    static Taxonomy from_edges(const std::vector<std::pair<NodeId, NodeId>>& edges);

    // Edge-list text: one "parent child" pair per line, whitespace
    // separated; blank lines and '#'-prefixed lines are ignored.
    static Taxonomy parse(std::istream& in);
    static Taxonomy parse(const std::string& text);

    NodeId root() const { return root_; }
    bool contains(NodeId n) const { return children_.count(n) != 0; }
    bool is_leaf(NodeId n) const;
    bool is_internal(NodeId n) const { return n != root_ && !is_leaf(n); }
    NodeId parent(NodeId n) const;
    const std::vector<NodeId>& children(NodeId n) const;  // ascending ids
    int level(NodeId n) const;                            // root = 0
    int depth() const { return depth_; }
    size_t node_count() const { return nodes_.size(); }

    const std::vector<NodeId>& nodes() const { return nodes_; }    // ascending, incl. root
    const std::vector<NodeId>& leaves() const { return leaves_; }  // ascending
    std::vector<NodeId> nonroot_nodes() const;
    std::vector<NodeId> internal_nodes() const;  // non-root, non-leaf
    std::vector<NodeId> nodes_at_level(int k) const;

    // Path root -> ... -> n, inclusive of both ends.
    std::vector<NodeId> path_from_root(NodeId n) const;

    // True iff a lies on the root path of b (a == b counts).
    bool is_ancestor_or_self(NodeId a, NodeId b) const;

    std::vector<std::pair<NodeId, NodeId>> edges() const;  // sorted (parent, child)
    std::string to_edge_list() const;

    // Per level k: sum over nodes at level k of their child counts.
    // Levels whose nodes are all leaves get no entry.
    std::map<int, int> fanout_profile() const;

    // Removes plan.removed in one batch: each surviving node reattaches to
    // its nearest surviving ancestor in *this* taxonomy, so nested removals
    // cascade and the result is order-independent. The leaf set is unchanged.
    // Throws data_error if the plan names the root, a leaf, or an unknown node.
    Taxonomy flatten(const FlatteningPlan& plan) const;

    // Removes every internal node whose level is in `levels`; leaves at a
    // selected level are skipped. Throws data_error when `levels` is empty,
    // refers past the taxonomy depth, or names a level without internal nodes.
    Taxonomy flatten_levels(const std::set<int>& levels) const;

    bool operator==(const Taxonomy& other) const;

private:
    NodeId root_ = -1;
    std::unordered_map<NodeId, NodeId> parent_;                 // root absent
    std::unordered_map<NodeId, std::vector<NodeId>> children_;  // every node present
    std::unordered_map<NodeId, int> level_;
    std::vector<NodeId> nodes_;
    std::vector<NodeId> leaves_;
    int depth_ = 0;
};

// Level-flattening baseline plans. TLF removes the internal nodes of level 1,
// BLF those of the deepest internal level, MLF those of levels 1 and 3
// (rejected when the taxonomy depth is below 4).
FlatteningPlan tlf_plan(const Taxonomy& tax);
FlatteningPlan blf_plan(const Taxonomy& tax);
FlatteningPlan mlf_plan(const Taxonomy& tax);

// Plan holding every internal node whose level is in `levels`.
FlatteningPlan levels_plan(const Taxonomy& tax, const std::set<int>& levels, PlanMethod method);

}  // namespace hicl
