#include "hicl/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace hicl {

std::string to_string(PlanMethod m) {
    switch (m) {
        case PlanMethod::LevelINF: return "level-inf";
        case PlanMethod::GlobalINF: return "global-inf";
        case PlanMethod::TLF: return "tlf";
        case PlanMethod::BLF: return "blf";
        case PlanMethod::MLF: return "mlf";
        case PlanMethod::Manual: return "manual";
    }
    return "unknown";
}

Taxonomy Taxonomy::from_edges(const std::vector<std::pair<NodeId, NodeId>>& edges) {
    if (edges.empty()) throw data_error("empty edge list");

    Taxonomy t;
    for (const auto& [p, c] : edges) {
        if (p < 0 || c < 0)
            throw data_error("negative node id in edge (" + std::to_string(p) + ", " +
                             std::to_string(c) + ")");
        if (p == c) throw data_error("self-edge at node " + std::to_string(p));
        auto [it, fresh] = t.parent_.emplace(c, p);
        if (!fresh) {
            if (it->second == p)
                throw data_error("duplicate edge (" + std::to_string(p) + ", " +
                                 std::to_string(c) + ")");
            throw data_error("node " + std::to_string(c) + " has two parents (" +
                             std::to_string(it->second) + " and " + std::to_string(p) + ")");
        }
        t.children_[p].push_back(c);
        t.children_.try_emplace(c);
    }

    NodeId root = -1;
    for (const auto& [n, kids] : t.children_) {
        (void)kids;
        if (t.parent_.count(n) == 0) {
            if (root != -1)
                throw data_error("multiple roots: " + std::to_string(std::min(root, n)) + " and " +
                                 std::to_string(std::max(root, n)));
            root = n;
        }
    }
    if (root == -1) throw data_error("cycle detected: no root node");
    t.root_ = root;

    for (auto& [n, kids] : t.children_) {
        (void)n;
        std::sort(kids.begin(), kids.end());
    }

    // Breadth-first levels; unreachable nodes imply a cycle (every node has
    // exactly one parent, so a disconnected component must contain one).
    std::deque<NodeId> queue{root};
    t.level_[root] = 0;
    while (!queue.empty()) {
        NodeId n = queue.front();
        queue.pop_front();
        int lvl = t.level_[n];
        t.depth_ = std::max(t.depth_, lvl);
        for (NodeId c : t.children_.at(n)) {
            t.level_[c] = lvl + 1;
            queue.push_back(c);
        }
    }
    if (t.level_.size() != t.children_.size())
        throw data_error("cycle detected: " +
                         std::to_string(t.children_.size() - t.level_.size()) +
                         " node(s) unreachable from root " + std::to_string(root));

    for (const auto& [n, kids] : t.children_) {
        t.nodes_.push_back(n);
        if (kids.empty()) t.leaves_.push_back(n);
    }
    std::sort(t.nodes_.begin(), t.nodes_.end());
    std::sort(t.leaves_.begin(), t.leaves_.end());
    return t;
}

Taxonomy Taxonomy::parse(std::istream& in) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        long long p, c;
        if (!(ls >> p)) continue;  // blank/comment line
        if (!(ls >> c))
            throw data_error("hierarchy line " + std::to_string(lineno) +
                             ": expected \"parent child\"");
        std::string extra;
        if (ls >> extra)
            throw data_error("hierarchy line " + std::to_string(lineno) + ": trailing token '" +
                             extra + "'");
        edges.emplace_back(static_cast<NodeId>(p), static_cast<NodeId>(c));
    }
    if (edges.empty()) throw data_error("hierarchy file contains no edges");
    return from_edges(edges);
}

Taxonomy Taxonomy::parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

bool Taxonomy::is_leaf(NodeId n) const { return children(n).empty(); }

NodeId Taxonomy::parent(NodeId n) const {
    auto it = parent_.find(n);
    if (it == parent_.end())
        throw data_error("node " + std::to_string(n) + " has no parent");
    return it->second;
}

const std::vector<NodeId>& Taxonomy::children(NodeId n) const {
    auto it = children_.find(n);
    if (it == children_.end()) throw data_error("unknown node " + std::to_string(n));
    return it->second;
}

int Taxonomy::level(NodeId n) const {
    auto it = level_.find(n);
    if (it == level_.end()) throw data_error("unknown node " + std::to_string(n));
    return it->second;
}

std::vector<NodeId> Taxonomy::nonroot_nodes() const {
    std::vector<NodeId> out;
    out.reserve(nodes_.size() - 1);
    for (NodeId n : nodes_)
        if (n != root_) out.push_back(n);
    return out;
}

std::vector<NodeId> Taxonomy::internal_nodes() const {
    std::vector<NodeId> out;
    for (NodeId n : nodes_)
        if (is_internal(n)) out.push_back(n);
    return out;
}

std::vector<NodeId> Taxonomy::nodes_at_level(int k) const {
    std::vector<NodeId> out;
    for (NodeId n : nodes_)
        if (level(n) == k) out.push_back(n);
    return out;
}

std::vector<NodeId> Taxonomy::path_from_root(NodeId n) const {
    std::vector<NodeId> path{n};
    NodeId cur = n;
    while (cur != root_) {
        cur = parent(cur);
        path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

bool Taxonomy::is_ancestor_or_self(NodeId a, NodeId b) const {
    if (!contains(a) || !contains(b)) return false;
    NodeId cur = b;
    while (true) {
        if (cur == a) return true;
        if (cur == root_) return false;
        cur = parent(cur);
    }
}

std::vector<std::pair<NodeId, NodeId>> Taxonomy::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(nodes_.size() - 1);
    for (NodeId n : nodes_)
        for (NodeId c : children(n)) out.emplace_back(n, c);
    std::sort(out.begin(), out.end());
    return out;
}

std::string Taxonomy::to_edge_list() const {
    std::ostringstream os;
    for (const auto& [p, c] : edges()) os << p << ' ' << c << '\n';
    return os.str();
}

std::map<int, int> Taxonomy::fanout_profile() const {
    std::map<int, int> out;
    for (NodeId n : nodes_) {
        size_t fanout = children(n).size();
        if (fanout > 0) out[level(n)] += static_cast<int>(fanout);
    }
    return out;
}

Taxonomy Taxonomy::flatten(const FlatteningPlan& plan) const {
    for (NodeId n : plan.removed) {
        if (!contains(n)) throw data_error("flattening plan names unknown node " + std::to_string(n));
        if (n == root_) throw data_error("flattening plan contains the root node " + std::to_string(n));
        if (is_leaf(n)) throw data_error("flattening plan contains leaf node " + std::to_string(n));
    }
    if (plan.removed.empty()) return *this;

    std::vector<std::pair<NodeId, NodeId>> new_edges;
    for (NodeId n : nodes_) {
        if (n == root_ || plan.removed.count(n)) continue;
        NodeId p = parent(n);
        while (plan.removed.count(p)) p = parent(p);  // nearest surviving ancestor
        new_edges.emplace_back(p, n);
    }
    return from_edges(new_edges);
}

Taxonomy Taxonomy::flatten_levels(const std::set<int>& levels) const {
    return flatten(levels_plan(*this, levels, PlanMethod::Manual));
}

bool Taxonomy::operator==(const Taxonomy& other) const {
    return root_ == other.root_ && parent_ == other.parent_;
}

FlatteningPlan levels_plan(const Taxonomy& tax, const std::set<int>& levels, PlanMethod method) {
    if (levels.empty()) throw data_error("no levels selected for flattening");
    FlatteningPlan plan;
    plan.method = method;
    for (int k : levels) {
        if (k < 1 || k > tax.depth())
            throw data_error("level " + std::to_string(k) + " is beyond the taxonomy depth " +
                             std::to_string(tax.depth()));
        bool any = false;
        for (NodeId n : tax.nodes_at_level(k)) {
            if (tax.is_internal(n)) {
                plan.removed.insert(n);
                any = true;
            }
        }
        if (!any)
            throw data_error("level " + std::to_string(k) + " contains no internal nodes");
    }
    return plan;
}

FlatteningPlan tlf_plan(const Taxonomy& tax) {
    return levels_plan(tax, {1}, PlanMethod::TLF);
}

FlatteningPlan blf_plan(const Taxonomy& tax) {
    int deepest = -1;
    for (NodeId n : tax.internal_nodes()) deepest = std::max(deepest, tax.level(n));
    if (deepest < 1) throw data_error("taxonomy has no internal nodes to flatten");
    return levels_plan(tax, {deepest}, PlanMethod::BLF);
}

FlatteningPlan mlf_plan(const Taxonomy& tax) {
    if (tax.depth() < 4)
        throw data_error("MLF not possible: taxonomy depth " + std::to_string(tax.depth()) +
                         " is below 4");
    return levels_plan(tax, {1, 3}, PlanMethod::MLF);
}

}  // namespace hicl
