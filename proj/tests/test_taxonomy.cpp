#include <doctest.h>

#include <algorithm>
#include <random>

#include "hicl/taxonomy.hpp"

using namespace hicl;

namespace {

Taxonomy toy() {
    return Taxonomy::from_edges({{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}});
}

// Independent oracle: the new parent of a surviving node is found by walking
// the original parent chain until a surviving ancestor appears.
NodeId chain_walk_parent(const Taxonomy& tax, NodeId n, const std::set<NodeId>& removed) {
    NodeId p = tax.parent(n);
    while (removed.count(p)) p = tax.parent(p);
    return p;
}

Taxonomy random_taxonomy(std::mt19937_64& rng, int max_nodes) {
    std::uniform_int_distribution<int> count(2, max_nodes);
    int n = count(rng);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int i = 1; i < n; ++i) {
        // Parent chosen among earlier nodes, biased shallow.
        std::uniform_int_distribution<int> pick(0, i - 1);
        edges.emplace_back(pick(rng), i);
    }
    return Taxonomy::from_edges(edges);
}

std::set<NodeId> random_plan(const Taxonomy& tax, std::mt19937_64& rng) {
    std::set<NodeId> removed;
    std::bernoulli_distribution coin(0.4);
    for (NodeId n : tax.internal_nodes())
        if (coin(rng)) removed.insert(n);
    return removed;
}

}  // namespace

TEST_SUITE("taxonomy") {

TEST_CASE("edge list construction") {
    Taxonomy t = toy();
    CHECK(t.root() == 0);
    CHECK(t.leaves() == std::vector<NodeId>{3, 4, 5});
    CHECK(t.level(3) == 2);
    CHECK(t.level(0) == 0);
    CHECK(t.depth() == 2);
    CHECK(t.children(1) == std::vector<NodeId>{3, 4});
}

TEST_CASE("degenerate edge lists are rejected") {
    CHECK_THROWS_AS(Taxonomy::from_edges({{0, 1}, {1, 0}}), data_error);     // cycle
    CHECK_THROWS_AS(Taxonomy::from_edges({{0, 1}, {2, 1}}), data_error);     // two parents
    CHECK_THROWS_AS(Taxonomy::from_edges({{0, 0}}), data_error);             // self edge
    CHECK_THROWS_AS(Taxonomy::from_edges({{0, 1}, {2, 3}}), data_error);     // two roots
    CHECK_THROWS_AS(Taxonomy::from_edges({}), data_error);                   // empty
    CHECK_THROWS_AS(Taxonomy::from_edges({{0, 1}, {0, 1}}), data_error);     // duplicate
    CHECK_THROWS_AS(Taxonomy::from_edges({{0, 1}, {2, 3}, {3, 2}}), data_error);
    CHECK_THROWS_AS(Taxonomy::from_edges({{-1, 0}}), data_error);            // negative id
}

TEST_CASE("text parsing skips comments and blank lines") {
    Taxonomy t = Taxonomy::parse("# hierarchy\n0 1\n\n0 2  # inline\n1 3\n1 4\n2 5\n");
    CHECK(t == toy());
    CHECK_THROWS_AS(Taxonomy::parse("# nothing here\n"), data_error);
    CHECK_THROWS_AS(Taxonomy::parse("0 1 2\n"), data_error);
}

TEST_CASE("single node flatten reattaches children") {
    FlatteningPlan plan;
    plan.removed = {1};
    Taxonomy t = toy().flatten(plan);
    CHECK(t.edges() == std::vector<std::pair<NodeId, NodeId>>{{0, 2}, {0, 3}, {0, 4}, {2, 5}});
}

TEST_CASE("empty plan is identity") {
    FlatteningPlan plan;
    CHECK(toy().flatten(plan) == toy());
}

TEST_CASE("batch removal matches the parent-chain-walk oracle") {
    FlatteningPlan plan;
    plan.removed = {1, 2};
    Taxonomy t = toy().flatten(plan);
    CHECK(t.edges() == std::vector<std::pair<NodeId, NodeId>>{{0, 3}, {0, 4}, {0, 5}});

    Taxonomy orig = toy();
    for (NodeId leaf : orig.leaves())
        CHECK(t.parent(leaf) == chain_walk_parent(orig, leaf, plan.removed));
}

TEST_CASE("flatten rejects leaves and the root") {
    FlatteningPlan plan;
    plan.removed = {3};
    CHECK_THROWS_AS(toy().flatten(plan), data_error);
    plan.removed = {0};
    CHECK_THROWS_AS(toy().flatten(plan), data_error);
    plan.removed = {99};
    CHECK_THROWS_AS(toy().flatten(plan), data_error);
}

TEST_CASE("level flattening baselines") {
    // Fig-1 shape: root -> 2 internal -> leaves; TLF removes all of level 1.
    Taxonomy t = toy().flatten_levels({1});
    CHECK(t.edges() == std::vector<std::pair<NodeId, NodeId>>{{0, 3}, {0, 4}, {0, 5}});

    Taxonomy chain = Taxonomy::from_edges({{0, 1}, {1, 2}, {2, 3}, {2, 4}});
    FlatteningPlan blf = blf_plan(chain);
    CHECK(blf.removed == std::set<NodeId>{2});
    CHECK(chain.flatten(blf).edges() ==
          std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 3}, {1, 4}});

    // Depth-3 tree: MLF not possible.
    CHECK_THROWS_AS(mlf_plan(chain), data_error);
    CHECK_THROWS_AS(toy().flatten_levels({}), data_error);
    CHECK_THROWS_AS(toy().flatten_levels({7}), data_error);
    CHECK_THROWS_AS(toy().flatten_levels({2}), data_error);  // level 2 is all leaves

    Taxonomy deep = Taxonomy::from_edges(
        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {0, 6}, {6, 7}, {7, 8}, {8, 9}});
    FlatteningPlan mlf = mlf_plan(deep);
    CHECK(mlf.removed == std::set<NodeId>{1, 6, 3, 8});
}

TEST_CASE("fanout profile") {
    Taxonomy t = toy();
    std::map<int, int> expect{{0, 2}, {1, 3}};
    CHECK(t.fanout_profile() == expect);

    Taxonomy flat = Taxonomy::from_edges({{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    CHECK(flat.fanout_profile() == std::map<int, int>{{0, 5}});

    FlatteningPlan plan;
    plan.removed = {1};
    CHECK(toy().flatten(plan).fanout_profile() == std::map<int, int>{{0, 3}, {1, 1}});
}

TEST_CASE("random taxonomies: flattening invariants") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 100; ++trial) {
        Taxonomy tax = random_taxonomy(rng, 60);
        std::set<NodeId> removed = random_plan(tax, rng);
        FlatteningPlan plan;
        plan.removed = removed;
        Taxonomy flat = tax.flatten(plan);

        // Leaf set preserved.
        CHECK(flat.leaves() == tax.leaves());

        // Reattachment matches the chain-walk oracle; ancestor order kept.
        for (NodeId n : flat.nodes()) {
            if (n == flat.root()) continue;
            CHECK(flat.parent(n) == chain_walk_parent(tax, n, removed));
        }
        CHECK(flat.depth() <= tax.depth());
        CHECK(flat.node_count() == tax.node_count() - removed.size());

        // Batch-cascade consistency: split the plan in two stages.
        std::set<NodeId> p1, p2;
        bool toggle = false;
        for (NodeId n : removed) ((toggle = !toggle) ? p1 : p2).insert(n);
        FlatteningPlan stage1, stage2;
        stage1.removed = p1;
        stage2.removed = p2;
        CHECK(tax.flatten(stage1).flatten(stage2) == flat);
    }
}

TEST_CASE("ancestor order preserved for survivors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Taxonomy tax = random_taxonomy(rng, 40);
        FlatteningPlan plan;
        plan.removed = random_plan(tax, rng);
        Taxonomy flat = tax.flatten(plan);
        for (NodeId leaf : tax.leaves()) {
            std::vector<NodeId> orig_path = tax.path_from_root(leaf);
            std::vector<NodeId> new_path = flat.path_from_root(leaf);
            // New path = original path with removed nodes deleted.
            std::vector<NodeId> expect;
            for (NodeId n : orig_path)
                if (!plan.removed.count(n)) expect.push_back(n);
            CHECK(new_path == expect);
        }
    }
}

}  // TEST_SUITE
