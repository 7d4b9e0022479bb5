#include <catch2/catch_amalgamated.hpp>

#include "sll/dag.hpp"
#include "sll/random.hpp"
#include "support/oracles.hpp"

using sll::Dag;
using sll::NodeSubset;
using sll::Pdag;

TEST_CASE("arc insertion rejects cycles, self-loops, and duplicates") {
    Dag d(3);
    d.add_arc(0, 1);
    d.add_arc(1, 2);
    REQUIRE_THROWS_AS(d.add_arc(2, 0), sll::ArgumentError);
    REQUIRE_THROWS_AS(d.add_arc(0, 0), sll::ArgumentError);
    REQUIRE_THROWS_AS(d.add_arc(0, 1), sll::ArgumentError);
    REQUIRE(d.arcs() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
}

TEST_CASE("arc reversal restores state when it would close a cycle") {
    Dag d(3, {{0, 1}, {1, 2}, {0, 2}});
    REQUIRE_THROWS_AS(d.reverse_arc(0, 2), sll::ArgumentError);
    REQUIRE(d.has_arc(0, 2));
    REQUIRE_FALSE(d.has_arc(2, 0));
    d.reverse_arc(0, 1);
    REQUIRE(d.has_arc(1, 0));
    REQUIRE_THROWS_AS(d.reverse_arc(0, 1), sll::ArgumentError);
}

TEST_CASE("neighbors spouses and blanket of a chain and collider") {
    const Dag chain(3, {{0, 1}, {1, 2}});
    REQUIRE(chain.neighbors(1) == NodeSubset{0, 2});
    REQUIRE(chain.spouses(0).empty());

    const Dag collider(3, {{0, 2}, {1, 2}});
    REQUIRE(collider.spouses(0) == NodeSubset{1});
    REQUIRE(collider.spouses(1) == NodeSubset{0});
    REQUIRE(sll::true_markov_blanket(collider, 0) == NodeSubset{1, 2});

    const Dag shielded(3, {{0, 2}, {1, 2}, {0, 1}});
    REQUIRE(shielded.spouses(0).empty());
}

TEST_CASE("v-structures list unshielded colliders with endpoints ordered") {
    const Dag collider(3, {{0, 2}, {1, 2}});
    REQUIRE(collider.v_structures() == std::vector<std::tuple<int, int, int>>{{0, 2, 1}});

    const Dag chain(3, {{0, 1}, {1, 2}});
    REQUIRE(chain.v_structures().empty());

    const Dag shielded(3, {{0, 2}, {1, 2}, {0, 1}});
    REQUIRE(shielded.v_structures().empty());

    const Dag twin(4, {{0, 2}, {1, 2}, {0, 3}, {1, 3}});
    REQUIRE(twin.v_structures() ==
            std::vector<std::tuple<int, int, int>>{{0, 2, 1}, {0, 3, 1}});
}

TEST_CASE("neighbor and spouse relations are symmetric on random graphs") {
    sll::Rng rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        Dag d(6);
        for (int step = 0; step < 9; ++step) {
            const int u = rng.uniform_int(0, 5), v = rng.uniform_int(0, 5);
            if (u == v) continue;
            try {
                d.add_arc(u, v);
            } catch (const sll::ArgumentError&) {
            }
        }
        for (int u = 0; u < 6; ++u)
            for (int v = 0; v < 6; ++v) {
                if (u == v) continue;
                REQUIRE(d.neighbors(u).contains(v) == d.neighbors(v).contains(u));
                REQUIRE(d.spouses(u).contains(v) == d.spouses(v).contains(u));
            }
    }
}

TEST_CASE("topological order respects every arc") {
    const Dag d(5, {{4, 0}, {0, 3}, {4, 3}, {1, 2}});
    const std::vector<int> order = d.topological_order();
    std::vector<int> pos(5);
    for (int i = 0; i < 5; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    for (const auto& [u, v] : d.arcs()) REQUIRE(pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(v)]);
}

TEST_CASE("path queries see transitive reachability") {
    const Dag d(4, {{0, 1}, {1, 2}});
    REQUIRE(d.path_exists(0, 2));
    REQUIRE_FALSE(d.path_exists(2, 0));
    REQUIRE_FALSE(d.path_exists(0, 3));
    REQUIRE(d.path_exists(1, 1));
}

TEST_CASE("pdag keeps directed and undirected links disjoint") {
    Pdag p(4);
    p.add_directed(0, 1);
    p.add_undirected(1, 2);
    REQUIRE_THROWS_AS(p.add_undirected(0, 1), sll::ArgumentError);
    REQUIRE_THROWS_AS(p.add_directed(2, 1), sll::ArgumentError);
    REQUIRE(p.adjacent(0, 1));
    REQUIRE(p.adjacent(2, 1));
    REQUIRE_FALSE(p.adjacent(0, 2));

    p.orient(1, 2);
    REQUIRE(p.has_directed(1, 2));
    REQUIRE_FALSE(p.has_undirected(1, 2));
    REQUIRE(p.undirected_count() == 0);
}

TEST_CASE("pdag from dag mirrors the arc set") {
    const Dag d(3, {{0, 1}, {2, 1}});
    const Pdag p = Pdag::from_dag(d);
    REQUIRE(p.directed_arcs() == d.arcs());
    REQUIRE(p.undirected_edges().empty());
    REQUIRE(p.skeleton() == d.skeleton());
}

TEST_CASE("dag enumeration counts match the known sequence") {
    REQUIRE(oracles::enumerate_dags(2).size() == 3);
    REQUIRE(oracles::enumerate_dags(3).size() == 25);
    REQUIRE(oracles::enumerate_dags(4).size() == 543);
}
