#pragma once

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/dataset.hpp"
#include "sll/greedy_search.hpp"
#include "sll/local_learning.hpp"
#include "sll/parallel.hpp"
#include "sll/types.hpp"

namespace sll {

// A partially oriented graph plus the colliders committed so far.
struct OrientationState {
    Pdag pdag;
    std::vector<std::tuple<int, int, int>> committed;  // (a, w, b) for a -> w <- b
};

namespace detail {

// Rule tests for orienting the undirected edge a-b as a -> b.
inline bool meek_r1(const Pdag& p, int a, int b) {
    for (int c : p.directed_parents(a))
        if (!p.adjacent(c, b)) return true;
    return false;
}

inline bool meek_r2(const Pdag& p, int a, int b) {
    for (int c : p.directed_children(a))
        if (p.has_directed(c, b)) return true;
    return false;
}

inline bool meek_r3(const Pdag& p, int a, int b) {
    const auto& shared = p.undirected_neighbors(a).members();
    for (std::size_t i = 0; i < shared.size(); ++i) {
        const int c = shared[i];
        if (!p.has_directed(c, b)) continue;
        for (std::size_t j = i + 1; j < shared.size(); ++j) {
            const int d = shared[j];
            if (p.has_directed(d, b) && !p.adjacent(c, d)) return true;
        }
    }
    return false;
}

inline bool meek_r4(const Pdag& p, int a, int b) {
    for (int c : p.undirected_neighbors(a)) {
        if (c == b || p.adjacent(c, b)) continue;
        for (int d : p.directed_children(c))
            if (p.has_directed(d, b) && p.adjacent(a, d)) return true;
    }
    return false;
}

inline bool meek_fires(const Pdag& p, int a, int b) {
    return meek_r1(p, a, b) || meek_r2(p, a, b) || meek_r3(p, a, b) || meek_r4(p, a, b);
}

}  // namespace detail

// Closes the orientation state under the four Meek rules. Edges are scanned in
// ascending order and the scan restarts after each orientation, which fixes
// the application sequence; the fixed point itself does not depend on it. An
// orientation that would close a directed cycle is skipped, which only
// happens on conflicting inputs.
inline OrientationState meek_orient(OrientationState state) {
    Pdag& p = state.pdag;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [u, v] : p.undirected_edges()) {
            int from = -1, to = -1;
            if (detail::meek_fires(p, u, v)) {
                from = u;
                to = v;
            } else if (detail::meek_fires(p, v, u)) {
                from = v;
                to = u;
            } else {
                continue;
            }
            if (p.directed_path_exists(to, from)) {
                log(LogLevel::debug, "meek_orient: skipped cycle-closing orientation " +
                                         std::to_string(from) + "->" + std::to_string(to));
                continue;
            }
            p.orient(from, to);
            changed = true;
            break;
        }
    }
    return state;
}

// Completed PDAG of the Markov equivalence class of dag: skeleton plus
// collider orientations, closed under the Meek rules.
inline Pdag dag_to_cpdag(const Dag& dag) {
    OrientationState st{Pdag(dag.node_count()), {}};
    for (const auto& [u, v] : dag.skeleton()) st.pdag.add_undirected(u, v);
    for (const auto& [s, u, t] : dag.v_structures()) {
        if (st.pdag.has_undirected(s, u)) st.pdag.orient(s, u);
        if (st.pdag.has_undirected(t, u)) st.pdag.orient(t, u);
        st.committed.emplace_back(s, u, t);
    }
    st = meek_orient(std::move(st));
    return st.pdag;
}

struct ExtendResult {
    Dag dag;
    bool flagged = false;  // set when no consistent extension existed
};

// Consistent extension of a PDAG into a DAG by repeatedly finding a node with
// no outgoing directed arcs whose undirected neighbors are adjacent to all of
// its other adjacents, orienting its undirected edges inward and removing it.
// When no such node remains the input has no consistent extension; the
// leftover edges are then oriented along a topological order of the directed
// part and the result is flagged. The directed part itself must be acyclic.
inline ExtendResult pdag_extend_to_dag(const Pdag& input) {
    const int n = input.node_count();
    Dag directed_part(n);
    try {
        for (const auto& [u, v] : input.directed_arcs()) directed_part.add_arc(u, v);
    } catch (const ArgumentError&) {
        throw ArgumentError("pdag_extend_to_dag: directed part contains a cycle");
    }

    std::vector<std::pair<int, int>> additions;
    std::vector<bool> alive(static_cast<std::size_t>(n), true);
    bool flagged = false;
    int remaining = n;
    while (remaining > 0) {
        int found = -1;
        for (int x = 0; x < n && found < 0; ++x) {
            if (!alive[static_cast<std::size_t>(x)]) continue;
            bool ok = true;
            for (int c : input.directed_children(x))
                if (alive[static_cast<std::size_t>(c)]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            for (int y : input.undirected_neighbors(x)) {
                if (!alive[static_cast<std::size_t>(y)]) continue;
                for (int w : input.adjacents(x)) {
                    if (w == y || !alive[static_cast<std::size_t>(w)]) continue;
                    if (!input.adjacent(y, w)) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) break;
            }
            if (ok) found = x;
        }
        if (found < 0) {
            flagged = true;
            const std::vector<int> order = directed_part.topological_order();
            std::vector<int> pos(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
            for (const auto& [u, v] : input.undirected_edges())
                if (alive[static_cast<std::size_t>(u)] && alive[static_cast<std::size_t>(v)]) {
                    if (pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(v)])
                        additions.emplace_back(u, v);
                    else
                        additions.emplace_back(v, u);
                }
            break;
        }
        for (int y : input.undirected_neighbors(found))
            if (alive[static_cast<std::size_t>(y)]) additions.emplace_back(y, found);
        alive[static_cast<std::size_t>(found)] = false;
        --remaining;
    }

    Dag out(n);
    for (const auto& [u, v] : input.directed_arcs()) out.add_arc(u, v);
    for (const auto& [u, v] : additions) out.add_arc(u, v);
    return {out, flagged};
}

struct GlobalResult {
    Dag dag;
    bool inexact = false;
};

namespace detail {

inline std::vector<LearnedSet> all_potential_neighbors(const Dataset& data, const SllConfig& cfg,
                                                       SllCache& cache, int threads) {
    const std::size_t n = static_cast<std::size_t>(data.var_count());
    std::vector<LearnedSet> pn(n);
    parallel_for(n, threads, [&](std::size_t t) {
        pn[t] = find_potential_neighbors(data, static_cast<int>(t), cfg, &cache);
    });
    return pn;
}

// Orients the smallest leftover edge, preferring the direction away from the
// smaller endpoint unless it closes a cycle or makes a new collider; then the
// reverse; then whichever direction stays acyclic.
inline void orient_leftover(Pdag& p, int a, int b) {
    auto closes_cycle = [&](int x, int y) { return p.directed_path_exists(y, x); };
    auto makes_collider = [&](int x, int y) {
        for (int c : p.directed_parents(y))
            if (c != x && !p.adjacent(c, x)) return true;
        return false;
    };
    if (!closes_cycle(a, b) && !makes_collider(a, b))
        p.orient(a, b);
    else if (!closes_cycle(b, a) && !makes_collider(b, a))
        p.orient(b, a);
    else if (!closes_cycle(a, b))
        p.orient(a, b);
    else if (!closes_cycle(b, a))
        p.orient(b, a);
    else
        throw InternalError("orient_leftover: both directions close a cycle");
}

}  // namespace detail

// Constraint-style construction: AND-rule skeleton from corrected neighbor
// sets, colliders committed at common children of learned spouse pairs when
// acyclicity allows, Meek closure, then deterministic orientation of any
// leftover edges into a full DAG.
inline GlobalResult sll_plus_c(const Dataset& data, const SllConfig& cfg,
                               SllCache* cache = nullptr, int threads = 1) {
    validate_config(cfg);
    const int n = data.var_count();
    SllCache local;
    SllCache& c = cache != nullptr ? *cache : local;

    const std::vector<LearnedSet> pn = detail::all_potential_neighbors(data, cfg, c, threads);
    bool inexact = false;
    for (const auto& set : pn) inexact = inexact || set.inexact;

    std::vector<NodeSubset> h_star(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
        for (int v : pn[static_cast<std::size_t>(u)].set)
            if (u < v && pn[static_cast<std::size_t>(v)].set.contains(u)) {
                h_star[static_cast<std::size_t>(u)].insert(v);
                h_star[static_cast<std::size_t>(v)].insert(u);
            }

    std::vector<LearnedSet> ps(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t t) {
        ps[t] = find_potential_spouses(data, static_cast<int>(t), h_star[t], cfg, &c);
    });
    for (const auto& set : ps) inexact = inexact || set.inexact;

    // A spouse pair can share neighbors that are not their common children
    // (a shared parent, say), so the collider child is read off the optimal
    // network over each target's learned neighborhood rather than assumed
    // for every shared neighbor.
    std::vector<std::vector<NodeSubset>> witness(
        static_cast<std::size_t>(n), std::vector<NodeSubset>(static_cast<std::size_t>(n)));
    std::vector<unsigned char> witness_inexact(static_cast<std::size_t>(n), 0);
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t t) {
        if (ps[t].set.empty()) return;
        NodeSubset z = h_star[t] | ps[t].set;
        z.insert(static_cast<int>(t));
        const ExactResult res = detail::subset_search(data, z, cfg, c);
        witness_inexact[t] = res.exact ? 0 : 1;
        for (int v : ps[t].set)
            witness[t][static_cast<std::size_t>(v)] =
                res.dag.children(static_cast<int>(t)) & res.dag.children(v);
    });
    for (int t = 0; t < n; ++t)
        inexact = inexact || witness_inexact[static_cast<std::size_t>(t)] != 0;

    OrientationState st{Pdag(n), {}};
    for (int u = 0; u < n; ++u)
        for (int v : h_star[static_cast<std::size_t>(u)])
            if (u < v) st.pdag.add_undirected(u, v);

    // Commit the colliders the witnesses name, where the current orientation
    // can absorb them without a directed cycle.
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (!ps[static_cast<std::size_t>(a)].set.contains(b) &&
                !ps[static_cast<std::size_t>(b)].set.contains(a))
                continue;
            if (st.pdag.adjacent(a, b)) continue;
            for (int w : witness[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] |
                             witness[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]) {
                const bool a_in = st.pdag.has_directed(a, w) || st.pdag.has_undirected(a, w);
                const bool b_in = st.pdag.has_directed(b, w) || st.pdag.has_undirected(b, w);
                if (!a_in || !b_in) continue;
                if (st.pdag.directed_path_exists(w, a) || st.pdag.directed_path_exists(w, b))
                    continue;
                if (st.pdag.has_undirected(a, w)) st.pdag.orient(a, w);
                if (st.pdag.has_undirected(b, w)) st.pdag.orient(b, w);
                st.committed.emplace_back(a, w, b);
            }
        }
    }

    st = meek_orient(std::move(st));
    while (st.pdag.undirected_count() > 0) {
        const auto edges = st.pdag.undirected_edges();
        detail::orient_leftover(st.pdag, edges.front().first, edges.front().second);
        st = meek_orient(std::move(st));
    }

    Dag dag(n);
    for (const auto& [u, v] : st.pdag.directed_arcs()) dag.add_arc(u, v);
    return {dag, inexact};
}

// Search-style construction: the union of potential-neighbor relations caps
// the candidate arcs for an otherwise ordinary hill-climbing search.
inline GlobalResult sll_plus_g(const Dataset& data, const SllConfig& cfg, const GreedyParams& gp,
                               SllCache* cache = nullptr, int threads = 1) {
    validate_config(cfg);
    const int n = data.var_count();
    SllCache local;
    SllCache& c = cache != nullptr ? *cache : local;

    const std::vector<LearnedSet> pn = detail::all_potential_neighbors(data, cfg, c, threads);
    bool inexact = false;
    for (const auto& set : pn) inexact = inexact || set.inexact;

    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (pn[static_cast<std::size_t>(u)].set.contains(v) ||
                pn[static_cast<std::size_t>(v)].set.contains(u))
                edges.emplace_back(u, v);

    const GreedyResult res =
        greedy_search(data, cfg.scoring, gp, EdgeConstraint::skeleton(edges), &c.memo());
    return {res.dag, inexact};
}

}  // namespace sll
