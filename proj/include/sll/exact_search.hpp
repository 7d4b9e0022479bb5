#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/dataset.hpp"
#include "sll/greedy_search.hpp"
#include "sll/scoring.hpp"
#include "sll/types.hpp"

namespace sll {

inline constexpr int kExactNodeCap = 25;  // keeps the 2^z tables addressable

// Best admissible parent set of one node within every candidate mask over z
// local indices. score[C] is the best local score over subsets of C with at
// most max_indegree members; parents[C] is the argmax. Ties prefer fewer
// parents, then the numerically smallest mask. Entries whose mask contains
// the node itself are unused.
struct BestParentsRow {
    int node = -1;
    std::vector<double> score;
    std::vector<std::uint32_t> parents;
};

// local_score(mask) must return the local score of `node` with the parent set
// encoded by mask; it is only called for masks with at most max_indegree bits.
template <class LocalScoreFn>
BestParentsRow build_best_parents(int node, int z, int max_indegree, LocalScoreFn&& local_score) {
    if (z < 1 || z > kExactNodeCap)
        throw ArgumentError("build_best_parents: node count must be in [1, " +
                            std::to_string(kExactNodeCap) + "]");
    if (node < 0 || node >= z) throw ArgumentError("build_best_parents: node out of range");
    if (max_indegree < 0) throw ArgumentError("build_best_parents: negative in-degree cap");

    BestParentsRow row;
    row.node = node;
    const std::size_t slots = std::size_t(1) << z;
    row.score.assign(slots, -std::numeric_limits<double>::infinity());
    row.parents.assign(slots, 0);
    const std::uint32_t self = std::uint32_t(1) << node;

    for (std::uint32_t mask = 0; mask < slots; ++mask) {
        if (mask & self) continue;
        bool have = false;
        double bs = 0.0;
        std::uint32_t bp = 0;
        if (std::popcount(mask) <= max_indegree) {
            bs = local_score(mask);
            bp = mask;
            have = true;
        }
        for (std::uint32_t rest = mask; rest != 0;) {
            const std::uint32_t bit = rest & (0u - rest);
            rest ^= bit;
            const std::uint32_t sub = mask ^ bit;
            const double s = row.score[sub];
            const std::uint32_t p = row.parents[sub];
            const bool better =
                !have || s > bs ||
                (s == bs && (std::popcount(p) < std::popcount(bp) ||
                             (std::popcount(p) == std::popcount(bp) && p < bp)));
            if (better) {
                bs = s;
                bp = p;
                have = true;
            }
        }
        row.score[mask] = bs;
        row.parents[mask] = bp;
    }
    return row;
}

// Best network score over every node-set mask, with the sink removed last.
// Ties pick the smallest sink index.
struct SinkTable {
    int z = 0;
    std::vector<double> score;
    std::vector<std::int8_t> sink;  // -1 for the empty set
};

inline SinkTable build_sink_table(const std::vector<BestParentsRow>& rows) {
    const int z = static_cast<int>(rows.size());
    if (z < 1 || z > kExactNodeCap) throw ArgumentError("build_sink_table: bad row count");
    const std::size_t slots = std::size_t(1) << z;
    for (const auto& row : rows)
        if (row.score.size() != slots) throw ArgumentError("build_sink_table: ragged rows");

    SinkTable table;
    table.z = z;
    table.score.assign(slots, 0.0);
    table.sink.assign(slots, -1);
    for (std::uint32_t mask = 1; mask < slots; ++mask) {
        double best = -std::numeric_limits<double>::infinity();
        int pick = -1;
        for (int s = 0; s < z; ++s) {
            const std::uint32_t bit = std::uint32_t(1) << s;
            if (!(mask & bit)) continue;
            const std::uint32_t rest = mask ^ bit;
            const double val =
                table.score[rest] + rows[static_cast<std::size_t>(s)].score[rest];
            if (pick < 0 || val > best) {
                best = val;
                pick = s;
            }
        }
        table.score[mask] = best;
        table.sink[mask] = static_cast<std::int8_t>(pick);
    }
    return table;
}

// Walks the sink choices back into an explicit graph over z local nodes.
inline Dag reconstruct_dag(const std::vector<BestParentsRow>& rows, const SinkTable& sinks) {
    const int z = sinks.z;
    if (static_cast<int>(rows.size()) != z) throw ArgumentError("reconstruct_dag: table mismatch");
    Dag dag(z);
    std::uint32_t w = (std::uint32_t(1) << z) - 1;
    while (w != 0) {
        const int s = sinks.sink[w];
        if (s < 0) throw InternalError("reconstruct_dag: missing sink choice");
        w ^= std::uint32_t(1) << s;
        std::uint32_t pa = rows[static_cast<std::size_t>(s)].parents[w];
        while (pa != 0) {
            const int p = std::countr_zero(pa);
            pa &= pa - 1;
            dag.add_arc(p, s);
        }
    }
    return dag;
}

struct ExactResult {
    Dag dag;             // over the full variable set; arcs stay inside the searched subset
    double score = 0.0;  // sum of local scores over the searched subset
    bool exact = true;   // false when the hill-climbing fallback ran
};

// Globally optimal network over the nodes in z by dynamic programming over
// node subsets, or a hill-climbing approximation when |z| exceeds
// exact_limit. Memory and time grow as O(|z| 2^|z|) and O(|z|^2 2^|z|).
inline ExactResult optimal_network(const Dataset& data, const NodeSubset& z,
                                   const BdeuParams& params, int max_indegree, int exact_limit,
                                   ScoreMemo* memo = nullptr,
                                   const GreedyParams* fallback = nullptr) {
    if (z.empty()) throw ArgumentError("optimal_network: empty node set");
    for (int v : z)
        if (v < 0 || v >= data.var_count())
            throw ArgumentError("optimal_network: node out of range");
    if (max_indegree < 0) throw ArgumentError("optimal_network: negative in-degree cap");
    if (exact_limit < 1) throw ArgumentError("optimal_network: exact limit must be positive");

    const int zn = static_cast<int>(z.size());
    const auto& nodes = z.members();

    if (zn > exact_limit) {
        GreedyParams gp = fallback != nullptr ? *fallback : GreedyParams{};
        gp.max_indegree = max_indegree;
        const Dataset proj = data.project(z);
        const GreedyResult res = greedy_search(proj, params, gp);
        ExactResult out{Dag(data.var_count()), 0.0, false};
        for (const auto& [u, v] : res.dag.arcs())
            out.dag.add_arc(nodes[static_cast<std::size_t>(u)], nodes[static_cast<std::size_t>(v)]);
        for (int v : z)
            out.score += cached_local_score(data, v, out.dag.parents(v), params, memo);
        return out;
    }
    if (zn > kExactNodeCap)
        throw ArgumentError("optimal_network: exact search capped at " +
                            std::to_string(kExactNodeCap) + " nodes");

    auto subset_of_mask = [&](std::uint32_t mask) {
        std::vector<int> members;
        while (mask != 0) {
            members.push_back(nodes[static_cast<std::size_t>(std::countr_zero(mask))]);
            mask &= mask - 1;
        }
        return NodeSubset(std::move(members));
    };

    std::vector<BestParentsRow> rows;
    rows.reserve(static_cast<std::size_t>(zn));
    for (int li = 0; li < zn; ++li) {
        const int v = nodes[static_cast<std::size_t>(li)];
        rows.push_back(build_best_parents(li, zn, max_indegree, [&](std::uint32_t mask) {
            return cached_local_score(data, v, subset_of_mask(mask), params, memo);
        }));
    }
    const SinkTable sinks = build_sink_table(rows);
    const Dag local = reconstruct_dag(rows, sinks);

    ExactResult out{Dag(data.var_count()), sinks.score[(std::uint32_t(1) << zn) - 1], true};
    for (const auto& [u, v] : local.arcs())
        out.dag.add_arc(nodes[static_cast<std::size_t>(u)], nodes[static_cast<std::size_t>(v)]);
    return out;
}

}  // namespace sll
