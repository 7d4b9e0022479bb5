#pragma once

// Independent oracles used across the test suite: exhaustive DAG enumeration,
// brute-force score maximization, exact joint distributions, and direct
// conditional-independence checks. Everything here favors obviousness over
// speed so that disagreements implicate the library, not the oracle.

#include <cstdint>
#include <numeric>
#include <vector>

#include "sll/sll.hpp"

namespace oracles {

// Every DAG on n nodes: each unordered pair independently absent, forward,
// or backward, filtered by a local acyclicity check. 25 for n=3, 543 for
// n=4, 29281 for n=5.
inline std::vector<sll::Dag> enumerate_dags(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);

    std::vector<sll::Dag> out;
    std::vector<int> state(slots.size(), 0);
    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n));

    auto acyclic = [&](const std::vector<std::pair<int, int>>& arcs) {
        for (auto& c : children) c.clear();
        std::fill(indeg.begin(), indeg.end(), 0);
        for (const auto& [u, v] : arcs) {
            children[static_cast<std::size_t>(u)].push_back(v);
            ++indeg[static_cast<std::size_t>(v)];
        }
        std::vector<int> queue;
        for (int v = 0; v < n; ++v)
            if (indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
        std::size_t seen = 0;
        while (!queue.empty()) {
            const int v = queue.back();
            queue.pop_back();
            ++seen;
            for (const int c : children[static_cast<std::size_t>(v)])
                if (--indeg[static_cast<std::size_t>(c)] == 0) queue.push_back(c);
        }
        return seen == static_cast<std::size_t>(n);
    };

    while (true) {
        std::vector<std::pair<int, int>> arcs;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            if (state[s] == 1) arcs.push_back(slots[s]);
            if (state[s] == 2) arcs.emplace_back(slots[s].second, slots[s].first);
        }
        if (acyclic(arcs)) out.emplace_back(n, arcs);

        std::size_t pos = 0;
        while (pos < state.size() && state[pos] == 2) state[pos++] = 0;
        if (pos == state.size()) break;
        ++state[pos];
    }
    return out;
}

// Argmax of the BDeu total over every DAG on data's node set that respects
// the in-degree cap. Locals are memoized per (node, parents) to keep the
// enumeration honest but affordable.
inline double best_score_brute_force(const sll::Dataset& data, const sll::BdeuParams& params,
                                     int max_indegree, sll::Dag* best_dag = nullptr) {
    sll::ScoreMemo memo;
    double best = -std::numeric_limits<double>::infinity();
    for (const sll::Dag& dag : enumerate_dags(data.var_count())) {
        bool legal = true;
        double total = 0.0;
        for (int v = 0; v < data.var_count() && legal; ++v) {
            const sll::NodeSubset& ps = dag.parents(v);
            if (static_cast<int>(ps.size()) > max_indegree) {
                legal = false;
                break;
            }
            total += sll::cached_local_score(data, v, ps, params, &memo);
        }
        if (legal && total > best) {
            best = total;
            if (best_dag != nullptr) *best_dag = dag;
        }
    }
    return best;
}

// Exact joint over all assignments, mixed radix with node 0 most significant.
struct Joint {
    std::vector<int> arities;
    std::vector<double> p;

    std::size_t cells() const { return p.size(); }

    std::vector<int> assignment(std::size_t cell) const {
        std::vector<int> vals(arities.size());
        for (std::size_t i = arities.size(); i-- > 0;) {
            vals[i] = static_cast<int>(cell % static_cast<std::size_t>(arities[i]));
            cell /= static_cast<std::size_t>(arities[i]);
        }
        return vals;
    }
};

inline Joint joint_of(const sll::BayesianNetwork& net) {
    Joint j;
    std::size_t cells = 1;
    for (int v = 0; v < net.node_count(); ++v) {
        j.arities.push_back(net.arity(v));
        cells *= static_cast<std::size_t>(net.arity(v));
    }
    j.p.resize(cells);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const std::vector<int> vals = j.assignment(cell);
        double prob = 1.0;
        for (int v = 0; v < net.node_count(); ++v) {
            const std::size_t cfg =
                net.parent_config(v, [&](int p) { return vals[static_cast<std::size_t>(p)]; });
            prob *= net.probability(v, cfg, vals[static_cast<std::size_t>(v)]);
        }
        j.p[cell] = prob;
    }
    return j;
}

// Conditional independence of u and v given Z, tested without division:
// P(u,v,z) * P(z) == P(u,z) * P(v,z) for every assignment.
inline bool independent_given(const Joint& j, int u, int v, const sll::NodeSubset& z,
                              double tol = 1e-9) {
    const std::size_t ru = static_cast<std::size_t>(j.arities[static_cast<std::size_t>(u)]);
    const std::size_t rv = static_cast<std::size_t>(j.arities[static_cast<std::size_t>(v)]);
    std::size_t qz = 1;
    for (const int w : z) qz *= static_cast<std::size_t>(j.arities[static_cast<std::size_t>(w)]);

    std::vector<double> puvz(ru * rv * qz, 0.0), puz(ru * qz, 0.0), pvz(rv * qz, 0.0),
        pz(qz, 0.0);
    for (std::size_t cell = 0; cell < j.cells(); ++cell) {
        const std::vector<int> vals = j.assignment(cell);
        std::size_t zi = 0;
        for (const int w : z)
            zi = zi * static_cast<std::size_t>(j.arities[static_cast<std::size_t>(w)]) +
                 static_cast<std::size_t>(vals[static_cast<std::size_t>(w)]);
        const std::size_t a = static_cast<std::size_t>(vals[static_cast<std::size_t>(u)]);
        const std::size_t b = static_cast<std::size_t>(vals[static_cast<std::size_t>(v)]);
        puvz[(a * rv + b) * qz + zi] += j.p[cell];
        puz[a * qz + zi] += j.p[cell];
        pvz[b * qz + zi] += j.p[cell];
        pz[zi] += j.p[cell];
    }
    for (std::size_t a = 0; a < ru; ++a)
        for (std::size_t b = 0; b < rv; ++b)
            for (std::size_t zi = 0; zi < qz; ++zi)
                if (std::abs(puvz[(a * rv + b) * qz + zi] * pz[zi] -
                             puz[a * qz + zi] * pvz[b * qz + zi]) > tol)
                    return false;
    return true;
}

// Rows drawn independently and uniformly per column; enough to exercise
// scoring identities that hold for arbitrary data.
inline sll::Dataset random_dataset(const std::vector<int>& arities, std::size_t rows,
                                   std::uint64_t seed) {
    std::vector<sll::Variable> vars;
    for (std::size_t i = 0; i < arities.size(); ++i)
        vars.push_back({static_cast<int>(i), "X" + std::to_string(i), arities[i]});
    sll::Dataset data(vars, rows);
    sll::Rng rng(seed);
    for (std::size_t c = 0; c < arities.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r)
            data.set_value(static_cast<int>(c), r,
                           static_cast<std::uint8_t>(rng.uniform_int(0, arities[c] - 1)));
    return data;
}

// A five-node graph where the target's single-pass neighbor scan provably
// picks up a spouse as a false positive that only the symmetry correction
// removes, and where the spouse-side union rule is needed for full blanket
// recovery. Roles: target, mid, child, far, sp; arcs target->child,
// sp->child, target->mid, far->mid, far->sp, mid->sp (applied through an
// index permutation).
struct PathologyFixture {
    sll::Dag dag;
    int target, mid, child, far, sp;
};

// Index order makes the spouse a persistent false-positive neighbor of the
// target until the symmetry correction removes it.
inline PathologyFixture neighbor_false_positive_fixture() {
    const int t = 0, u = 1, s = 2, w = 3, v = 4;
    sll::Dag dag(5, {{t, s}, {v, s}, {t, u}, {w, u}, {w, v}, {u, v}});
    return {dag, t, u, s, w, v};
}

// Same graph relabeled so the union (OR) spouse rule must recover the
// spouse pair from the other endpoint.
inline PathologyFixture spouse_union_fixture() {
    const int t = 0, u = 1, s = 2, v = 3, w = 4;
    sll::Dag dag(5, {{t, s}, {v, s}, {t, u}, {w, u}, {w, v}, {u, v}});
    return {dag, t, u, s, w, v};
}

}  // namespace oracles
