#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <deque>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/dataset.hpp"
#include "sll/random.hpp"
#include "sll/scoring.hpp"
#include "sll/types.hpp"

namespace sll {

struct GreedyParams {
    int tabu_capacity = 100;  // recently visited structures barred from revisits
    int patience = 15;        // non-improving moves tolerated before stopping
    int max_indegree = 5;
    std::uint64_t seed = 0;  // reserved for randomized restarts; the base search is deterministic
};

// Restricts candidate arcs to an undirected skeleton; default allows all pairs.
class EdgeConstraint {
public:
    static EdgeConstraint none() { return EdgeConstraint(); }

    static EdgeConstraint skeleton(const std::vector<std::pair<int, int>>& edges) {
        EdgeConstraint c;
        c.constrained_ = true;
        for (const auto& [u, v] : edges) {
            if (u == v) throw ArgumentError("EdgeConstraint: self-loop edge");
            c.allowed_.emplace(std::min(u, v), std::max(u, v));
        }
        return c;
    }

    bool constrained() const { return constrained_; }

    bool allows(int u, int v) const {
        return !constrained_ || allowed_.count({std::min(u, v), std::max(u, v)}) > 0;
    }

private:
    bool constrained_ = false;
    std::set<std::pair<int, int>> allowed_;
};

// Order-independent arc-set hash: XOR of per-arc hashes, so single-arc edits
// update it incrementally. Equal graphs always collide; distinct ones almost
// never do.
inline std::uint64_t arc_fingerprint(int u, int v, int n) {
    return splitmix64(static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
                      static_cast<std::uint64_t>(v) + 0x51ec0de5ULL);
}

inline std::uint64_t structure_fingerprint(const Dag& dag) {
    const int n = dag.node_count();
    std::uint64_t h = splitmix64(0xd46aa9b2ULL ^ static_cast<std::uint64_t>(n));
    for (const auto& [u, v] : dag.arcs()) h ^= arc_fingerprint(u, v, n);
    return h;
}

struct GreedyResult {
    Dag dag;
    double score = 0.0;
};

namespace detail {

// True when a path u ~> v exists that does not use the arc u -> v itself.
inline bool indirect_path(const Dag& dag, int u, int v) {
    std::vector<bool> seen(static_cast<std::size_t>(dag.node_count()), false);
    std::vector<int> stack;
    seen[static_cast<std::size_t>(u)] = true;
    for (int c : dag.children(u))
        if (c != v) {
            seen[static_cast<std::size_t>(c)] = true;
            stack.push_back(c);
        }
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        if (x == v) return true;
        for (int c : dag.children(x))
            if (!seen[static_cast<std::size_t>(c)]) {
                seen[static_cast<std::size_t>(c)] = true;
                stack.push_back(c);
            }
    }
    return false;
}

class TabuList {
public:
    explicit TabuList(int capacity) : capacity_(capacity) {}

    bool contains(std::uint64_t fp) const { return counts_.count(fp) > 0; }

    void push(std::uint64_t fp) {
        if (capacity_ <= 0) return;
        order_.push_back(fp);
        ++counts_[fp];
        if (static_cast<int>(order_.size()) > capacity_) {
            const std::uint64_t old = order_.front();
            order_.pop_front();
            if (--counts_[old] == 0) counts_.erase(old);
        }
    }

private:
    int capacity_;
    std::deque<std::uint64_t> order_;
    std::unordered_map<std::uint64_t, int> counts_;
};

}  // namespace detail

// Steepest-ascent hill climbing over add/delete/reverse moves from the empty
// graph, with a FIFO tabu list of visited structures. The best move is applied
// even when negative; the best structure ever visited is returned. Ties are
// broken by enumeration order: adds, then deletes, then reversals, each by
// ascending (u, v).
inline GreedyResult greedy_search(const Dataset& data, const BdeuParams& params,
                                  const GreedyParams& gp,
                                  const EdgeConstraint& constraint = EdgeConstraint::none(),
                                  ScoreMemo* memo = nullptr) {
    if (gp.tabu_capacity < 0) throw ArgumentError("greedy_search: negative tabu capacity");
    if (gp.patience < 0) throw ArgumentError("greedy_search: negative patience");
    if (gp.max_indegree < 0) throw ArgumentError("greedy_search: negative in-degree cap");
    const int n = data.var_count();

    ScoreMemo own;
    ScoreMemo* scores = memo != nullptr ? memo : &own;
    auto local = [&](int v, const NodeSubset& ps) {
        return cached_local_score(data, v, ps, params, scores);
    };

    Dag cur(n);
    std::vector<double> cur_local(static_cast<std::size_t>(n), 0.0);
    double cur_score = 0.0;
    for (int v = 0; v < n; ++v) {
        cur_local[static_cast<std::size_t>(v)] = local(v, NodeSubset{});
        cur_score += cur_local[static_cast<std::size_t>(v)];
    }
    std::uint64_t cur_fp = structure_fingerprint(cur);

    Dag best = cur;
    double best_score = cur_score;

    detail::TabuList tabu(gp.tabu_capacity);
    tabu.push(cur_fp);

    enum MoveKind { kAdd, kDelete, kReverse };
    struct Move {
        MoveKind kind = kAdd;
        int u = -1, v = -1;
        double delta = 0.0;
        std::uint64_t fp = 0;
    };

    int stale = 0;
    while (stale < gp.patience) {
        bool found = false;
        Move pick;
        auto consider = [&](const Move& m) {
            if (tabu.contains(m.fp)) return;
            if (!found || m.delta > pick.delta) {
                pick = m;
                found = true;
            }
        };

        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                if (u == v || cur.adjacent(u, v)) continue;
                if (!constraint.allows(u, v)) continue;
                if (static_cast<int>(cur.parents(v).size()) >= gp.max_indegree) continue;
                if (cur.path_exists(v, u)) continue;
                NodeSubset ps = cur.parents(v);
                ps.insert(u);
                consider({kAdd, u, v, local(v, ps) - cur_local[static_cast<std::size_t>(v)],
                          cur_fp ^ arc_fingerprint(u, v, n)});
            }
        }
        for (const auto& [u, v] : cur.arcs()) {
            NodeSubset ps = cur.parents(v);
            ps.erase(u);
            consider({kDelete, u, v, local(v, ps) - cur_local[static_cast<std::size_t>(v)],
                      cur_fp ^ arc_fingerprint(u, v, n)});
        }
        for (const auto& [u, v] : cur.arcs()) {
            if (static_cast<int>(cur.parents(u).size()) >= gp.max_indegree) continue;
            if (detail::indirect_path(cur, u, v)) continue;
            NodeSubset pv = cur.parents(v);
            pv.erase(u);
            NodeSubset pu = cur.parents(u);
            pu.insert(v);
            const double delta = (local(v, pv) - cur_local[static_cast<std::size_t>(v)]) +
                                 (local(u, pu) - cur_local[static_cast<std::size_t>(u)]);
            consider({kReverse, u, v, delta,
                      cur_fp ^ arc_fingerprint(u, v, n) ^ arc_fingerprint(v, u, n)});
        }

        if (!found) break;

        switch (pick.kind) {
            case kAdd:
                cur.add_arc(pick.u, pick.v);
                cur_local[static_cast<std::size_t>(pick.v)] = local(pick.v, cur.parents(pick.v));
                break;
            case kDelete:
                cur.remove_arc(pick.u, pick.v);
                cur_local[static_cast<std::size_t>(pick.v)] = local(pick.v, cur.parents(pick.v));
                break;
            case kReverse:
                cur.reverse_arc(pick.u, pick.v);
                cur_local[static_cast<std::size_t>(pick.v)] = local(pick.v, cur.parents(pick.v));
                cur_local[static_cast<std::size_t>(pick.u)] = local(pick.u, cur.parents(pick.u));
                break;
        }
        cur_score += pick.delta;
        cur_fp = pick.fp;
        tabu.push(cur_fp);
        assert(std::abs(score_dag(data, cur, params) - cur_score) <=
               1e-9 * std::max(1.0, std::abs(cur_score)));

        if (cur_score > best_score) {
            best = cur;
            best_score = cur_score;
            stale = 0;
        } else {
            ++stale;
        }
    }
    return {best, best_score};
}

}  // namespace sll
