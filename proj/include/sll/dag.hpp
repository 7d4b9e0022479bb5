#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "sll/common.hpp"
#include "sll/types.hpp"

namespace sll {

// Directed acyclic graph over nodes 0..n-1. Mutators reject self-loops,
// duplicate arcs, and arcs that would close a directed cycle.
class Dag {
public:
    explicit Dag(int n) : n_(n), parents_(check_size(n)), children_(check_size(n)) {}

    Dag(int n, const std::vector<std::pair<int, int>>& arcs) : Dag(n) {
        for (const auto& [u, v] : arcs) add_arc(u, v);
    }

    int node_count() const { return n_; }

    std::size_t arc_count() const { return arc_count_; }

    bool has_arc(int u, int v) const {
        check_node(u);
        check_node(v);
        return children_[static_cast<std::size_t>(u)].contains(v);
    }

    bool adjacent(int u, int v) const { return has_arc(u, v) || has_arc(v, u); }

    void add_arc(int u, int v) {
        check_node(u);
        check_node(v);
        if (u == v) throw ArgumentError("add_arc: self-loop at node " + std::to_string(u));
        if (has_arc(u, v)) throw ArgumentError("add_arc: arc already present");
        if (has_arc(v, u) || path_exists(v, u))
            throw ArgumentError("add_arc: arc " + std::to_string(u) + "->" + std::to_string(v) +
                                " would create a cycle");
        children_[static_cast<std::size_t>(u)].insert(v);
        parents_[static_cast<std::size_t>(v)].insert(u);
        ++arc_count_;
    }

    void remove_arc(int u, int v) {
        if (!has_arc(u, v)) throw ArgumentError("remove_arc: arc not present");
        children_[static_cast<std::size_t>(u)].erase(v);
        parents_[static_cast<std::size_t>(v)].erase(u);
        --arc_count_;
    }

    void reverse_arc(int u, int v) {
        if (!has_arc(u, v)) throw ArgumentError("reverse_arc: arc not present");
        remove_arc(u, v);
        if (path_exists(u, v)) {
            add_arc(u, v);  // restore before reporting
            throw ArgumentError("reverse_arc: reversal would create a cycle");
        }
        add_arc(v, u);
    }

    const NodeSubset& parents(int v) const {
        check_node(v);
        return parents_[static_cast<std::size_t>(v)];
    }

    const NodeSubset& children(int v) const {
        check_node(v);
        return children_[static_cast<std::size_t>(v)];
    }

    NodeSubset neighbors(int v) const { return parents(v) | children(v); }

    // Co-parents: nodes sharing a child with v and not adjacent to v.
    NodeSubset spouses(int v) const {
        check_node(v);
        NodeSubset out;
        for (int c : children(v))
            for (int u : parents(c))
                if (u != v && !has_arc(u, v) && !has_arc(v, u)) out.insert(u);
        return out;
    }

    // Unshielded colliders (s, u, t): s -> u <- t, s and t non-adjacent, s < t.
    // Each unordered {s, t} pair appears once per common child u.
    std::vector<std::tuple<int, int, int>> v_structures() const {
        std::vector<std::tuple<int, int, int>> out;
        for (int u = 0; u < n_; ++u) {
            const auto& pa = parents_[static_cast<std::size_t>(u)].members();
            for (std::size_t i = 0; i < pa.size(); ++i)
                for (std::size_t j = i + 1; j < pa.size(); ++j)
                    if (!adjacent(pa[i], pa[j])) out.emplace_back(pa[i], u, pa[j]);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Undirected adjacencies, each as (u, v) with u < v, sorted.
    std::vector<std::pair<int, int>> skeleton() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(arc_count_);
        for (int u = 0; u < n_; ++u)
            for (int v : children_[static_cast<std::size_t>(u)])
                out.emplace_back(std::min(u, v), std::max(u, v));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(arc_count_);
        for (int u = 0; u < n_; ++u)
            for (int v : children_[static_cast<std::size_t>(u)]) out.emplace_back(u, v);
        return out;  // already sorted: u ascending, children ascending
    }

    bool path_exists(int from, int to) const {
        check_node(from);
        check_node(to);
        if (from == to) return true;
        std::vector<bool> seen(static_cast<std::size_t>(n_), false);
        std::vector<int> stack{from};
        seen[static_cast<std::size_t>(from)] = true;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int c : children_[static_cast<std::size_t>(x)]) {
                if (c == to) return true;
                if (!seen[static_cast<std::size_t>(c)]) {
                    seen[static_cast<std::size_t>(c)] = true;
                    stack.push_back(c);
                }
            }
        }
        return false;
    }

    // Kahn's algorithm, smallest ready index first.
    std::vector<int> topological_order() const {
        std::vector<int> indeg(static_cast<std::size_t>(n_), 0);
        for (int v = 0; v < n_; ++v)
            indeg[static_cast<std::size_t>(v)] =
                static_cast<int>(parents_[static_cast<std::size_t>(v)].size());
        NodeSubset ready;
        for (int v = 0; v < n_; ++v)
            if (indeg[static_cast<std::size_t>(v)] == 0) ready.insert(v);
        std::vector<int> order;
        order.reserve(static_cast<std::size_t>(n_));
        while (!ready.empty()) {
            const int v = ready[0];
            ready.erase(v);
            order.push_back(v);
            for (int c : children_[static_cast<std::size_t>(v)])
                if (--indeg[static_cast<std::size_t>(c)] == 0) ready.insert(c);
        }
        if (order.size() != static_cast<std::size_t>(n_))
            throw InternalError("topological_order: graph contains a cycle");
        return order;
    }

    bool operator==(const Dag& other) const {
        return n_ == other.n_ && parents_ == other.parents_;
    }

private:
    static std::size_t check_size(int n) {
        if (n < 0) throw ArgumentError("Dag: negative node count");
        return static_cast<std::size_t>(n);
    }

    void check_node(int v) const {
        if (v < 0 || v >= n_)
            throw ArgumentError("node index " + std::to_string(v) + " out of range [0, " +
                                std::to_string(n_) + ")");
    }

    int n_ = 0;
    std::vector<NodeSubset> parents_;
    std::vector<NodeSubset> children_;
    std::size_t arc_count_ = 0;
};

// Markov blanket read off the structure: parents, children and spouses of t.
inline NodeSubset true_markov_blanket(const Dag& dag, int t) {
    return dag.neighbors(t) | dag.spouses(t);
}

// Partially directed graph: a directed part plus undirected edges, with at
// most one edge kind per node pair.
class Pdag {
public:
    explicit Pdag(int n)
        : n_(n),
          dir_parents_(check_size(n)),
          dir_children_(check_size(n)),
          und_(check_size(n)) {}

    static Pdag from_dag(const Dag& dag) {
        Pdag p(dag.node_count());
        for (const auto& [u, v] : dag.arcs()) p.add_directed(u, v);
        return p;
    }

    int node_count() const { return n_; }

    bool has_directed(int u, int v) const {
        check_node(u);
        check_node(v);
        return dir_children_[static_cast<std::size_t>(u)].contains(v);
    }

    bool has_undirected(int u, int v) const {
        check_node(u);
        check_node(v);
        return und_[static_cast<std::size_t>(u)].contains(v);
    }

    bool adjacent(int u, int v) const {
        return has_directed(u, v) || has_directed(v, u) || has_undirected(u, v);
    }

    void add_directed(int u, int v) {
        check_pair(u, v);
        if (adjacent(u, v)) throw ArgumentError("add_directed: pair already linked");
        dir_children_[static_cast<std::size_t>(u)].insert(v);
        dir_parents_[static_cast<std::size_t>(v)].insert(u);
    }

    void add_undirected(int u, int v) {
        check_pair(u, v);
        if (adjacent(u, v)) throw ArgumentError("add_undirected: pair already linked");
        und_[static_cast<std::size_t>(u)].insert(v);
        und_[static_cast<std::size_t>(v)].insert(u);
    }

    void remove_directed(int u, int v) {
        if (!has_directed(u, v)) throw ArgumentError("remove_directed: arc not present");
        dir_children_[static_cast<std::size_t>(u)].erase(v);
        dir_parents_[static_cast<std::size_t>(v)].erase(u);
    }

    void remove_undirected(int u, int v) {
        if (!has_undirected(u, v)) throw ArgumentError("remove_undirected: edge not present");
        und_[static_cast<std::size_t>(u)].erase(v);
        und_[static_cast<std::size_t>(v)].erase(u);
    }

    // Replaces the undirected edge {u, v} with u -> v.
    void orient(int u, int v) {
        remove_undirected(u, v);
        dir_children_[static_cast<std::size_t>(u)].insert(v);
        dir_parents_[static_cast<std::size_t>(v)].insert(u);
    }

    const NodeSubset& directed_parents(int v) const {
        check_node(v);
        return dir_parents_[static_cast<std::size_t>(v)];
    }

    const NodeSubset& directed_children(int v) const {
        check_node(v);
        return dir_children_[static_cast<std::size_t>(v)];
    }

    const NodeSubset& undirected_neighbors(int v) const {
        check_node(v);
        return und_[static_cast<std::size_t>(v)];
    }

    NodeSubset adjacents(int v) const {
        return directed_parents(v) | directed_children(v) | undirected_neighbors(v);
    }

    std::vector<std::pair<int, int>> directed_arcs() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v : dir_children_[static_cast<std::size_t>(u)]) out.emplace_back(u, v);
        return out;
    }

    std::vector<std::pair<int, int>> undirected_edges() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u)
            for (int v : und_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::vector<std::pair<int, int>> skeleton() const {
        std::vector<std::pair<int, int>> out;
        for (int u = 0; u < n_; ++u) {
            for (int v : dir_children_[static_cast<std::size_t>(u)])
                out.emplace_back(std::min(u, v), std::max(u, v));
            for (int v : und_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t undirected_count() const {
        std::size_t c = 0;
        for (int u = 0; u < n_; ++u) c += und_[static_cast<std::size_t>(u)].size();
        return c / 2;
    }

    // True when the directed part has a directed path from -> to.
    bool directed_path_exists(int from, int to) const {
        check_node(from);
        check_node(to);
        if (from == to) return true;
        std::vector<bool> seen(static_cast<std::size_t>(n_), false);
        std::vector<int> stack{from};
        seen[static_cast<std::size_t>(from)] = true;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int c : dir_children_[static_cast<std::size_t>(x)]) {
                if (c == to) return true;
                if (!seen[static_cast<std::size_t>(c)]) {
                    seen[static_cast<std::size_t>(c)] = true;
                    stack.push_back(c);
                }
            }
        }
        return false;
    }

    bool operator==(const Pdag& other) const {
        return n_ == other.n_ && dir_parents_ == other.dir_parents_ && und_ == other.und_;
    }

private:
    static std::size_t check_size(int n) {
        if (n < 0) throw ArgumentError("Pdag: negative node count");
        return static_cast<std::size_t>(n);
    }

    void check_node(int v) const {
        if (v < 0 || v >= n_)
            throw ArgumentError("node index " + std::to_string(v) + " out of range [0, " +
                                std::to_string(n_) + ")");
    }

    void check_pair(int u, int v) const {
        check_node(u);
        check_node(v);
        if (u == v) throw ArgumentError("self-loop at node " + std::to_string(u));
    }

    int n_ = 0;
    std::vector<NodeSubset> dir_parents_;
    std::vector<NodeSubset> dir_children_;
    std::vector<NodeSubset> und_;
};

}  // namespace sll
