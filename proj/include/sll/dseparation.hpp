#pragma once

#include <string>
#include <vector>

#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/types.hpp"

namespace sll {

// True when every trail between u and v is blocked by z. Linear-time
// reachability over (node, arrival-direction) states; colliders stay open
// exactly when their node is in z or has a descendant there.
inline bool d_separated(const Dag& dag, int u, int v, const NodeSubset& z) {
    const int n = dag.node_count();
    auto check = [&](int x, const char* what) {
        if (x < 0 || x >= n)
            throw ArgumentError(std::string("d_separated: ") + what + " out of range");
    };
    check(u, "u");
    check(v, "v");
    for (int x : z) check(x, "conditioning node");
    if (u == v) throw ArgumentError("d_separated: endpoints must differ");
    if (z.contains(u) || z.contains(v))
        throw ArgumentError("d_separated: endpoint inside conditioning set");

    // z plus every ancestor of z.
    std::vector<bool> anc(static_cast<std::size_t>(n), false);
    {
        std::vector<int> stack;
        for (int x : z) {
            anc[static_cast<std::size_t>(x)] = true;
            stack.push_back(x);
        }
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            for (int p : dag.parents(x)) {
                if (!anc[static_cast<std::size_t>(p)]) {
                    anc[static_cast<std::size_t>(p)] = true;
                    stack.push_back(p);
                }
            }
        }
    }

    std::vector<bool> in_z(static_cast<std::size_t>(n), false);
    for (int x : z) in_z[static_cast<std::size_t>(x)] = true;

    // State encoding: node * 2 + dir, dir 0 = arrived along an arc (down),
    // dir 1 = arrived against one (up). The start counts as up.
    std::vector<bool> seen(static_cast<std::size_t>(n) * 2, false);
    std::vector<int> stack;
    auto push = [&](int x, int dir) {
        const std::size_t s = static_cast<std::size_t>(x) * 2 + static_cast<std::size_t>(dir);
        if (!seen[s]) {
            seen[s] = true;
            stack.push_back(static_cast<int>(s));
        }
    };
    push(u, 1);
    while (!stack.empty()) {
        const int s = stack.back();
        stack.pop_back();
        const int x = s / 2;
        const int dir = s % 2;
        if (x == v) return false;
        const bool blocked = in_z[static_cast<std::size_t>(x)];
        if (!blocked)
            for (int c : dag.children(x)) push(c, 0);
        if (dir == 0) {
            if (anc[static_cast<std::size_t>(x)])
                for (int p : dag.parents(x)) push(p, 1);
        } else {
            if (!blocked)
                for (int p : dag.parents(x)) push(p, 1);
        }
    }
    return true;
}

}  // namespace sll
