#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "sll/common.hpp"

namespace sll {

struct Variable {
    int index = 0;
    std::string name;
    int arity = 2;  // >= 2
};

// A set of node indices kept sorted and unique; iteration order is ascending.
class NodeSubset {
public:
    NodeSubset() = default;

    NodeSubset(std::initializer_list<int> nodes) : members_(nodes) { normalize(); }

    explicit NodeSubset(std::vector<int> nodes) : members_(std::move(nodes)) { normalize(); }

    static NodeSubset full(int n) {
        NodeSubset s;
        s.members_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) s.members_[static_cast<std::size_t>(i)] = i;
        return s;
    }

    bool contains(int v) const {
        return std::binary_search(members_.begin(), members_.end(), v);
    }

    void insert(int v) {
        auto it = std::lower_bound(members_.begin(), members_.end(), v);
        if (it == members_.end() || *it != v) members_.insert(it, v);
    }

    void erase(int v) {
        auto it = std::lower_bound(members_.begin(), members_.end(), v);
        if (it != members_.end() && *it == v) members_.erase(it);
    }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    void clear() { members_.clear(); }

    int operator[](std::size_t i) const { return members_[i]; }

    bool subset_of(const NodeSubset& other) const {
        return std::includes(other.members_.begin(), other.members_.end(),
                             members_.begin(), members_.end());
    }

    NodeSubset unite(const NodeSubset& other) const {
        NodeSubset out;
        out.members_.reserve(members_.size() + other.members_.size());
        std::set_union(members_.begin(), members_.end(), other.members_.begin(),
                       other.members_.end(), std::back_inserter(out.members_));
        return out;
    }

    NodeSubset intersect(const NodeSubset& other) const {
        NodeSubset out;
        std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                              other.members_.end(), std::back_inserter(out.members_));
        return out;
    }

    NodeSubset minus(const NodeSubset& other) const {
        NodeSubset out;
        std::set_difference(members_.begin(), members_.end(), other.members_.begin(),
                            other.members_.end(), std::back_inserter(out.members_));
        return out;
    }

    const std::vector<int>& members() const { return members_; }

    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool operator==(const NodeSubset& other) const = default;
    auto operator<=>(const NodeSubset& other) const = default;

private:
    void normalize() {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    std::vector<int> members_;
};

inline NodeSubset operator|(const NodeSubset& a, const NodeSubset& b) { return a.unite(b); }
inline NodeSubset operator&(const NodeSubset& a, const NodeSubset& b) { return a.intersect(b); }
inline NodeSubset operator-(const NodeSubset& a, const NodeSubset& b) { return a.minus(b); }

}  // namespace sll
