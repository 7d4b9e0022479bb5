#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/dataset.hpp"
#include "sll/types.hpp"

namespace sll {

struct BdeuParams {
    double ess = 1.0;  // equivalent sample size, > 0
};

namespace detail {

#if defined(__unix__) || defined(__APPLE__)
// Reentrant form; std::lgamma writes the global signgam on glibc.
inline double log_gamma(double x) {
    int sign = 0;
    return ::lgamma_r(x, &sign);
}
#else
inline double log_gamma(double x) { return std::lgamma(x); }
#endif

// Marginal-likelihood term for one family given per-cell counts delivered as
// (parent config, child value, count) runs plus per-config totals.
struct BdeuAccumulator {
    double alpha_j;
    double alpha_jk;
    double score = 0.0;

    BdeuAccumulator(double ess, double q, double r)
        : alpha_j(ess / q), alpha_jk(ess / (q * r)) {}

    void config(std::uint64_t n_j) {
        if (n_j > 0)
            score += log_gamma(alpha_j) - log_gamma(alpha_j + static_cast<double>(n_j));
    }

    void cell(std::uint64_t n_jk) {
        if (n_jk > 0)
            score += log_gamma(alpha_jk + static_cast<double>(n_jk)) - log_gamma(alpha_jk);
    }
};

}  // namespace detail

// BDeu local score of node v with the given parent set: the log marginal
// likelihood of v's family under a uniform Dirichlet prior with total weight
// ess split evenly over the q*r cells. Parent configurations never observed
// contribute nothing; an empty dataset scores 0.
inline double bdeu_local_score(const Dataset& data, int v, const NodeSubset& parents,
                               const BdeuParams& params) {
    if (!(params.ess > 0.0)) throw ArgumentError("bdeu: ess must be positive");
    if (v < 0 || v >= data.var_count()) throw ArgumentError("bdeu: node out of range");
    if (parents.contains(v)) throw ArgumentError("bdeu: node cannot be its own parent");
    for (int p : parents)
        if (p < 0 || p >= data.var_count()) throw ArgumentError("bdeu: parent out of range");

    const std::size_t m = data.row_count();
    const std::uint64_t r = static_cast<std::uint64_t>(data.arity(v));
    std::uint64_t q = 1;
    for (int p : parents) {
        const std::uint64_t a = static_cast<std::uint64_t>(data.arity(p));
        if (q > (std::uint64_t(1) << 62) / (a * r))
            throw ArgumentError("bdeu: parent configuration space too large");
        q *= a;
    }
    if (m == 0) return 0.0;

    detail::BdeuAccumulator acc(params.ess, static_cast<double>(q), static_cast<double>(r));

    const std::size_t d = parents.size();
    std::vector<const std::uint8_t*> cols(d);
    std::vector<std::uint64_t> radix(d);
    {
        std::uint64_t place = r;  // child value is the least significant digit
        // fill from the last parent backwards so the lowest index ends up most significant
        const auto& ps = parents.members();
        for (std::size_t k = ps.size(); k-- > 0;) {
            cols[k] = data.column(ps[k]).data();
            radix[k] = place;
            place *= static_cast<std::uint64_t>(data.arity(ps[k]));
        }
    }
    const std::uint8_t* child = data.column(v).data();

    const std::uint64_t cells = q * r;
    constexpr std::uint64_t kDenseLimit = std::uint64_t(1) << 22;
    if (cells <= kDenseLimit) {
        std::vector<std::uint32_t> counts(cells, 0);
        for (std::size_t row = 0; row < m; ++row) {
            std::uint64_t key = child[row];
            for (std::size_t k = 0; k < d; ++k)
                key += radix[k] * static_cast<std::uint64_t>(cols[k][row]);
            ++counts[key];
        }
        for (std::uint64_t j = 0; j < q; ++j) {
            std::uint64_t n_j = 0;
            const std::uint64_t base = j * r;
            for (std::uint64_t k = 0; k < r; ++k) n_j += counts[base + k];
            if (n_j == 0) continue;
            acc.config(n_j);
            for (std::uint64_t k = 0; k < r; ++k) acc.cell(counts[base + k]);
        }
    } else {
        std::vector<std::uint64_t> keys(m);
        for (std::size_t row = 0; row < m; ++row) {
            std::uint64_t key = child[row];
            for (std::size_t k = 0; k < d; ++k)
                key += radix[k] * static_cast<std::uint64_t>(cols[k][row]);
            keys[row] = key;
        }
        std::sort(keys.begin(), keys.end());
        std::size_t i = 0;
        while (i < m) {
            const std::uint64_t j = keys[i] / r;
            std::uint64_t n_j = 0;
            while (i < m && keys[i] / r == j) {
                const std::uint64_t cell = keys[i];
                std::uint64_t n_jk = 0;
                while (i < m && keys[i] == cell) {
                    ++n_jk;
                    ++i;
                }
                acc.cell(n_jk);
                n_j += n_jk;
            }
            acc.config(n_j);
        }
    }
    return acc.score;
}

// Sum of local scores over all nodes; the dataset must cover the graph.
inline double score_dag(const Dataset& data, const Dag& dag, const BdeuParams& params) {
    if (dag.node_count() != data.var_count())
        throw ArgumentError("score_dag: node count does not match dataset");
    double total = 0.0;
    for (int v = 0; v < dag.node_count(); ++v)
        total += bdeu_local_score(data, v, dag.parents(v), params);
    return total;
}

// All local scores of one node over subsets of a candidate set, capped by
// in-degree. Entries are keyed by parent set; every admissible subset is
// present exactly once.
struct LocalScoreTable {
    int node = -1;
    NodeSubset candidates;
    int max_indegree = 0;
    std::map<NodeSubset, double> entries;

    double at(const NodeSubset& parents) const {
        const auto it = entries.find(parents);
        if (it == entries.end()) throw ArgumentError("score table: parent set not covered");
        return it->second;
    }
};

inline LocalScoreTable build_score_table(const Dataset& data, int v, const NodeSubset& candidates,
                                         const BdeuParams& params, int max_indegree) {
    if (max_indegree < 0) throw ArgumentError("build_score_table: negative in-degree cap");
    if (candidates.contains(v))
        throw ArgumentError("build_score_table: node among its own candidates");
    LocalScoreTable table;
    table.node = v;
    table.candidates = candidates;
    table.max_indegree = max_indegree;

    const auto& pool = candidates.members();
    std::vector<int> picked;
    auto recurse = [&](auto&& self, std::size_t next) -> void {
        table.entries.emplace(NodeSubset(picked), bdeu_local_score(data, v, NodeSubset(picked), params));
        if (static_cast<int>(picked.size()) == max_indegree) return;
        for (std::size_t i = next; i < pool.size(); ++i) {
            picked.push_back(pool[i]);
            self(self, i + 1);
            picked.pop_back();
        }
    };
    recurse(recurse, 0);
    return table;
}

// Shared cache of local scores keyed by (node, parent set). Reads run
// concurrently; inserts are serialized and idempotent, so racing writers of
// the same key agree.
class ScoreMemo {
public:
    template <class Fn>
    double get_or_compute(int v, const NodeSubset& parents, Fn&& compute) {
        Key key;
        key.reserve(parents.size() + 1);
        key.push_back(v);
        key.insert(key.end(), parents.begin(), parents.end());
        {
            std::shared_lock lock(mu_);
            const auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        const double score = compute();
        std::unique_lock lock(mu_);
        return map_.emplace(std::move(key), score).first->second;
    }

    std::size_t size() const {
        std::shared_lock lock(mu_);
        return map_.size();
    }

private:
    using Key = std::vector<std::int32_t>;

    struct KeyHash {
        std::size_t operator()(const Key& key) const {
            std::uint64_t h = 0xcbf29ce484222325ULL;
            for (const std::int32_t x : key) {
                h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
                h *= 0x100000001b3ULL;
            }
            return static_cast<std::size_t>(h);
        }
    };

    mutable std::shared_mutex mu_;
    std::unordered_map<Key, double, KeyHash> map_;
};

// Memo-aware local score; falls through to a direct computation without one.
inline double cached_local_score(const Dataset& data, int v, const NodeSubset& parents,
                                 const BdeuParams& params, ScoreMemo* memo) {
    if (memo == nullptr) return bdeu_local_score(data, v, parents, params);
    return memo->get_or_compute(v, parents,
                                [&] { return bdeu_local_score(data, v, parents, params); });
}

}  // namespace sll
