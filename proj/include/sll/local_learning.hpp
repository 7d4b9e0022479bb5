#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/dataset.hpp"
#include "sll/exact_search.hpp"
#include "sll/greedy_search.hpp"
#include "sll/parallel.hpp"
#include "sll/scoring.hpp"
#include "sll/types.hpp"

namespace sll {

// Node visit order for the growth loops. Both orders coincide with ascending
// column index here, because node identity is positional in the dataset; the
// knob stays for configs that spell it out.
enum class VisitOrder { ascending_index, data_order };

struct SllConfig {
    BdeuParams scoring;
    int max_indegree = 5;
    int exact_limit = 20;  // >= 3; larger subsets fall back to hill climbing
    VisitOrder visit_order = VisitOrder::ascending_index;
    GreedyParams fallback;  // parameters for the fallback search
};

inline void validate_config(const SllConfig& cfg) {
    if (cfg.exact_limit < 3) throw ArgumentError("SllConfig: exact_limit must be at least 3");
    if (cfg.max_indegree < 0) throw ArgumentError("SllConfig: negative in-degree cap");
    if (!(cfg.scoring.ess > 0.0)) throw ArgumentError("SllConfig: ess must be positive");
}

// A learned node set plus whether any subset search fell back to the
// hill-climbing approximation along the way.
struct LearnedSet {
    NodeSubset set;
    bool inexact = false;
};

// Shared memo for one (dataset, config) pair: local scores, per-target
// potential neighbors and potential spouses, and a counter of subset searches.
// Reads run concurrently; recomputation races are benign because results are
// pure functions of the inputs.
class SllCache {
public:
    ScoreMemo& memo() { return memo_; }

    std::uint64_t optimal_network_calls() const { return calls_.load(); }
    void count_call() { calls_.fetch_add(1); }

    std::optional<LearnedSet> lookup_neighbors(int t) const {
        std::shared_lock lock(mu_);
        const auto it = pn_.find(t);
        if (it == pn_.end()) return std::nullopt;
        return it->second;
    }

    void store_neighbors(int t, const LearnedSet& value) {
        std::unique_lock lock(mu_);
        pn_.emplace(t, value);
    }

    std::optional<LearnedSet> lookup_spouses(int t, const NodeSubset& h_star) const {
        std::shared_lock lock(mu_);
        const auto it = ps_.find(t);
        if (it == ps_.end() || it->second.first != h_star) return std::nullopt;
        return it->second.second;
    }

    void store_spouses(int t, const NodeSubset& h_star, const LearnedSet& value) {
        std::unique_lock lock(mu_);
        ps_.emplace(t, std::make_pair(h_star, value));
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<int, LearnedSet> pn_;
    std::unordered_map<int, std::pair<NodeSubset, LearnedSet>> ps_;
    ScoreMemo memo_;
    std::atomic<std::uint64_t> calls_{0};
};

namespace detail {

inline ExactResult subset_search(const Dataset& data, const NodeSubset& z, const SllConfig& cfg,
                                 SllCache& cache) {
    cache.count_call();
    return optimal_network(data, z, cfg.scoring, cfg.max_indegree, cfg.exact_limit, &cache.memo(),
                           &cfg.fallback);
}

inline void check_target(const Dataset& data, int t) {
    if (t < 0 || t >= data.var_count())
        throw ArgumentError("target index " + std::to_string(t) + " out of range");
}

}  // namespace detail

// Grows a candidate neighbor set for t by one pass over the other nodes in
// visit order: each step learns an optimal network over {t, v} plus the
// current candidates and keeps t's neighbors in it. Nodes dropped along the
// way are never reconsidered. The result can contain false positives, but
// asymptotically misses no true neighbor.
inline LearnedSet find_potential_neighbors(const Dataset& data, int t, const SllConfig& cfg,
                                           SllCache* cache = nullptr) {
    detail::check_target(data, t);
    validate_config(cfg);
    SllCache local;
    SllCache& c = cache != nullptr ? *cache : local;
    if (auto hit = c.lookup_neighbors(t)) return *hit;

    LearnedSet out;
    for (int v = 0; v < data.var_count(); ++v) {
        if (v == t) continue;
        NodeSubset z = out.set;
        z.insert(t);
        z.insert(v);
        const ExactResult res = detail::subset_search(data, z, cfg, c);
        out.set = res.dag.neighbors(t);
        out.inexact = out.inexact || !res.exact;
    }
    c.store_neighbors(t, out);
    return out;
}

// Symmetry correction: keeps only candidates whose own candidate set names t.
inline LearnedSet find_neighbors(const Dataset& data, int t, const SllConfig& cfg,
                                 SllCache& cache) {
    const LearnedSet pn = find_potential_neighbors(data, t, cfg, &cache);
    LearnedSet out;
    out.inexact = pn.inexact;
    for (int v : pn.set) {
        const LearnedSet back = find_potential_neighbors(data, v, cfg, &cache);
        out.inexact = out.inexact || back.inexact;
        if (back.set.contains(t)) out.set.insert(v);
    }
    return out;
}

// Grows a candidate spouse set for t against a fixed neighbor set h_star. The
// candidate pool is the neighbors of t's neighbors; each step learns an
// optimal network over {t, v}, h_star and the current spouses, keeping t's
// co-parents in it. An empty h_star yields an empty result with no searches.
inline LearnedSet find_potential_spouses(const Dataset& data, int t, const NodeSubset& h_star,
                                         const SllConfig& cfg, SllCache* cache = nullptr) {
    detail::check_target(data, t);
    validate_config(cfg);
    if (h_star.contains(t))
        throw ArgumentError("find_potential_spouses: target inside its neighbor set");
    for (int u : h_star)
        if (u < 0 || u >= data.var_count())
            throw ArgumentError("find_potential_spouses: neighbor out of range");
    SllCache local;
    SllCache& c = cache != nullptr ? *cache : local;
    if (auto hit = c.lookup_spouses(t, h_star)) return *hit;

    LearnedSet out;
    if (h_star.empty()) {
        c.store_spouses(t, h_star, out);
        return out;
    }

    NodeSubset pool;
    for (int u : h_star) {
        const LearnedSet around = find_neighbors(data, u, cfg, c);
        out.inexact = out.inexact || around.inexact;
        pool = pool | around.set;
    }
    NodeSubset excluded = h_star;
    excluded.insert(t);
    const NodeSubset order = pool - excluded;

    for (int v : order) {
        NodeSubset z = h_star | out.set;
        z.insert(t);
        z.insert(v);
        const ExactResult res = detail::subset_search(data, z, cfg, c);
        out.set = res.dag.spouses(t);
        out.inexact = out.inexact || !res.exact;
    }
    c.store_spouses(t, h_star, out);
    return out;
}

// Union correction: adds every node whose own potential-spouse set names t.
// Members of t's neighbor set cannot qualify, since symmetry puts t inside
// their neighbor sets and so outside their spouse pools.
inline LearnedSet find_spouses(const Dataset& data, int t, const SllConfig& cfg, SllCache& cache) {
    const LearnedSet h_star = find_neighbors(data, t, cfg, cache);
    LearnedSet out = find_potential_spouses(data, t, h_star.set, cfg, &cache);
    out.inexact = out.inexact || h_star.inexact;
    for (int v = 0; v < data.var_count(); ++v) {
        if (v == t || h_star.set.contains(v)) continue;
        const LearnedSet h_v = find_neighbors(data, v, cfg, cache);
        const LearnedSet ps_v = find_potential_spouses(data, v, h_v.set, cfg, &cache);
        out.inexact = out.inexact || h_v.inexact || ps_v.inexact;
        if (ps_v.set.contains(t)) out.set.insert(v);
    }
    return out;
}

// Neighbors plus spouses of t.
inline LearnedSet markov_blanket(const Dataset& data, int t, const SllConfig& cfg,
                                 SllCache& cache) {
    const LearnedSet nb = find_neighbors(data, t, cfg, cache);
    const LearnedSet sp = find_spouses(data, t, cfg, cache);
    return {nb.set | sp.set, nb.inexact || sp.inexact};
}

struct BlanketResult {
    NodeSubset neighbors;
    NodeSubset spouses;
    bool inexact = false;
};

// Blankets for every node off one shared cache; results match independent
// fresh-cache runs because every cached quantity is a pure function of the
// dataset and config.
inline std::vector<BlanketResult> all_blankets(const Dataset& data, const SllConfig& cfg,
                                               int threads = 1, SllCache* cache = nullptr) {
    validate_config(cfg);
    const int n = data.var_count();
    SllCache local;
    SllCache& c = cache != nullptr ? *cache : local;
    std::vector<BlanketResult> out(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t t) {
        const LearnedSet nb = find_neighbors(data, static_cast<int>(t), cfg, c);
        const LearnedSet sp = find_spouses(data, static_cast<int>(t), cfg, c);
        out[t] = {nb.set, sp.set, nb.inexact || sp.inexact};
    });
    return out;
}

}  // namespace sll
