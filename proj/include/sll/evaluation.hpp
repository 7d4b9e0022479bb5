#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sll/bayes_net.hpp"
#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/dataset.hpp"
#include "sll/exact_search.hpp"
#include "sll/global_construction.hpp"
#include "sll/greedy_search.hpp"
#include "sll/io.hpp"
#include "sll/local_learning.hpp"
#include "sll/parallel.hpp"
#include "sll/random.hpp"
#include "sll/scoring.hpp"
#include "sll/types.hpp"

namespace sll {

// Ancestral sampling in topological order; one RNG draw per cell.
inline Dataset forward_sample(const BayesianNetwork& net, std::size_t rows, std::uint64_t seed) {
    const int n = net.node_count();
    const std::vector<int> order = net.dag().topological_order();
    Dataset out(net.variables(), rows);
    Rng rng(seed);
    std::vector<int> vals(static_cast<std::size_t>(n), 0);
    for (std::size_t row = 0; row < rows; ++row) {
        for (const int v : order) {
            const std::size_t j = net.parent_config(v, [&](int p) { return vals[static_cast<std::size_t>(p)]; });
            const int r = net.arity(v);
            const double u = rng.next_double();
            double acc = 0.0;
            int pick = r - 1;
            for (int k = 0; k < r; ++k) {
                acc += net.probability(v, j, k);
                if (u < acc) {
                    pick = k;
                    break;
                }
            }
            vals[static_cast<std::size_t>(v)] = pick;
            out.set_value(v, row, static_cast<std::uint8_t>(pick));
        }
    }
    return out;
}

// Sum over targets of the symmetric difference between learned and true sets.
inline int slhd(const std::vector<NodeSubset>& learned, const std::vector<NodeSubset>& truth) {
    if (learned.size() != truth.size()) throw ArgumentError("slhd: target counts differ");
    int total = 0;
    for (std::size_t t = 0; t < learned.size(); ++t)
        total += static_cast<int>((learned[t] - truth[t]).size() + (truth[t] - learned[t]).size());
    return total;
}

// Structural Hamming distance over unordered pairs: one point when the pair's
// link differs in presence, orientation, or directedness.
inline int shd(const Pdag& a, const Pdag& b) {
    if (a.node_count() != b.node_count()) throw ArgumentError("shd: node counts differ");
    const int n = a.node_count();
    auto state = [](const Pdag& p, int u, int v) {
        if (p.has_undirected(u, v)) return 1;
        if (p.has_directed(u, v)) return 2;
        if (p.has_directed(v, u)) return 3;
        return 0;
    };
    int total = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (state(a, u, v) != state(b, u, v)) ++total;
    return total;
}

// Score of a consistent extension of the learned PDAG relative to the score
// of the true structure on the same data. 1.0 means score-equivalent with the
// truth; larger is worse (scores are negative log marginal likelihoods).
inline double normalized_score(const Dataset& data, const Pdag& learned, const Dag& truth,
                               const BdeuParams& params) {
    if (data.row_count() == 0) throw ArgumentError("normalized_score: empty dataset");
    const ExtendResult ext = pdag_extend_to_dag(learned);
    if (ext.flagged)
        log(LogLevel::warn, "normalized_score: learned graph had no consistent extension");
    const double learned_score = score_dag(data, ext.dag, params);
    const double truth_score = score_dag(data, truth, params);
    return learned_score / truth_score;
}

namespace detail {

inline double tv_distance(const double* a, const double* b, std::size_t r) {
    double total = 0.0;
    for (std::size_t k = 0; k < r; ++k) total += std::abs(a[k] - b[k]);
    return 0.5 * total;
}

// Smallest total-variation shift any single parent-value flip induces on the
// child's distribution, over all contexts; 1.0 for parentless nodes.
inline double cpt_margin(const std::vector<double>& table, const std::vector<int>& parent_arities,
                         std::size_t r) {
    if (parent_arities.empty()) return 1.0;
    const std::size_t d = parent_arities.size();
    std::vector<std::size_t> stride(d);
    std::size_t q = 1;
    for (std::size_t i = d; i-- > 0;) {
        stride[i] = q;
        q *= static_cast<std::size_t>(parent_arities[i]);
    }
    double worst = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t a = static_cast<std::size_t>(parent_arities[i]);
        for (std::size_t j = 0; j < q; ++j) {
            const std::size_t digit = (j / stride[i]) % a;
            for (std::size_t y = digit + 1; y < a; ++y) {
                const std::size_t j2 = j + (y - digit) * stride[i];
                worst = std::min(worst, tv_distance(&table[j * r], &table[j2 * r], r));
            }
        }
    }
    return worst;
}

// How visible each parent stays after averaging the child's distribution over
// all other-parent contexts: the best value-pair shift per parent, minimized
// over parents. Near zero for parity-like tables whose conditional effects
// cancel marginally (XOR traps), which strong flip margins do not rule out.
inline double parent_visibility(const std::vector<double>& table,
                                const std::vector<int>& parent_arities, std::size_t r) {
    if (parent_arities.empty()) return 1.0;
    const std::size_t d = parent_arities.size();
    std::vector<std::size_t> stride(d);
    std::size_t q = 1;
    for (std::size_t i = d; i-- > 0;) {
        stride[i] = q;
        q *= static_cast<std::size_t>(parent_arities[i]);
    }
    double worst = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t a = static_cast<std::size_t>(parent_arities[i]);
        std::vector<double> avg(a * r, 0.0);
        for (std::size_t j = 0; j < q; ++j) {
            const std::size_t digit = (j / stride[i]) % a;
            for (std::size_t k = 0; k < r; ++k) avg[digit * r + k] += table[j * r + k];
        }
        const double scale = static_cast<double>(a) / static_cast<double>(q);
        for (auto& x : avg) x *= scale;
        double best = 0.0;
        for (std::size_t x = 0; x < a; ++x)
            for (std::size_t y = x + 1; y < a; ++y)
                best = std::max(best, tv_distance(&avg[x * r], &avg[y * r], r));
        worst = std::min(worst, best);
    }
    return worst;
}

}  // namespace detail

// CPTs for a fixed structure with every parent provably influential: each
// row is Dirichlet(1) with entries floored at min_prob, resampled until every
// single-parent value flip moves the child's distribution by at least margin
// in total variation and every parent stays visible by at least margin after
// averaging over the other parents. The second condition rejects parity-like
// tables whose strong conditional effects cancel marginally. After the
// attempt budget the best candidate is kept with a warning.
inline BayesianNetwork faithful_network(const Dag& dag, const std::vector<int>& arities,
                                        std::uint64_t seed, double margin = 0.05,
                                        double min_prob = 0.01, int attempts = 500) {
    const int n = dag.node_count();
    if (static_cast<int>(arities.size()) != n)
        throw ArgumentError("faithful_network: arity count does not match graph");
    if (!(margin >= 0.0 && margin < 1.0)) throw ArgumentError("faithful_network: bad margin");
    if (!(min_prob >= 0.0 && min_prob < 0.5)) throw ArgumentError("faithful_network: bad min_prob");
    if (attempts < 1) throw ArgumentError("faithful_network: attempts must be positive");

    Rng rng(seed);
    std::vector<Variable> vars;
    vars.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        if (arities[static_cast<std::size_t>(v)] < 2 || arities[static_cast<std::size_t>(v)] > 255)
            throw ArgumentError("faithful_network: arity out of range");
        vars.push_back({v, "X" + std::to_string(v), arities[static_cast<std::size_t>(v)]});
    }

    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const std::size_t r = static_cast<std::size_t>(arities[static_cast<std::size_t>(v)]);
        std::vector<int> parent_arities;
        std::size_t q = 1;
        for (int p : dag.parents(v)) {
            parent_arities.push_back(arities[static_cast<std::size_t>(p)]);
            q *= static_cast<std::size_t>(arities[static_cast<std::size_t>(p)]);
        }
        std::vector<double> best;
        double best_margin = -1.0;
        for (int attempt = 0; attempt < attempts; ++attempt) {
            std::vector<double> table;
            table.reserve(q * r);
            for (std::size_t j = 0; j < q; ++j) {
                std::vector<double> row;
                for (int tries = 0; tries < 64; ++tries) {
                    row = rng.dirichlet_uniform(static_cast<int>(r));
                    if (*std::min_element(row.begin(), row.end()) >= min_prob) break;
                }
                if (*std::min_element(row.begin(), row.end()) < min_prob) {
                    double total = 0.0;
                    for (auto& p : row) total += (p = std::max(p, min_prob));
                    for (auto& p : row) p /= total;
                }
                table.insert(table.end(), row.begin(), row.end());
            }
            const double got = std::min(detail::cpt_margin(table, parent_arities, r),
                                        detail::parent_visibility(table, parent_arities, r));
            if (got > best_margin) {
                best_margin = got;
                best = std::move(table);
            }
            if (best_margin >= margin) break;
        }
        if (best_margin < margin)
            log(LogLevel::warn, "faithful_network: node " + std::to_string(v) +
                                    " kept margin " + std::to_string(best_margin));
        cpts[static_cast<std::size_t>(v)] = std::move(best);
    }
    return BayesianNetwork(dag, std::move(vars), std::move(cpts));
}

// Random structure plus faithful CPTs: a random topological order, then up to
// max_indegree parents drawn uniformly from each node's predecessors.
inline BayesianNetwork random_network(int n, int max_indegree, int arity_lo, int arity_hi,
                                      std::uint64_t seed, double margin = 0.05,
                                      double min_prob = 0.01) {
    if (n < 1) throw ArgumentError("random_network: need at least one node");
    if (max_indegree < 0) throw ArgumentError("random_network: negative in-degree cap");
    if (arity_lo < 2 || arity_hi < arity_lo || arity_hi > 255)
        throw ArgumentError("random_network: bad arity range");
    Rng rng(seed);
    std::vector<int> arities(static_cast<std::size_t>(n));
    for (auto& a : arities) a = rng.uniform_int(arity_lo, arity_hi);
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    rng.shuffle(perm);
    Dag dag(n);
    for (int i = 1; i < n; ++i) {
        const int v = perm[static_cast<std::size_t>(i)];
        const int d = rng.uniform_int(0, std::min(max_indegree, i));
        std::vector<int> pred(perm.begin(), perm.begin() + i);
        for (int j = 0; j < d; ++j) {
            const int k = j + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i - j)));
            std::swap(pred[static_cast<std::size_t>(j)], pred[static_cast<std::size_t>(k)]);
            dag.add_arc(pred[static_cast<std::size_t>(j)], v);
        }
    }
    return faithful_network(dag, arities, rng.next_u64(), margin, min_prob);
}

struct GeneratorSpec {
    int n = 15;
    int max_indegree = 3;
    int arity_lo = 2;
    int arity_hi = 3;
};

struct BenchmarkSpec {
    std::optional<BayesianNetwork> network;  // fixed truth; otherwise generated per replicate
    GeneratorSpec generator;
    std::vector<std::size_t> sample_sizes{500, 1000, 5000};
    int replicates = 10;
    std::uint64_t seed = 0;
    SllConfig sll;
    GreedyParams greedy;
};

inline const std::vector<std::string>& benchmark_methods() {
    static const std::vector<std::string> methods{"sll-local", "sll-c", "sll-g", "greedy",
                                                  "exact"};
    return methods;
}

struct BenchCell {
    std::string method;
    std::size_t sample_size = 0;
    int replicate = 0;
    int slhd_neighbors = 0;
    int slhd_blankets = 0;
    int shd = -1;  // -1 when the method learns no global structure
    double normalized = std::numeric_limits<double>::quiet_NaN();
    double seconds = 0.0;  // method runtime only; the one non-deterministic field
    bool inexact = false;
};

struct BenchAggregate {
    std::string method;
    std::size_t sample_size = 0;
    int count = 0;
    double slhd_neighbors_mean = 0.0, slhd_neighbors_sd = 0.0;
    double slhd_blankets_mean = 0.0, slhd_blankets_sd = 0.0;
    double shd_mean = std::numeric_limits<double>::quiet_NaN();
    double shd_sd = std::numeric_limits<double>::quiet_NaN();
    double normalized_mean = std::numeric_limits<double>::quiet_NaN();
    double normalized_sd = std::numeric_limits<double>::quiet_NaN();
};

struct MetricReport {
    std::vector<BenchCell> cells;
    std::vector<BenchAggregate> aggregates;
};

namespace detail {

inline std::pair<double, double> mean_sd(const std::vector<double>& xs) {
    if (xs.empty())
        return {std::numeric_limits<double>::quiet_NaN(),
                std::numeric_limits<double>::quiet_NaN()};
    double mean = 0.0;
    for (const double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (const double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

inline void structure_sets(const Dag& dag, std::vector<NodeSubset>& neighbors,
                           std::vector<NodeSubset>& blankets) {
    const int n = dag.node_count();
    neighbors.resize(static_cast<std::size_t>(n));
    blankets.resize(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        neighbors[static_cast<std::size_t>(t)] = dag.neighbors(t);
        blankets[static_cast<std::size_t>(t)] = true_markov_blanket(dag, t);
    }
}

}  // namespace detail

// Runs every (replicate, sample size, method) cell and aggregates metrics per
// (method, sample size). Cell work runs in parallel; sampling and seeding are
// replicate-deterministic, so results do not depend on the thread count.
inline MetricReport run_benchmark(const BenchmarkSpec& spec,
                                  const std::vector<std::string>& methods, int threads = 1) {
    if (spec.replicates < 1) throw ArgumentError("benchmark: replicates must be positive");
    if (spec.sample_sizes.empty()) throw ArgumentError("benchmark: no sample sizes");
    for (const std::size_t m : spec.sample_sizes)
        if (m == 0) throw ArgumentError("benchmark: sample sizes must be positive");
    if (methods.empty()) throw ArgumentError("benchmark: no methods");
    for (std::size_t i = 0; i < methods.size(); ++i) {
        const auto& known = benchmark_methods();
        if (std::find(known.begin(), known.end(), methods[i]) == known.end())
            throw ArgumentError("benchmark: unknown method '" + methods[i] + "'");
        for (std::size_t j = i + 1; j < methods.size(); ++j)
            if (methods[i] == methods[j])
                throw ArgumentError("benchmark: duplicate method '" + methods[i] + "'");
    }
    validate_config(spec.sll);

    std::vector<BayesianNetwork> nets;
    nets.reserve(static_cast<std::size_t>(spec.replicates));
    for (int r = 0; r < spec.replicates; ++r) {
        if (spec.network.has_value())
            nets.push_back(*spec.network);
        else
            nets.push_back(random_network(spec.generator.n, spec.generator.max_indegree,
                                          spec.generator.arity_lo, spec.generator.arity_hi,
                                          derive_seed(spec.seed, 0x6e65u, static_cast<std::uint64_t>(r))));
    }
    const int n = nets.front().node_count();
    const bool wants_exact = std::find(methods.begin(), methods.end(), "exact") != methods.end();
    if (wants_exact && (n > spec.sll.exact_limit || n > kExactNodeCap))
        throw ArgumentError("benchmark: 'exact' needs at most " +
                            std::to_string(std::min(spec.sll.exact_limit, kExactNodeCap)) +
                            " variables");

    std::vector<std::vector<Dataset>> data;
    data.reserve(nets.size());
    for (int r = 0; r < spec.replicates; ++r) {
        std::vector<Dataset> per;
        per.reserve(spec.sample_sizes.size());
        for (std::size_t mi = 0; mi < spec.sample_sizes.size(); ++mi)
            per.push_back(forward_sample(
                nets[static_cast<std::size_t>(r)], spec.sample_sizes[mi],
                derive_seed(spec.seed, 0xda7au + static_cast<std::uint64_t>(r), mi)));
        data.push_back(std::move(per));
    }

    const std::size_t cell_count =
        static_cast<std::size_t>(spec.replicates) * spec.sample_sizes.size() * methods.size();
    MetricReport report;
    report.cells.resize(cell_count);

    parallel_for(cell_count, threads, [&](std::size_t idx) {
        const std::size_t k = idx % methods.size();
        const std::size_t mi = (idx / methods.size()) % spec.sample_sizes.size();
        const std::size_t r = idx / (methods.size() * spec.sample_sizes.size());
        const BayesianNetwork& net = nets[r];
        const Dataset& d = data[r][mi];
        const std::string& method = methods[k];

        BenchCell cell;
        cell.method = method;
        cell.sample_size = spec.sample_sizes[mi];
        cell.replicate = static_cast<int>(r);

        std::vector<NodeSubset> truth_nb, truth_bl;
        detail::structure_sets(net.dag(), truth_nb, truth_bl);

        std::vector<NodeSubset> learned_nb, learned_bl;
        std::optional<Dag> learned;

        const auto t0 = std::chrono::steady_clock::now();
        if (method == "sll-local") {
            const std::vector<BlanketResult> blankets = all_blankets(d, spec.sll);
            learned_nb.reserve(blankets.size());
            learned_bl.reserve(blankets.size());
            for (const auto& b : blankets) {
                learned_nb.push_back(b.neighbors);
                learned_bl.push_back(b.neighbors | b.spouses);
                cell.inexact = cell.inexact || b.inexact;
            }
        } else if (method == "sll-c") {
            const GlobalResult res = sll_plus_c(d, spec.sll);
            learned = res.dag;
            cell.inexact = res.inexact;
        } else if (method == "sll-g") {
            const GlobalResult res = sll_plus_g(d, spec.sll, spec.greedy);
            learned = res.dag;
            cell.inexact = res.inexact;
        } else if (method == "greedy") {
            learned = greedy_search(d, spec.sll.scoring, spec.greedy).dag;
        } else {
            const ExactResult res =
                optimal_network(d, NodeSubset::full(n), spec.sll.scoring, spec.sll.max_indegree,
                                spec.sll.exact_limit);
            learned = res.dag;
            cell.inexact = !res.exact;
        }
        const auto t1 = std::chrono::steady_clock::now();
        cell.seconds = std::chrono::duration<double>(t1 - t0).count();

        if (learned.has_value()) {
            detail::structure_sets(*learned, learned_nb, learned_bl);
            cell.shd = shd(dag_to_cpdag(*learned), dag_to_cpdag(net.dag()));
            cell.normalized =
                normalized_score(d, dag_to_cpdag(*learned), net.dag(), spec.sll.scoring);
        }
        cell.slhd_neighbors = slhd(learned_nb, truth_nb);
        cell.slhd_blankets = slhd(learned_bl, truth_bl);
        report.cells[idx] = std::move(cell);
    });

    for (const auto& method : methods) {
        for (const std::size_t m : spec.sample_sizes) {
            BenchAggregate agg;
            agg.method = method;
            agg.sample_size = m;
            std::vector<double> nb, bl, sh, ns;
            for (const auto& cell : report.cells) {
                if (cell.method != method || cell.sample_size != m) continue;
                ++agg.count;
                nb.push_back(cell.slhd_neighbors);
                bl.push_back(cell.slhd_blankets);
                if (cell.shd >= 0) sh.push_back(cell.shd);
                if (!std::isnan(cell.normalized)) ns.push_back(cell.normalized);
            }
            std::tie(agg.slhd_neighbors_mean, agg.slhd_neighbors_sd) = detail::mean_sd(nb);
            std::tie(agg.slhd_blankets_mean, agg.slhd_blankets_sd) = detail::mean_sd(bl);
            std::tie(agg.shd_mean, agg.shd_sd) = detail::mean_sd(sh);
            std::tie(agg.normalized_mean, agg.normalized_sd) = detail::mean_sd(ns);
            report.aggregates.push_back(std::move(agg));
        }
    }
    return report;
}

// Raw per-cell table. The seconds column is honest wall time and is the only
// part of the report that varies between identical runs.
inline void write_benchmark_csv(std::ostream& os, const MetricReport& report) {
    os << "method,sample_size,replicate,slhd_neighbors,slhd_blankets,shd,normalized_score,"
          "seconds,inexact\n";
    for (const auto& c : report.cells) {
        os << c.method << ',' << c.sample_size << ',' << c.replicate << ',' << c.slhd_neighbors
           << ',' << c.slhd_blankets << ',';
        if (c.shd >= 0) os << c.shd;
        os << ',';
        if (!std::isnan(c.normalized)) os << format_double(c.normalized);
        os << ',' << format_double(c.seconds) << ',' << (c.inexact ? 1 : 0) << '\n';
    }
}

// Aggregate JSON; deliberately excludes timing so reruns are byte-identical.
inline void write_benchmark_json(std::ostream& os, const MetricReport& report) {
    JsonWriter w(os);
    w.begin_object();
    w.key("aggregates").begin_array();
    for (const auto& a : report.aggregates) {
        w.begin_object();
        w.key("method").value(a.method);
        w.key("sample_size").value(a.sample_size);
        w.key("count").value(a.count);
        w.key("slhd_neighbors_mean").value(a.slhd_neighbors_mean);
        w.key("slhd_neighbors_sd").value(a.slhd_neighbors_sd);
        w.key("slhd_blankets_mean").value(a.slhd_blankets_mean);
        w.key("slhd_blankets_sd").value(a.slhd_blankets_sd);
        if (std::isnan(a.shd_mean)) {
            w.key("shd_mean").null();
            w.key("shd_sd").null();
        } else {
            w.key("shd_mean").value(a.shd_mean);
            w.key("shd_sd").value(a.shd_sd);
        }
        if (std::isnan(a.normalized_mean)) {
            w.key("normalized_score_mean").null();
            w.key("normalized_score_sd").null();
        } else {
            w.key("normalized_score_mean").value(a.normalized_mean);
            w.key("normalized_score_sd").value(a.normalized_sd);
        }
        w.end_object();
    }
    w.end_array();
    w.end_object();
    w.finish();
}

namespace detail {

inline std::string svg_num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

}  // namespace detail

// Line chart of one aggregate metric against sample size, one series per
// method, with +-1 sd whiskers. Returns an empty string when no method
// carries the metric. metric is one of slhd_neighbors, slhd_blankets, shd,
// normalized_score.
inline std::string render_benchmark_plot(const MetricReport& report, const std::string& metric) {
    auto pick = [&](const BenchAggregate& a) -> std::pair<double, double> {
        if (metric == "slhd_neighbors") return {a.slhd_neighbors_mean, a.slhd_neighbors_sd};
        if (metric == "slhd_blankets") return {a.slhd_blankets_mean, a.slhd_blankets_sd};
        if (metric == "shd") return {a.shd_mean, a.shd_sd};
        if (metric == "normalized_score") return {a.normalized_mean, a.normalized_sd};
        throw ArgumentError("render_benchmark_plot: unknown metric '" + metric + "'");
    };

    std::vector<std::string> methods;
    std::vector<std::size_t> sizes;
    for (const auto& a : report.aggregates) {
        if (std::isnan(pick(a).first)) continue;
        if (std::find(methods.begin(), methods.end(), a.method) == methods.end())
            methods.push_back(a.method);
        if (std::find(sizes.begin(), sizes.end(), a.sample_size) == sizes.end())
            sizes.push_back(a.sample_size);
    }
    if (methods.empty() || sizes.empty()) return "";
    std::sort(sizes.begin(), sizes.end());

    const double width = 640, height = 400;
    const double left = 70, right = width - 150, top = 36, bottom = height - 50;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& a : report.aggregates) {
        const auto [mean, sd] = pick(a);
        if (std::isnan(mean)) continue;
        lo = std::min(lo, mean - sd);
        hi = std::max(hi, mean + sd);
    }
    if (lo == hi) {
        lo -= 1.0;
        hi += 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double lx0 = std::log10(static_cast<double>(sizes.front()));
    const double lx1 = std::log10(static_cast<double>(sizes.back()));
    auto x_of = [&](std::size_t m) {
        if (sizes.size() == 1) return (left + right) / 2;
        const double f = (std::log10(static_cast<double>(m)) - lx0) / (lx1 - lx0);
        return left + f * (right - left);
    };
    auto y_of = [&](double v) { return bottom - (v - lo) / (hi - lo) * (bottom - top); };

    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::string svg;
    auto add = [&](const std::string& s) { svg += s; };
    add("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
        "viewBox=\"0 0 640 400\">\n");
    add("<rect width=\"640\" height=\"400\" fill=\"white\"/>\n");
    add("<text x=\"" + detail::svg_num((left + right) / 2) +
        "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
        metric + "</text>\n");

    add("<line x1=\"" + detail::svg_num(left) + "\" y1=\"" + detail::svg_num(bottom) + "\" x2=\"" +
        detail::svg_num(right) + "\" y2=\"" + detail::svg_num(bottom) +
        "\" stroke=\"black\"/>\n");
    add("<line x1=\"" + detail::svg_num(left) + "\" y1=\"" + detail::svg_num(top) + "\" x2=\"" +
        detail::svg_num(left) + "\" y2=\"" + detail::svg_num(bottom) + "\" stroke=\"black\"/>\n");

    for (const std::size_t m : sizes) {
        const double x = x_of(m);
        add("<line x1=\"" + detail::svg_num(x) + "\" y1=\"" + detail::svg_num(bottom) + "\" x2=\"" +
            detail::svg_num(x) + "\" y2=\"" + detail::svg_num(bottom + 5) +
            "\" stroke=\"black\"/>\n");
        add("<text x=\"" + detail::svg_num(x) + "\" y=\"" + detail::svg_num(bottom + 20) +
            "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
            std::to_string(m) + "</text>\n");
    }
    add("<text x=\"" + detail::svg_num((left + right) / 2) + "\" y=\"" +
        detail::svg_num(height - 12) +
        "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">sample size"
        "</text>\n");
    for (int i = 0; i <= 4; ++i) {
        const double v = lo + (hi - lo) * i / 4.0;
        const double y = y_of(v);
        char label[48];
        std::snprintf(label, sizeof label, "%.4g", v);
        add("<line x1=\"" + detail::svg_num(left - 5) + "\" y1=\"" + detail::svg_num(y) +
            "\" x2=\"" + detail::svg_num(left) + "\" y2=\"" + detail::svg_num(y) +
            "\" stroke=\"black\"/>\n");
        add("<text x=\"" + detail::svg_num(left - 9) + "\" y=\"" + detail::svg_num(y + 4) +
            "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + label +
            "</text>\n");
    }

    for (std::size_t s = 0; s < methods.size(); ++s) {
        const std::string color = palette[s % 5];
        std::string points;
        for (const std::size_t m : sizes) {
            for (const auto& a : report.aggregates) {
                if (a.method != methods[s] || a.sample_size != m) continue;
                const auto [mean, sd] = pick(a);
                if (std::isnan(mean)) continue;
                const double x = x_of(m), y = y_of(mean);
                points += (points.empty() ? "" : " ") + detail::svg_num(x) + "," +
                          detail::svg_num(y);
                add("<line x1=\"" + detail::svg_num(x) + "\" y1=\"" + detail::svg_num(y_of(mean - sd)) +
                    "\" x2=\"" + detail::svg_num(x) + "\" y2=\"" + detail::svg_num(y_of(mean + sd)) +
                    "\" stroke=\"" + color + "\" stroke-width=\"1\"/>\n");
                add("<circle cx=\"" + detail::svg_num(x) + "\" cy=\"" + detail::svg_num(y) +
                    "\" r=\"3\" fill=\"" + color + "\"/>\n");
            }
        }
        add("<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" +
            points + "\"/>\n");
        const double ly = top + 16 * static_cast<double>(s);
        add("<line x1=\"" + detail::svg_num(right + 12) + "\" y1=\"" + detail::svg_num(ly) +
            "\" x2=\"" + detail::svg_num(right + 34) + "\" y2=\"" + detail::svg_num(ly) +
            "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n");
        add("<text x=\"" + detail::svg_num(right + 40) + "\" y=\"" + detail::svg_num(ly + 4) +
            "\" font-family=\"sans-serif\" font-size=\"11\">" + methods[s] + "</text>\n");
    }
    add("</svg>\n");
    return svg;
}

}  // namespace sll
