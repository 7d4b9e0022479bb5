#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sll/sll.hpp"

namespace {

struct GlobalFlags {
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = available parallelism
    std::string output = "-";
};

int resolved_threads(const GlobalFlags& g) {
    return g.threads > 0 ? g.threads : sll::default_threads();
}

// JSON payloads go to --output; "-" selects stdout.
class OutputStream {
public:
    explicit OutputStream(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw sll::ArgumentError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

sll::Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sll::DataFormatError("cannot open data file '" + path + "'");
    return sll::read_csv(in);
}

sll::BayesianNetwork load_network(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sll::DataFormatError("cannot open network file '" + path + "'");
    return sll::read_network_json(in);
}

int resolve_variable(const sll::Dataset& data, const std::string& name) {
    const int idx = data.index_of(name);
    if (idx == -1) throw sll::ArgumentError("unknown variable '" + name + "'");
    if (idx == -2) throw sll::ArgumentError("ambiguous variable '" + name + "'");
    return idx;
}

void write_name_pairs(sll::JsonWriter& w, const std::vector<std::pair<int, int>>& pairs,
                      const sll::Dataset& data) {
    w.begin_array();
    for (const auto& [u, v] : pairs) {
        w.begin_array();
        w.value(data.name(u));
        w.value(data.name(v));
        w.end_array();
    }
    w.end_array();
}

void write_name_set(sll::JsonWriter& w, const sll::NodeSubset& s, const sll::Dataset& data) {
    w.begin_array();
    for (const int v : s) w.value(data.name(v));
    w.end_array();
}

void cmd_score(const GlobalFlags& g, const std::string& net_path, const std::string& data_path,
               double ess, int max_indegree, const std::string& dump_table) {
    const sll::BayesianNetwork net = load_network(net_path);
    const sll::Dataset data = sll::conform_to_network(load_csv(data_path), net);
    const sll::BdeuParams params{ess};
    OutputStream out(g.output);

    if (!dump_table.empty()) {
        const int v = resolve_variable(data, dump_table);
        sll::NodeSubset candidates = sll::NodeSubset::full(data.var_count());
        candidates.erase(v);
        if (candidates.size() > 64)
            throw sll::ArgumentError("score table dump supports at most 64 candidate parents");
        const sll::LocalScoreTable table =
            sll::build_score_table(data, v, candidates, params, max_indegree);
        std::vector<std::pair<std::uint64_t, double>> rows;
        rows.reserve(table.entries.size());
        const auto& cand = candidates.members();
        for (const auto& [parents, score] : table.entries) {
            std::uint64_t mask = 0;
            for (const int p : parents) {
                const std::size_t pos =
                    std::lower_bound(cand.begin(), cand.end(), p) - cand.begin();
                mask |= std::uint64_t(1) << pos;
            }
            rows.emplace_back(mask, score);
        }
        std::sort(rows.begin(), rows.end());
        out.stream() << "mask,score\n";
        for (const auto& [mask, score] : rows)
            out.stream() << mask << ',' << sll::format_double(score) << '\n';
        return;
    }

    const double total = sll::score_dag(data, net.dag(), params);
    sll::JsonWriter w(out.stream());
    w.begin_object();
    w.key("score").value(total);
    w.key("config").begin_object();
    w.key("command").value("score");
    w.key("network").value(net_path);
    w.key("data").value(data_path);
    w.key("ess").value(ess);
    w.end_object();
    w.end_object();
    w.finish();
}

void cmd_learn_exact(const GlobalFlags& g, const std::string& data_path, double ess,
                     int max_indegree) {
    const sll::Dataset data = load_csv(data_path);
    if (data.var_count() > sll::kExactNodeCap)
        throw sll::ArgumentError("learn-exact supports at most " +
                                 std::to_string(sll::kExactNodeCap) + " variables; got " +
                                 std::to_string(data.var_count()));
    const sll::BdeuParams params{ess};
    const sll::ExactResult res = sll::optimal_network(
        data, sll::NodeSubset::full(data.var_count()), params, max_indegree, sll::kExactNodeCap);
    OutputStream out(g.output);
    sll::JsonWriter w(out.stream());
    w.begin_object();
    w.key("arcs");
    write_name_pairs(w, res.dag.arcs(), data);
    w.key("score").value(res.score);
    w.key("config").begin_object();
    w.key("command").value("learn-exact");
    w.key("data").value(data_path);
    w.key("ess").value(ess);
    w.key("max_indegree").value(max_indegree);
    w.end_object();
    w.end_object();
    w.finish();
}

void cmd_learn_greedy(const GlobalFlags& g, const std::string& data_path, double ess,
                      int max_indegree, int tabu, int patience, const std::string& skeleton_path) {
    const sll::Dataset data = load_csv(data_path);
    const sll::BdeuParams params{ess};
    sll::GreedyParams gp;
    gp.tabu_capacity = tabu;
    gp.patience = patience;
    gp.max_indegree = max_indegree;

    sll::EdgeConstraint constraint = sll::EdgeConstraint::none();
    if (!skeleton_path.empty()) {
        std::ifstream in(skeleton_path);
        if (!in) throw sll::DataFormatError("cannot open skeleton file '" + skeleton_path + "'");
        std::vector<std::pair<int, int>> edges;
        for (const auto& [a, b] : sll::read_arc_names_json(in, "edges"))
            edges.emplace_back(resolve_variable(data, a), resolve_variable(data, b));
        constraint = sll::EdgeConstraint::skeleton(edges);
    }

    const sll::GreedyResult res = sll::greedy_search(data, params, gp, constraint);
    OutputStream out(g.output);
    sll::JsonWriter w(out.stream());
    w.begin_object();
    w.key("arcs");
    write_name_pairs(w, res.dag.arcs(), data);
    w.key("score").value(res.score);
    w.key("config").begin_object();
    w.key("command").value("learn-greedy");
    w.key("data").value(data_path);
    w.key("ess").value(ess);
    w.key("max_indegree").value(max_indegree);
    w.key("tabu").value(tabu);
    w.key("patience").value(patience);
    if (skeleton_path.empty())
        w.key("skeleton").null();
    else
        w.key("skeleton").value(skeleton_path);
    w.end_object();
    w.end_object();
    w.finish();
}

void write_local_config(sll::JsonWriter& w, const std::string& data_path,
                        const std::string& target, bool all_targets, const sll::SllConfig& cfg,
                        int threads) {
    w.key("config").begin_object();
    w.key("command").value("learn-local");
    w.key("data").value(data_path);
    if (all_targets)
        w.key("target").null();
    else
        w.key("target").value(target);
    w.key("all_targets").value(all_targets);
    w.key("ess").value(cfg.scoring.ess);
    w.key("max_indegree").value(cfg.max_indegree);
    w.key("exact_limit").value(cfg.exact_limit);
    w.key("threads").value(threads);
    w.end_object();
}

void cmd_learn_local(const GlobalFlags& g, const std::string& data_path,
                     const std::string& target, bool all_targets, double ess, int max_indegree,
                     int exact_limit) {
    const sll::Dataset data = load_csv(data_path);
    sll::SllConfig cfg;
    cfg.scoring.ess = ess;
    cfg.max_indegree = max_indegree;
    cfg.exact_limit = exact_limit;
    sll::validate_config(cfg);
    const int threads = resolved_threads(g);
    OutputStream out(g.output);
    sll::JsonWriter w(out.stream());

    if (all_targets) {
        const std::vector<sll::BlanketResult> results = sll::all_blankets(data, cfg, threads);
        w.begin_object();
        w.key("results").begin_array();
        for (int t = 0; t < data.var_count(); ++t) {
            const auto& r = results[static_cast<std::size_t>(t)];
            w.begin_object();
            w.key("target").value(data.name(t));
            w.key("neighbors");
            write_name_set(w, r.neighbors, data);
            w.key("spouses");
            write_name_set(w, r.spouses, data);
            w.key("blanket");
            write_name_set(w, r.neighbors | r.spouses, data);
            w.key("inexact").value(r.inexact);
            w.end_object();
        }
        w.end_array();
        write_local_config(w, data_path, target, true, cfg, threads);
        w.end_object();
        w.finish();
        return;
    }

    const int t = resolve_variable(data, target);
    sll::SllCache cache;
    const sll::LearnedSet nb = sll::find_neighbors(data, t, cfg, cache);
    const sll::LearnedSet sp = sll::find_spouses(data, t, cfg, cache);
    w.begin_object();
    w.key("target").value(data.name(t));
    w.key("neighbors");
    write_name_set(w, nb.set, data);
    w.key("spouses");
    write_name_set(w, sp.set, data);
    w.key("blanket");
    write_name_set(w, nb.set | sp.set, data);
    w.key("inexact").value(nb.inexact || sp.inexact);
    write_local_config(w, data_path, target, false, cfg, threads);
    w.end_object();
    w.finish();
}

void cmd_learn_global(const GlobalFlags& g, const std::string& data_path,
                      const std::string& method, double ess, int max_indegree, int exact_limit,
                      int tabu, int patience) {
    const sll::Dataset data = load_csv(data_path);
    sll::SllConfig cfg;
    cfg.scoring.ess = ess;
    cfg.max_indegree = max_indegree;
    cfg.exact_limit = exact_limit;
    sll::GreedyParams gp;
    gp.tabu_capacity = tabu;
    gp.patience = patience;
    gp.max_indegree = max_indegree;
    cfg.fallback = gp;
    const int threads = resolved_threads(g);

    sll::Dag dag(data.var_count());
    bool inexact = false;
    if (method == "sll-c") {
        const sll::GlobalResult res = sll::sll_plus_c(data, cfg, nullptr, threads);
        dag = res.dag;
        inexact = res.inexact;
    } else if (method == "sll-g") {
        const sll::GlobalResult res = sll::sll_plus_g(data, cfg, gp, nullptr, threads);
        dag = res.dag;
        inexact = res.inexact;
    } else {
        dag = sll::greedy_search(data, cfg.scoring, gp).dag;
    }

    const double score = sll::score_dag(data, dag, cfg.scoring);
    const sll::Pdag cpdag = sll::dag_to_cpdag(dag);
    OutputStream out(g.output);
    sll::JsonWriter w(out.stream());
    w.begin_object();
    w.key("arcs");
    write_name_pairs(w, dag.arcs(), data);
    w.key("cpdag").begin_object();
    w.key("directed");
    write_name_pairs(w, cpdag.directed_arcs(), data);
    w.key("undirected");
    write_name_pairs(w, cpdag.undirected_edges(), data);
    w.end_object();
    w.key("score").value(score);
    w.key("inexact").value(inexact);
    w.key("config").begin_object();
    w.key("command").value("learn-global");
    w.key("data").value(data_path);
    w.key("method").value(method);
    w.key("ess").value(ess);
    w.key("max_indegree").value(max_indegree);
    w.key("exact_limit").value(exact_limit);
    w.key("tabu").value(tabu);
    w.key("patience").value(patience);
    w.key("threads").value(threads);
    w.end_object();
    w.end_object();
    w.finish();
}

void cmd_sample(const GlobalFlags& g, const std::string& net_path, std::uint64_t rows,
                const std::string& csv_path) {
    const sll::BayesianNetwork net = load_network(net_path);
    const sll::Dataset data = sll::forward_sample(net, rows, g.seed);
    std::ofstream csv(csv_path);
    if (!csv) throw sll::ArgumentError("cannot open output file '" + csv_path + "'");
    sll::write_csv(csv, data);
    OutputStream out(g.output);
    sll::JsonWriter w(out.stream());
    w.begin_object();
    w.key("rows").value(rows);
    w.key("variables").value(net.node_count());
    w.key("path").value(csv_path);
    w.key("config").begin_object();
    w.key("command").value("sample");
    w.key("network").value(net_path);
    w.key("rows").value(rows);
    w.key("seed").value(g.seed);
    w.key("out").value(csv_path);
    w.end_object();
    w.end_object();
    w.finish();
}

void cmd_evaluate(const GlobalFlags& g, const std::string& truth_path,
                  const std::string& learned_path, const std::string& data_path, double ess) {
    const sll::BayesianNetwork truth = load_network(truth_path);
    const sll::Dataset data = sll::conform_to_network(load_csv(data_path), truth);
    std::ifstream lin(learned_path);
    if (!lin) throw sll::DataFormatError("cannot open learned file '" + learned_path + "'");
    sll::Dag learned(truth.node_count());
    for (const auto& [a, b] : sll::read_arc_names_json(lin, "arcs"))
        learned.add_arc(resolve_variable(data, a), resolve_variable(data, b));

    const sll::BdeuParams params{ess};
    const sll::Pdag learned_cpdag = sll::dag_to_cpdag(learned);
    const sll::Pdag truth_cpdag = sll::dag_to_cpdag(truth.dag());

    std::vector<sll::NodeSubset> ln, lb, tn, tb;
    for (int t = 0; t < truth.node_count(); ++t) {
        ln.push_back(learned.neighbors(t));
        lb.push_back(sll::true_markov_blanket(learned, t));
        tn.push_back(truth.dag().neighbors(t));
        tb.push_back(sll::true_markov_blanket(truth.dag(), t));
    }

    OutputStream out(g.output);
    sll::JsonWriter w(out.stream());
    w.begin_object();
    w.key("shd").value(sll::shd(learned_cpdag, truth_cpdag));
    w.key("normalized_score").value(sll::normalized_score(data, learned_cpdag, truth.dag(), params));
    w.key("slhd_neighbors").value(sll::slhd(ln, tn));
    w.key("slhd_blankets").value(sll::slhd(lb, tb));
    w.key("config").begin_object();
    w.key("command").value("evaluate");
    w.key("truth").value(truth_path);
    w.key("learned").value(learned_path);
    w.key("data").value(data_path);
    w.key("ess").value(ess);
    w.end_object();
    w.end_object();
    w.finish();
}

struct BenchSettings {
    sll::BenchmarkSpec spec;
    std::vector<std::string> methods;
    std::string network_path;  // empty when generated
};

BenchSettings parse_bench_spec(const std::string& path, std::uint64_t default_seed) {
    std::ifstream in(path);
    if (!in) throw sll::DataFormatError("cannot open spec file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw sll::DataFormatError(std::string("bench spec: ") + e.what());
    }
    if (!j.is_object()) throw sll::DataFormatError("bench spec: top level must be an object");

    static const std::vector<std::string> known{
        "methods",   "sample_sizes", "replicates", "seed",        "network", "generator",
        "ess",       "max_indegree", "exact_limit", "tabu",       "patience"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw sll::DataFormatError("bench spec: unknown key '" + key + "'");
    }

    BenchSettings s;
    s.spec.seed = default_seed;

    if (!j.contains("methods") || !j["methods"].is_array() || j["methods"].empty())
        throw sll::DataFormatError("bench spec: 'methods' must be a nonempty array");
    for (const auto& m : j["methods"]) {
        if (!m.is_string()) throw sll::DataFormatError("bench spec: methods must be strings");
        s.methods.push_back(m.get<std::string>());
    }

    auto get_int = [&](const char* key, int lo) {
        if (!j[key].is_number_integer() || j[key].get<std::int64_t>() < lo)
            throw sll::DataFormatError(std::string("bench spec: bad '") + key + "'");
        return static_cast<int>(j[key].get<std::int64_t>());
    };

    if (j.contains("sample_sizes")) {
        if (!j["sample_sizes"].is_array() || j["sample_sizes"].empty())
            throw sll::DataFormatError("bench spec: 'sample_sizes' must be a nonempty array");
        s.spec.sample_sizes.clear();
        for (const auto& m : j["sample_sizes"]) {
            if (!m.is_number_integer() || m.get<std::int64_t>() < 1)
                throw sll::DataFormatError("bench spec: sample sizes must be positive integers");
            s.spec.sample_sizes.push_back(static_cast<std::size_t>(m.get<std::int64_t>()));
        }
    }
    if (j.contains("replicates")) s.spec.replicates = get_int("replicates", 1);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer())
            throw sll::DataFormatError("bench spec: 'seed' must be an integer");
        s.spec.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("network")) {
        if (!j["network"].is_string())
            throw sll::DataFormatError("bench spec: 'network' must be a file path");
        s.network_path = j["network"].get<std::string>();
        s.spec.network = load_network(s.network_path);
    }
    if (j.contains("generator")) {
        const auto& gen = j["generator"];
        if (!gen.is_object()) throw sll::DataFormatError("bench spec: 'generator' must be an object");
        static const std::vector<std::string> gen_known{"n", "max_indegree", "arity_lo",
                                                        "arity_hi"};
        for (const auto& [key, value] : gen.items()) {
            (void)value;
            if (std::find(gen_known.begin(), gen_known.end(), key) == gen_known.end())
                throw sll::DataFormatError("bench spec: unknown generator key '" + key + "'");
            if (!value.is_number_integer())
                throw sll::DataFormatError("bench spec: generator values must be integers");
        }
        if (gen.contains("n")) s.spec.generator.n = gen["n"].get<int>();
        if (gen.contains("max_indegree"))
            s.spec.generator.max_indegree = gen["max_indegree"].get<int>();
        if (gen.contains("arity_lo")) s.spec.generator.arity_lo = gen["arity_lo"].get<int>();
        if (gen.contains("arity_hi")) s.spec.generator.arity_hi = gen["arity_hi"].get<int>();
    }
    if (j.contains("ess")) {
        if (!j["ess"].is_number() || j["ess"].get<double>() <= 0.0)
            throw sll::DataFormatError("bench spec: 'ess' must be a positive number");
        s.spec.sll.scoring.ess = j["ess"].get<double>();
    }
    if (j.contains("max_indegree")) {
        const int k = get_int("max_indegree", 0);
        s.spec.sll.max_indegree = k;
        s.spec.greedy.max_indegree = k;
    }
    if (j.contains("exact_limit")) s.spec.sll.exact_limit = get_int("exact_limit", 3);
    if (j.contains("tabu")) s.spec.greedy.tabu_capacity = get_int("tabu", 0);
    if (j.contains("patience")) s.spec.greedy.patience = get_int("patience", 0);
    s.spec.sll.fallback = s.spec.greedy;
    return s;
}

void cmd_bench(const GlobalFlags& g, const std::string& spec_path, const std::string& out_dir,
               bool plot) {
    const BenchSettings s = parse_bench_spec(spec_path, g.seed);
    const int threads = resolved_threads(g);
    const sll::MetricReport report = sll::run_benchmark(s.spec, s.methods, threads);

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    {
        std::ofstream raw(fs::path(out_dir) / "raw.csv");
        if (!raw) throw sll::ArgumentError("cannot write to report directory '" + out_dir + "'");
        sll::write_benchmark_csv(raw, report);
    }
    {
        std::ofstream agg(fs::path(out_dir) / "aggregate.json");
        sll::write_benchmark_json(agg, report);
    }
    if (plot) {
        for (const char* metric :
             {"slhd_neighbors", "slhd_blankets", "shd", "normalized_score"}) {
            const std::string svg = sll::render_benchmark_plot(report, metric);
            if (svg.empty()) continue;
            std::ofstream f(fs::path(out_dir) / ("plot_" + std::string(metric) + ".svg"));
            f << svg;
        }
    }

    OutputStream out(g.output);
    sll::JsonWriter w(out.stream());
    w.begin_object();
    w.key("report_dir").value(out_dir);
    w.key("cells").value(report.cells.size());
    w.key("config").begin_object();
    w.key("command").value("bench");
    w.key("spec").value(spec_path);
    w.key("out").value(out_dir);
    w.key("plot").value(plot);
    w.key("methods").begin_array();
    for (const auto& m : s.methods) w.value(m);
    w.end_array();
    w.key("sample_sizes").begin_array();
    for (const std::size_t m : s.spec.sample_sizes) w.value(m);
    w.end_array();
    w.key("replicates").value(s.spec.replicates);
    w.key("seed").value(s.spec.seed);
    if (s.network_path.empty()) {
        w.key("network").null();
        w.key("generator").begin_object();
        w.key("n").value(s.spec.generator.n);
        w.key("max_indegree").value(s.spec.generator.max_indegree);
        w.key("arity_lo").value(s.spec.generator.arity_lo);
        w.key("arity_hi").value(s.spec.generator.arity_hi);
        w.end_object();
    } else {
        w.key("network").value(s.network_path);
        w.key("generator").null();
    }
    w.key("ess").value(s.spec.sll.scoring.ess);
    w.key("max_indegree").value(s.spec.sll.max_indegree);
    w.key("exact_limit").value(s.spec.sll.exact_limit);
    w.key("tabu").value(s.spec.greedy.tabu_capacity);
    w.key("patience").value(s.spec.greedy.patience);
    w.key("threads").value(threads);
    w.end_object();
    w.end_object();
    w.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure learning for discrete Bayesian networks"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0 = all available)")
        ->capture_default_str();
    app.add_flag_callback(
        "--quiet", [] { sll::set_log_threshold(sll::LogLevel::error); },
        "Suppress warnings and info diagnostics");
    app.add_option("--output", g.output, "Result destination, '-' for stdout")
        ->capture_default_str();

    double ess = 1.0;
    int max_indegree = 5;
    int exact_limit = 20;
    int tabu = 100;
    int patience = 15;
    std::string data_path, net_path, dump_table, skeleton_path, target, method;
    std::string truth_path, learned_path, spec_path, out_dir, csv_path;
    std::uint64_t rows = 0;
    bool all_targets = false;
    bool plot = false;

    auto* score = app.add_subcommand("score", "BDeu score of a network on a dataset");
    score->fallthrough();
    score->add_option("--network", net_path, "Network JSON file")->required();
    score->add_option("--data", data_path, "Dataset CSV file")->required();
    score->add_option("--ess", ess, "Equivalent sample size")->capture_default_str();
    score->add_option("--max-indegree", max_indegree, "Parent-set size cap for --dump-table")
        ->capture_default_str();
    score->add_option("--dump-table", dump_table,
                      "Debug: dump the named variable's local-score table as CSV "
                      "(parent-set bitmask over the other variables in index order)");
    score->callback([&] { cmd_score(g, net_path, data_path, ess, max_indegree, dump_table); });

    auto* lexact = app.add_subcommand("learn-exact", "Globally optimal DAG via dynamic "
                                                     "programming (at most 25 variables)");
    lexact->fallthrough();
    lexact->add_option("--data", data_path, "Dataset CSV file")->required();
    lexact->add_option("--ess", ess, "Equivalent sample size")->capture_default_str();
    lexact->add_option("--max-indegree", max_indegree, "Parent-set size cap")
        ->capture_default_str();
    lexact->callback([&] { cmd_learn_exact(g, data_path, ess, max_indegree); });

    auto* lgreedy = app.add_subcommand("learn-greedy", "Hill-climbing search with a tabu list");
    lgreedy->fallthrough();
    lgreedy->add_option("--data", data_path, "Dataset CSV file")->required();
    lgreedy->add_option("--ess", ess, "Equivalent sample size")->capture_default_str();
    lgreedy->add_option("--max-indegree", max_indegree, "Parent-set size cap")
        ->capture_default_str();
    lgreedy->add_option("--tabu", tabu, "Tabu list capacity")->capture_default_str();
    lgreedy->add_option("--patience", patience, "Non-improving steps before stopping")
        ->capture_default_str();
    lgreedy->add_option("--skeleton", skeleton_path,
                        "Restrict arcs to this undirected edge list "
                        "(JSON {\"edges\":[[name,name],...]})");
    lgreedy->callback(
        [&] { cmd_learn_greedy(g, data_path, ess, max_indegree, tabu, patience, skeleton_path); });

    auto* llocal = app.add_subcommand("learn-local",
                                      "Neighbors, spouses, and Markov blanket of a target");
    llocal->fallthrough();
    llocal->add_option("--data", data_path, "Dataset CSV file")->required();
    auto* tgt_group = llocal->add_option_group("target selection");
    auto* tgt_opt = tgt_group->add_option("--target", target, "Target variable name");
    auto* all_opt = tgt_group->add_flag("--all-targets", all_targets, "Learn every target");
    tgt_group->require_option(1);
    tgt_opt->excludes(all_opt);
    llocal->add_option("--ess", ess, "Equivalent sample size")->capture_default_str();
    llocal->add_option("--max-indegree", max_indegree, "Parent-set size cap")
        ->capture_default_str();
    llocal->add_option("--exact-limit", exact_limit,
                       "Largest subset solved exactly before the hill-climbing fallback")
        ->capture_default_str();
    llocal->callback([&] {
        cmd_learn_local(g, data_path, target, all_targets, ess, max_indegree, exact_limit);
    });

    auto* lglobal = app.add_subcommand("learn-global", "Full-network structure learning");
    lglobal->fallthrough();
    lglobal->add_option("--data", data_path, "Dataset CSV file")->required();
    lglobal->add_option("--method", method, "Construction method")
        ->required()
        ->check(CLI::IsMember({"sll-c", "sll-g", "greedy"}));
    lglobal->add_option("--ess", ess, "Equivalent sample size")->capture_default_str();
    lglobal->add_option("--max-indegree", max_indegree, "Parent-set size cap")
        ->capture_default_str();
    lglobal->add_option("--exact-limit", exact_limit,
                        "Largest subset solved exactly before the hill-climbing fallback")
        ->capture_default_str();
    lglobal->add_option("--tabu", tabu, "Tabu list capacity")->capture_default_str();
    lglobal->add_option("--patience", patience, "Non-improving steps before stopping")
        ->capture_default_str();
    lglobal->callback([&] {
        cmd_learn_global(g, data_path, method, ess, max_indegree, exact_limit, tabu, patience);
    });

    auto* sample = app.add_subcommand("sample", "Draw i.i.d. rows from a network");
    sample->fallthrough();
    sample->add_option("--network", net_path, "Network JSON file")->required();
    sample->add_option("-m,--rows", rows, "Number of rows")->required();
    sample->add_option("-o,--out", csv_path, "Output CSV path")->required();
    sample->callback([&] { cmd_sample(g, net_path, rows, csv_path); });

    auto* evaluate = app.add_subcommand("evaluate", "Compare a learned structure to the truth");
    evaluate->fallthrough();
    evaluate->add_option("--truth", truth_path, "True network JSON file")->required();
    evaluate->add_option("--learned", learned_path,
                         "Learned arcs (JSON {\"arcs\":[[name,name],...]})")
        ->required();
    evaluate->add_option("--data", data_path, "Dataset CSV file")->required();
    evaluate->add_option("--ess", ess, "Equivalent sample size")->capture_default_str();
    evaluate->callback([&] { cmd_evaluate(g, truth_path, learned_path, data_path, ess); });

    auto* bench = app.add_subcommand("bench", "Benchmark methods over sampled datasets");
    bench->fallthrough();
    bench->add_option("--spec", spec_path, "Benchmark spec JSON file")->required();
    bench->add_option("-o,--out-dir", out_dir, "Report directory")->required();
    bench->add_flag("--plot", plot, "Also render SVG line charts per metric");
    bench->callback([&] { cmd_bench(g, spec_path, out_dir, plot); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
