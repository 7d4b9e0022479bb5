// Drives the command-line binary end to end and checks its outward contract:
// exit codes, payload shapes, side-effect files. Usage: sll_cli_check <binary>.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sll/evaluation.hpp"
#include "sll/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cout << "[FAIL] " << what << '\n';
    }
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch;
std::string binary;

RunResult run(const std::string& args) {
    const fs::path out_file = scratch / "stdout.txt";
    const fs::path err_file = scratch / "stderr.txt";
    const std::string cmd =
        "\"" + binary + "\" " + args + " >\"" + out_file.string() + "\" 2>\"" + err_file.string() + "\"";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

json parse_or_fail(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        check(false, what + ": stdout is not valid JSON: " + e.what());
        return json::object();
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: sll_cli_check <path-to-binary>\n";
        return 2;
    }
    binary = argv[1];
    std::string tmpl = (fs::temp_directory_path() / "sll_cli_XXXXXX").string();
    if (!mkdtemp(tmpl.data())) {
        std::cerr << "cannot create scratch directory\n";
        return 2;
    }
    scratch = tmpl;

    const auto net = sll::faithful_network(sll::Dag(4, {{0, 2}, {1, 2}, {2, 3}}), {2, 2, 2, 2}, 21);
    const fs::path net_path = scratch / "net.json";
    {
        std::ofstream f(net_path);
        sll::write_network_json(f, net);
    }
    const fs::path data_path = scratch / "data.csv";
    {
        std::ofstream f(data_path);
        sll::write_csv(f, sll::forward_sample(net, 400, 22));
    }
    const fs::path bad_path = scratch / "bad.csv";
    {
        std::ofstream f(bad_path);
        f << "X0,X1,X2,X3\n0,0,0,0\n3,0,0,0\n";
    }
    const fs::path wide_path = scratch / "wide.csv";
    {
        std::ofstream f(wide_path);
        for (int v = 0; v < 26; ++v) f << (v > 0 ? "," : "") << "V" << v;
        f << '\n';
        for (int row = 0; row < 3; ++row) {
            for (int v = 0; v < 26; ++v) f << (v > 0 ? "," : "") << (row & 1);
            f << '\n';
        }
    }
    const fs::path skeleton_path = scratch / "skeleton.json";
    {
        std::ofstream f(skeleton_path);
        f << "{\"edges\": [[\"X0\", \"X2\"], [\"X1\", \"X2\"], [\"X2\", \"X3\"]]}\n";
    }
    const fs::path truth_arcs_path = scratch / "truth_arcs.json";
    {
        std::ofstream f(truth_arcs_path);
        f << "{\"arcs\": [[\"X0\", \"X2\"], [\"X1\", \"X2\"], [\"X2\", \"X3\"]]}\n";
    }
    const fs::path spec_path = scratch / "spec.json";
    {
        std::ofstream f(spec_path);
        f << "{\"methods\": [\"sll-local\", \"greedy\"], \"sample_sizes\": [100],"
             " \"replicates\": 1, \"seed\": 3,"
             " \"generator\": {\"n\": 4, \"max_indegree\": 2, \"arity_lo\": 2, \"arity_hi\": 2}}\n";
    }
    const fs::path bad_spec_path = scratch / "bad_spec.json";
    {
        std::ofstream f(bad_spec_path);
        f << "{\"methods\": [\"greedy\"], \"surprise\": 1}\n";
    }

    const std::string net_arg = "\"" + net_path.string() + "\"";
    const std::string data_arg = "\"" + data_path.string() + "\"";

    {
        check(run("--help").code == 0, "--help exits 0");
        check(run("").code == 1, "missing subcommand exits 1");
        check(run("score --data " + data_arg).code == 1, "missing required option exits 1");
    }

    {
        const RunResult r = run("score --network " + net_arg + " --data " + data_arg);
        check(r.code == 0, "score exits 0");
        const json j = parse_or_fail(r.out, "score");
        check(j.contains("score") && j["score"].is_number() && j["score"].get<double>() < 0.0,
              "score payload has a negative score");
        check(j.at("config").at("command") == "score", "score config echoes its command");
    }

    {
        const RunResult r = run("score --network " + net_arg + " --data \"" +
                                (scratch / "missing.csv").string() + "\"");
        check(r.code == 2, "missing data file exits 2");
        check(r.err.find("error:") != std::string::npos, "data errors are prefixed on stderr");
    }

    {
        const RunResult r = run("score --network " + net_arg + " --data \"" + bad_path.string() +
                                "\"");
        check(r.code == 2, "out-of-range cell exits 2");
        check(r.err.find("X0") != std::string::npos && r.err.find("row 2") != std::string::npos,
              "out-of-range cell names its column and row");
    }

    {
        const RunResult r =
            run("score --network " + net_arg + " --data " + data_arg + " --dump-table X2");
        check(r.code == 0, "dump-table exits 0");
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        check(line == "mask,score", "dump-table header");
        std::size_t rows = 0;
        while (std::getline(in, line))
            if (!line.empty()) ++rows;
        check(rows == 8, "dump-table lists every parent set");
    }

    {
        check(run("learn-local --data " + data_arg).code == 1, "missing target selection exits 1");
        check(run("learn-local --data " + data_arg + " --target X2 --all-targets").code == 1,
              "target and all-targets together exit 1");
        check(run("learn-local --data " + data_arg + " --target nope").code == 2,
              "unknown variable exits 2");
    }

    {
        const RunResult r = run("learn-local --data " + data_arg + " --target X2");
        check(r.code == 0, "learn-local exits 0");
        const json j = parse_or_fail(r.out, "learn-local");
        check(j.at("target") == "X2", "learn-local echoes the target");
        for (const char* key : {"neighbors", "spouses", "blanket", "inexact", "config"})
            check(j.contains(key), std::string("learn-local payload has ") + key);
    }

    {
        const RunResult r = run("learn-local --data " + data_arg + " --all-targets");
        check(r.code == 0, "all-targets exits 0");
        const json j = parse_or_fail(r.out, "all-targets");
        check(j.at("results").size() == 4, "all-targets covers every variable");
        for (const auto& entry : j.at("results"))
            check(entry.contains("target") && entry.contains("blanket"),
                  "all-targets entries carry target and blanket");
        check(j.at("config").at("target").is_null(), "all-targets config has a null target");
    }

    fs::path learned_path = scratch / "learned.json";
    {
        const RunResult r = run("learn-exact --data " + data_arg + " --output \"" +
                                learned_path.string() + "\"");
        check(r.code == 0, "learn-exact exits 0");
        check(r.out.empty(), "--output leaves stdout empty");
        const json j = parse_or_fail(slurp(learned_path), "learn-exact");
        check(j.contains("arcs") && j.contains("score"), "learn-exact payload shape");
        for (const auto& arc : j.at("arcs"))
            check(arc.is_array() && arc.size() == 2 && arc[0].is_string(),
                  "learn-exact arcs are name pairs");
    }

    {
        check(run("learn-exact --data \"" + wide_path.string() + "\"").code == 2,
              "too many variables for exact search exits 2");
    }

    {
        const RunResult r = run("learn-greedy --data " + data_arg + " --skeleton \"" +
                                skeleton_path.string() + "\"");
        check(r.code == 0, "learn-greedy exits 0");
        const json j = parse_or_fail(r.out, "learn-greedy");
        check(j.at("config").at("skeleton") == skeleton_path.string(),
              "learn-greedy echoes the skeleton path");
        std::set<std::set<std::string>> allowed{{"X0", "X2"}, {"X1", "X2"}, {"X2", "X3"}};
        for (const auto& arc : j.at("arcs"))
            check(allowed.count({arc[0].get<std::string>(), arc[1].get<std::string>()}) == 1,
                  "learn-greedy stays inside the skeleton");
    }

    {
        const RunResult r = run("learn-global --data " + data_arg + " --method sll-c");
        check(r.code == 0, "learn-global exits 0");
        const json j = parse_or_fail(r.out, "learn-global");
        for (const char* key : {"arcs", "cpdag", "score", "inexact", "config"})
            check(j.contains(key), std::string("learn-global payload has ") + key);
        check(j.at("cpdag").contains("directed") && j.at("cpdag").contains("undirected"),
              "learn-global reports the class graph");
        check(run("learn-global --data " + data_arg + " --method bogus").code == 1,
              "unknown method exits 1");
    }

    {
        const fs::path csv1 = scratch / "s1.csv";
        const fs::path csv2 = scratch / "s2.csv";
        const fs::path csv3 = scratch / "s3.csv";
        const RunResult r = run("sample --network " + net_arg + " -m 50 -o \"" + csv1.string() +
                                "\" --seed 5");
        check(r.code == 0, "sample exits 0");
        const json j = parse_or_fail(r.out, "sample");
        check(j.at("rows") == 50, "sample reports its row count");
        run("sample --network " + net_arg + " -m 50 -o \"" + csv2.string() + "\" --seed 5");
        run("sample --network " + net_arg + " -m 50 -o \"" + csv3.string() + "\" --seed 6");
        const std::string a = slurp(csv1), b = slurp(csv2), c = slurp(csv3);
        check(!a.empty() && a == b, "matching seeds give byte-identical samples");
        check(a != c, "different seeds give different samples");
        std::istringstream in(a);
        std::string header;
        std::getline(in, header);
        check(header == "X0,X1,X2,X3", "sample preserves variable order");
        std::size_t rows = 0;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) ++rows;
        check(rows == 50, "sample writes the requested rows");
    }

    {
        const RunResult r = run("evaluate --truth " + net_arg + " --learned \"" +
                                truth_arcs_path.string() + "\" --data " + data_arg);
        check(r.code == 0, "evaluate exits 0");
        const json j = parse_or_fail(r.out, "evaluate");
        check(j.at("shd") == 0, "evaluating the truth against itself gives distance zero");
        check(std::abs(j.at("normalized_score").get<double>() - 1.0) < 1e-9,
              "evaluating the truth against itself gives parity");
        check(j.at("slhd_neighbors") == 0 && j.at("slhd_blankets") == 0,
              "evaluating the truth against itself gives zero set distance");
    }

    {
        const RunResult r = run("evaluate --truth " + net_arg + " --learned \"" +
                                learned_path.string() + "\" --data " + data_arg);
        check(r.code == 0, "evaluate accepts learner output");
        const json j = parse_or_fail(r.out, "evaluate learner output");
        check(j.at("shd").is_number_integer() && j.at("shd").get<int>() >= 0,
              "evaluate reports a structural distance");
    }

    {
        const fs::path report_dir = scratch / "report";
        const RunResult r = run("bench --spec \"" + spec_path.string() + "\" -o \"" +
                                report_dir.string() + "\" --plot");
        check(r.code == 0, "bench exits 0");
        const json j = parse_or_fail(r.out, "bench");
        check(j.at("cells") == 2, "bench reports its cell count");
        check(j.at("config").at("seed") == 3, "bench spec seed overrides the global seed");
        const std::string raw = slurp(report_dir / "raw.csv");
        check(raw.rfind("method,sample_size,replicate,", 0) == 0, "bench writes the raw table");
        const json agg = parse_or_fail(slurp(report_dir / "aggregate.json"), "aggregate.json");
        check(agg.at("aggregates").size() == 2, "bench aggregates every (method, size) pair");
        const std::string svg = slurp(report_dir / "plot_slhd_neighbors.svg");
        check(svg.rfind("<svg", 0) == 0, "bench renders requested plots");

        check(run("bench --spec \"" + bad_spec_path.string() + "\" -o \"" +
                  (scratch / "report2").string() + "\"")
                      .code == 2,
              "unknown spec keys exit 2");
    }

    std::error_code ec;
    fs::remove_all(scratch, ec);

    if (failures == 0) {
        std::cout << "cli contract: all checks passed\n";
        return 0;
    }
    std::cout << "cli contract: " << failures << " check(s) failed\n";
    return 1;
}
