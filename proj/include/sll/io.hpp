#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sll/bayes_net.hpp"
#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/dataset.hpp"
#include "sll/types.hpp"

namespace sll {

// %.12g with -0 and non-finite values normalized; non-finite becomes null.
inline std::string format_double(double x) {
    if (std::isnan(x) || std::isinf(x)) return "null";
    if (x == 0.0) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

// Streaming JSON emitter with fixed key order (insertion order) and pinned
// float formatting, so identical inputs give byte-identical documents.
class JsonWriter {
public:
    explicit JsonWriter(std::ostream& os) : os_(os) {}

    JsonWriter& begin_object() {
        open('{');
        return *this;
    }

    JsonWriter& end_object() {
        close('}');
        return *this;
    }

    JsonWriter& begin_array() {
        open('[');
        return *this;
    }

    JsonWriter& end_array() {
        close(']');
        return *this;
    }

    JsonWriter& key(std::string_view k) {
        if (stack_.empty() || stack_.back().kind != '{')
            throw InternalError("JsonWriter: key outside object");
        auto& top = stack_.back();
        if (top.key_pending) throw InternalError("JsonWriter: duplicate key call");
        os_ << (top.count > 0 ? ",\n" : "\n");
        indent(stack_.size());
        write_string(k);
        os_ << ": ";
        top.key_pending = true;
        ++top.count;
        return *this;
    }

    JsonWriter& value(std::string_view s) {
        lead_in();
        write_string(s);
        return *this;
    }

    JsonWriter& value(const char* s) { return value(std::string_view(s)); }
    JsonWriter& value(const std::string& s) { return value(std::string_view(s)); }

    JsonWriter& value(double x) {
        lead_in();
        os_ << format_double(x);
        return *this;
    }

    JsonWriter& value(bool b) {
        lead_in();
        os_ << (b ? "true" : "false");
        return *this;
    }

    JsonWriter& value(int x) { return value(static_cast<std::int64_t>(x)); }
    JsonWriter& value(unsigned x) { return value(static_cast<std::uint64_t>(x)); }

    JsonWriter& value(std::int64_t x) {
        lead_in();
        os_ << x;
        return *this;
    }

    JsonWriter& value(std::uint64_t x) {
        lead_in();
        os_ << x;
        return *this;
    }

    JsonWriter& null() {
        lead_in();
        os_ << "null";
        return *this;
    }

    // Finishes the document with a trailing newline.
    void finish() {
        if (!stack_.empty()) throw InternalError("JsonWriter: unclosed container");
        os_ << '\n';
    }

private:
    struct Level {
        char kind;
        std::size_t count = 0;
        bool key_pending = false;
    };

    void indent(std::size_t depth) {
        for (std::size_t i = 0; i < depth; ++i) os_ << "  ";
    }

    void lead_in() {
        if (stack_.empty()) return;
        auto& top = stack_.back();
        if (top.kind == '{') {
            if (!top.key_pending) throw InternalError("JsonWriter: value without key");
            top.key_pending = false;
            return;
        }
        os_ << (top.count > 0 ? ",\n" : "\n");
        indent(stack_.size());
        ++top.count;
    }

    void open(char kind) {
        lead_in();
        os_ << kind;
        stack_.push_back({kind});
    }

    void close(char kind) {
        const char open_kind = kind == '}' ? '{' : '[';
        if (stack_.empty() || stack_.back().kind != open_kind)
            throw InternalError("JsonWriter: mismatched close");
        const Level level = stack_.back();
        stack_.pop_back();
        if (level.key_pending) throw InternalError("JsonWriter: dangling key");
        if (level.count > 0) {
            os_ << '\n';
            indent(stack_.size());
        }
        os_ << kind;
    }

    void write_string(std::string_view s) {
        os_ << '"';
        for (const char ch : s) {
            const unsigned char c = static_cast<unsigned char>(ch);
            switch (c) {
                case '"': os_ << "\\\""; break;
                case '\\': os_ << "\\\\"; break;
                case '\n': os_ << "\\n"; break;
                case '\r': os_ << "\\r"; break;
                case '\t': os_ << "\\t"; break;
                case '\b': os_ << "\\b"; break;
                case '\f': os_ << "\\f"; break;
                default:
                    if (c < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        os_ << buf;
                    } else {
                        os_ << ch;
                    }
            }
        }
        os_ << '"';
    }

    std::ostream& os_;
    std::vector<Level> stack_;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

inline std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

}  // namespace detail

// Header line of variable names, then one row per line of integer cells.
// Arities are inferred as max observed value + 1, floored at 2.
inline Dataset read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataFormatError("csv: missing header line");
    const std::vector<std::string> names = detail::split_csv_line(detail::strip_cr(line));
    std::unordered_set<std::string> seen;
    for (const auto& name : names) {
        if (name.empty()) throw DataFormatError("csv: empty column name in header");
        if (!seen.insert(name).second)
            throw DataFormatError("csv: duplicate column name '" + name + "'");
    }
    const std::size_t n = names.size();

    std::vector<std::vector<std::uint8_t>> cols(n);
    std::size_t line_no = 1;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = detail::strip_cr(line);
        if (line.empty()) {
            if (in.peek() == std::char_traits<char>::eof()) break;
            throw DataFormatError("csv line " + std::to_string(line_no) + ": blank line");
        }
        const std::vector<std::string> cells = detail::split_csv_line(line);
        if (cells.size() != n)
            throw DataFormatError("csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(n) + " cells, found " +
                                  std::to_string(cells.size()));
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& cell = cells[i];
            if (cell.empty()) throw DataFormatError("csv line " + std::to_string(line_no) +
                                                    ", column '" + names[i] + "': empty cell");
            long value = 0;
            for (const char ch : cell) {
                if (!std::isdigit(static_cast<unsigned char>(ch)))
                    throw DataFormatError("csv line " + std::to_string(line_no) + ", column '" +
                                          names[i] + "': not a non-negative integer: '" + cell +
                                          "'");
                value = value * 10 + (ch - '0');
                if (value > 255)
                    throw DataFormatError("csv line " + std::to_string(line_no) + ", column '" +
                                          names[i] + "': value above 255");
            }
            cols[i].push_back(static_cast<std::uint8_t>(value));
        }
        ++rows;
    }

    std::vector<Variable> vars;
    vars.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        int arity = 2;
        for (const std::uint8_t x : cols[i]) arity = std::max(arity, static_cast<int>(x) + 1);
        vars.push_back({static_cast<int>(i), names[i], arity});
    }
    Dataset out(std::move(vars), rows);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t row = 0; row < rows; ++row)
            out.set_value(static_cast<int>(i), row, cols[i][row]);
    return out;
}

inline void write_csv(std::ostream& os, const Dataset& data) {
    const int n = data.var_count();
    for (int v = 0; v < n; ++v) {
        const std::string& name = data.name(v);
        if (name.find_first_of(",\"\n\r") != std::string::npos)
            throw ArgumentError("write_csv: variable name '" + name + "' is not CSV-safe");
        os << (v > 0 ? "," : "") << name;
    }
    os << '\n';
    for (std::size_t row = 0; row < data.row_count(); ++row) {
        for (int v = 0; v < n; ++v)
            os << (v > 0 ? "," : "") << static_cast<int>(data.value(v, row));
        os << '\n';
    }
}

// Reorders and revalidates data columns against a network: same name set,
// network arities, observed values inside them.
inline Dataset conform_to_network(const Dataset& data, const BayesianNetwork& net) {
    const int n = net.node_count();
    if (data.var_count() != n)
        throw DataFormatError("data has " + std::to_string(data.var_count()) +
                              " columns, network has " + std::to_string(n) + " variables");
    std::vector<Variable> vars = net.variables();
    Dataset out(std::move(vars), data.row_count());
    for (int v = 0; v < n; ++v) {
        const int src = data.index_of(net.name(v));
        if (src < 0) throw DataFormatError("data is missing column '" + net.name(v) + "'");
        for (std::size_t row = 0; row < data.row_count(); ++row) {
            const std::uint8_t x = data.value(src, row);
            if (x >= net.arity(v))
                throw DataFormatError("column '" + net.name(v) + "' row " + std::to_string(row + 1) +
                                      ": value " + std::to_string(static_cast<int>(x)) +
                                      " outside arity " + std::to_string(net.arity(v)));
            out.set_value(v, row, x);
        }
    }
    return out;
}

// Network JSON: {"variables": [{"name", "arity"}, ...], "arcs": [[parent,
// child], ...], "cpts": {"<node>": [[row probabilities], ...], ...}} with CPT
// rows in mixed-radix parent-configuration order (parents ascending, lowest
// index most significant).
inline BayesianNetwork read_network_json(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DataFormatError(std::string("network json: ") + e.what());
    }
    if (!j.is_object()) throw DataFormatError("network json: top level must be an object");
    if (!j.contains("variables") || !j["variables"].is_array())
        throw DataFormatError("network json: missing 'variables' array");
    if (!j.contains("arcs") || !j["arcs"].is_array())
        throw DataFormatError("network json: missing 'arcs' array");
    if (!j.contains("cpts") || !j["cpts"].is_object())
        throw DataFormatError("network json: missing 'cpts' object");

    std::vector<Variable> vars;
    std::unordered_set<std::string> seen;
    for (const auto& entry : j["variables"]) {
        if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string() ||
            !entry.contains("arity") || !entry["arity"].is_number_integer())
            throw DataFormatError("network json: each variable needs a name and an integer arity");
        Variable v;
        v.index = static_cast<int>(vars.size());
        v.name = entry["name"].get<std::string>();
        v.arity = entry["arity"].get<int>();
        if (v.arity < 2 || v.arity > 255)
            throw DataFormatError("network json: variable '" + v.name + "': arity out of range");
        if (!seen.insert(v.name).second)
            throw DataFormatError("network json: duplicate variable name '" + v.name + "'");
        vars.push_back(std::move(v));
    }
    const int n = static_cast<int>(vars.size());
    if (n == 0) throw DataFormatError("network json: no variables");

    Dag dag(n);
    for (const auto& arc : j["arcs"]) {
        if (!arc.is_array() || arc.size() != 2 || !arc[0].is_number_integer() ||
            !arc[1].is_number_integer())
            throw DataFormatError("network json: arcs must be [parent, child] index pairs");
        const int u = arc[0].get<int>();
        const int v = arc[1].get<int>();
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw DataFormatError("network json: arc index out of range");
        try {
            dag.add_arc(u, v);
        } catch (const ArgumentError& e) {
            throw DataFormatError(std::string("network json: ") + e.what());
        }
    }

    std::vector<std::vector<double>> cpts(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const std::string key = std::to_string(v);
        if (!j["cpts"].contains(key))
            throw DataFormatError("network json: missing cpt for node " + key);
        const auto& rows = j["cpts"][key];
        if (!rows.is_array()) throw DataFormatError("network json: cpt " + key + " must be an array");
        auto& flat = cpts[static_cast<std::size_t>(v)];
        for (const auto& row : rows) {
            if (!row.is_array())
                throw DataFormatError("network json: cpt " + key + " rows must be arrays");
            for (const auto& p : row) {
                if (!p.is_number())
                    throw DataFormatError("network json: cpt " + key + " entries must be numbers");
                flat.push_back(p.get<double>());
            }
        }
    }

    try {
        return BayesianNetwork(std::move(dag), std::move(vars), std::move(cpts));
    } catch (const ArgumentError& e) {
        throw DataFormatError(std::string("network json: ") + e.what());
    }
}

inline void write_network_json(std::ostream& os, const BayesianNetwork& net) {
    JsonWriter w(os);
    w.begin_object();
    w.key("variables").begin_array();
    for (const auto& var : net.variables()) {
        w.begin_object();
        w.key("name").value(var.name);
        w.key("arity").value(var.arity);
        w.end_object();
    }
    w.end_array();
    w.key("arcs").begin_array();
    for (const auto& [u, v] : net.dag().arcs()) {
        w.begin_array();
        w.value(u);
        w.value(v);
        w.end_array();
    }
    w.end_array();
    w.key("cpts").begin_object();
    for (int v = 0; v < net.node_count(); ++v) {
        w.key(std::to_string(v)).begin_array();
        const std::size_t q = net.parent_config_count(v);
        const std::size_t r = static_cast<std::size_t>(net.arity(v));
        const auto& flat = net.cpt(v);
        for (std::size_t j = 0; j < q; ++j) {
            w.begin_array();
            for (std::size_t k = 0; k < r; ++k) w.value(flat[j * r + k]);
            w.end_array();
        }
        w.end_array();
    }
    w.end_object();
    w.end_object();
    w.finish();
}

// Learned-structure JSON as emitted by the CLI: {"arcs": [[parent, child],
// ...]} with variable names.
// Reads {"<key>": [[name, name], ...]}; "arcs" for directed lists, "edges"
// for undirected skeletons.
inline std::vector<std::pair<std::string, std::string>> read_arc_names_json(
    std::istream& in, const std::string& key = "arcs") {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DataFormatError(key + " json: " + e.what());
    }
    if (!j.is_object() || !j.contains(key) || !j[key].is_array())
        throw DataFormatError(key + " json: missing '" + key + "' array");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& arc : j[key]) {
        if (!arc.is_array() || arc.size() != 2 || !arc[0].is_string() || !arc[1].is_string())
            throw DataFormatError(key + " json: entries must be [name, name] pairs");
        out.emplace_back(arc[0].get<std::string>(), arc[1].get<std::string>());
    }
    return out;
}

}  // namespace sll
