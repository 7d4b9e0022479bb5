#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sll/common.hpp"
#include "sll/dag.hpp"
#include "sll/types.hpp"

namespace sll {

// Discrete Bayesian network: a DAG plus one CPT per node. CPT rows are
// indexed by the mixed-radix parent configuration with parents taken in
// ascending index order and the lowest-index parent as the most significant
// digit; each row lists probabilities for values 0..arity-1.
class BayesianNetwork {
public:
    BayesianNetwork(Dag dag, std::vector<Variable> vars, std::vector<std::vector<double>> cpts)
        : dag_(std::move(dag)), vars_(std::move(vars)), cpts_(std::move(cpts)) {
        const int n = dag_.node_count();
        if (static_cast<int>(vars_.size()) != n)
            throw ArgumentError("network: variable count does not match graph");
        if (static_cast<int>(cpts_.size()) != n)
            throw ArgumentError("network: CPT count does not match graph");
        for (int v = 0; v < n; ++v) {
            auto& var = vars_[static_cast<std::size_t>(v)];
            var.index = v;
            if (var.arity < 2)
                throw ArgumentError("variable " + var.name + ": arity must be >= 2");
            const std::size_t q = parent_config_count(v);
            const std::size_t r = static_cast<std::size_t>(var.arity);
            const auto& table = cpts_[static_cast<std::size_t>(v)];
            if (table.size() != q * r)
                throw ArgumentError("variable " + var.name + ": CPT has " +
                                    std::to_string(table.size()) + " entries, expected " +
                                    std::to_string(q * r));
            for (std::size_t j = 0; j < q; ++j) {
                double total = 0.0;
                for (std::size_t k = 0; k < r; ++k) {
                    const double p = table[j * r + k];
                    if (p < 0.0 || !std::isfinite(p))
                        throw ArgumentError("variable " + var.name + ": bad CPT entry");
                    total += p;
                }
                if (std::abs(total - 1.0) > 1e-9)
                    throw ArgumentError("variable " + var.name + ": CPT row " +
                                        std::to_string(j) + " sums to " + std::to_string(total));
            }
        }
    }

    const Dag& dag() const { return dag_; }
    int node_count() const { return dag_.node_count(); }
    const std::vector<Variable>& variables() const { return vars_; }
    int arity(int v) const { return vars_.at(static_cast<std::size_t>(v)).arity; }
    const std::string& name(int v) const { return vars_.at(static_cast<std::size_t>(v)).name; }
    const std::vector<double>& cpt(int v) const { return cpts_.at(static_cast<std::size_t>(v)); }

    std::size_t parent_config_count(int v) const {
        std::size_t q = 1;
        for (int p : dag_.parents(v)) q *= static_cast<std::size_t>(arity(p));
        return q;
    }

    // value_of(node) -> current value; returns the CPT row index for v.
    template <class ValueFn>
    std::size_t parent_config(int v, ValueFn&& value_of) const {
        std::size_t j = 0;
        for (int p : dag_.parents(v))
            j = j * static_cast<std::size_t>(arity(p)) + static_cast<std::size_t>(value_of(p));
        return j;
    }

    double probability(int v, std::size_t config, int value) const {
        const auto& table = cpt(v);
        return table[config * static_cast<std::size_t>(arity(v)) + static_cast<std::size_t>(value)];
    }

private:
    Dag dag_;
    std::vector<Variable> vars_;
    std::vector<std::vector<double>> cpts_;
};

}  // namespace sll
