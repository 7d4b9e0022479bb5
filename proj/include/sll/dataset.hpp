#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sll/common.hpp"
#include "sll/types.hpp"

namespace sll {

// Complete discrete dataset, stored column-major. Cell values live in
// [0, arity) for their variable; arities are capped at 255 by the cell type.
class Dataset {
public:
    Dataset(std::vector<Variable> vars, std::size_t rows)
        : vars_(std::move(vars)), rows_(rows) {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto& v = vars_[i];
            v.index = static_cast<int>(i);
            if (v.arity < 2) throw ArgumentError("variable " + v.name + ": arity must be >= 2");
            if (v.arity > 255) throw ArgumentError("variable " + v.name + ": arity above 255");
        }
        cols_.assign(vars_.size(), std::vector<std::uint8_t>(rows_, 0));
    }

    int var_count() const { return static_cast<int>(vars_.size()); }
    std::size_t row_count() const { return rows_; }

    const Variable& variable(int v) const {
        check_var(v);
        return vars_[static_cast<std::size_t>(v)];
    }

    const std::vector<Variable>& variables() const { return vars_; }

    int arity(int v) const { return variable(v).arity; }
    const std::string& name(int v) const { return variable(v).name; }

    std::uint8_t value(int v, std::size_t row) const {
        check_var(v);
        if (row >= rows_) throw ArgumentError("row index out of range");
        return cols_[static_cast<std::size_t>(v)][row];
    }

    void set_value(int v, std::size_t row, std::uint8_t x) {
        check_var(v);
        if (row >= rows_) throw ArgumentError("row index out of range");
        if (x >= arity(v))
            throw ArgumentError("value " + std::to_string(int(x)) + " out of range for variable " +
                                name(v));
        cols_[static_cast<std::size_t>(v)][row] = x;
    }

    const std::vector<std::uint8_t>& column(int v) const {
        check_var(v);
        return cols_[static_cast<std::size_t>(v)];
    }

    // -1 when absent; -2 when the name is ambiguous.
    int index_of(const std::string& name) const {
        int found = -1;
        for (const auto& v : vars_) {
            if (v.name == name) {
                if (found >= 0) return -2;
                found = v.index;
            }
        }
        return found;
    }

    // Column subset with variables reindexed 0..|keep|-1 in ascending old index.
    Dataset project(const NodeSubset& keep) const {
        std::vector<Variable> vars;
        vars.reserve(keep.size());
        for (int v : keep) vars.push_back(variable(v));
        Dataset out(std::move(vars), rows_);
        std::size_t i = 0;
        for (int v : keep) out.cols_[i++] = cols_[static_cast<std::size_t>(v)];
        return out;
    }

private:
    void check_var(int v) const {
        if (v < 0 || v >= var_count())
            throw ArgumentError("variable index " + std::to_string(v) + " out of range");
    }

    std::vector<Variable> vars_;
    std::size_t rows_ = 0;
    std::vector<std::vector<std::uint8_t>> cols_;
};

}  // namespace sll
