#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sll/common.hpp"

namespace sll {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent stream seed from a base seed plus salts (replicate id, cell id, ...).
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(base ^ splitmix64(a + 1)) ^ splitmix64(~b));
}

// mt19937_64 core with hand-rolled mappings so that sequences are identical on
// every platform (the standard pins the engine but not the distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on [0, bound); bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw ArgumentError("next_below: bound must be positive");
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(eng_()) * static_cast<unsigned __int128>(bound)) >> 64);
    }

    // Uniform integer on [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw ArgumentError("uniform_int: empty range");
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi) - lo + 1));
    }

    // Index k with probability proportional to weights[k]; walks the CDF.
    int categorical(const std::vector<double>& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        if (!(total > 0.0)) throw ArgumentError("categorical: weights must sum to a positive value");
        const double u = next_double() * total;
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
            acc += weights[k];
            if (u < acc) return static_cast<int>(k);
        }
        return static_cast<int>(weights.size()) - 1;
    }

    // Symmetric Dirichlet(1, ..., 1) via normalized exponentials.
    std::vector<double> dirichlet_uniform(int k) {
        if (k < 1) throw ArgumentError("dirichlet_uniform: k must be positive");
        std::vector<double> out(static_cast<std::size_t>(k));
        double total = 0.0;
        for (auto& x : out) {
            x = -std::log1p(-next_double());
            total += x;
        }
        if (total <= 0.0) total = 1.0;
        for (auto& x : out) x /= total;
        return out;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace sll
