#pragma once

#include <cstdint>
#include <vector>

#include "localeq/field.hpp"
#include "localeq/graph.hpp"

namespace localeq {

// SplitMix64.  Used instead of <random> distributions so that seeded runs
// reproduce bit-for-bit across standard library implementations.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound); bound > 0.  Rejection keeps it unbiased.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0ull - bound) % bound;
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    bool chance(uint64_t numer, uint64_t denom) { return below(denom) < numer; }

    Fq element(const FieldSpec* f) { return f->from_index(below(f->q())); }

    Fq nonzero(const FieldSpec* f) { return f->from_index(1 + below(f->q() - 1)); }

private:
    uint64_t state_;
};

// Each unordered pair gets an edge with probability percent/100, labeled by a
// uniform nonzero element.
inline LabeledGraph random_graph(const FieldSpec* f, size_t n, Rng& rng, uint64_t percent = 50) {
    LabeledGraph g(f, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (rng.chance(percent, 100)) g.set(i, j, rng.nonzero(f));
    return g;
}

inline LabeledGraph random_connected_graph(const FieldSpec* f, size_t n, Rng& rng,
                                           uint64_t percent = 50) {
    for (;;) {
        LabeledGraph g = random_graph(f, n, rng, percent);
        if (is_connected(g)) return g;
        // Sparse draws on large n may loop; densify a spanning path instead.
        if (n >= 2 && percent * n < 100) {
            for (size_t i = 0; i + 1 < n; ++i)
                if (g.at(i, i + 1).is_zero()) g.set(i, i + 1, rng.nonzero(f));
            return g;
        }
    }
}

inline std::vector<LocalOp> random_ops(const FieldSpec* f, size_t n, size_t count, Rng& rng) {
    std::vector<LocalOp> ops;
    ops.reserve(count);
    for (size_t c = 0; c < count; ++c) {
        size_t v = rng.below(n);
        if (rng.chance(1, 2))
            ops.push_back(LocalOp::star(v, rng.nonzero(f)));
        else
            ops.push_back(LocalOp::circ(v, rng.nonzero(f)));
    }
    return ops;
}

}  // namespace localeq
