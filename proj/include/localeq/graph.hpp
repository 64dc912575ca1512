#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "localeq/field.hpp"

namespace localeq {

class IndexError : public Error {
public:
    using Error::Error;
};

class InvalidOperator : public Error {
public:
    using Error::Error;
};

using Vec = std::vector<Fq>;

// Simple graph on vertices 0..n-1 with edge labels in F_q.  The adjacency
// matrix is symmetric with zero diagonal; a zero label means no edge.
class LabeledGraph {
public:
    LabeledGraph(const FieldSpec* field, size_t n)
        : field_(field), n_(n), m_(n * n, field->zero()) {}

    const FieldSpec* field() const { return field_; }
    size_t size() const { return n_; }

    const Fq& at(size_t i, size_t j) const {
        bounds(i); bounds(j);
        return m_[i * n_ + j];
    }

    void set(size_t i, size_t j, const Fq& v) {
        bounds(i); bounds(j);
        if (i == j) throw IndexError("self-loops are not representable");
        if (v.spec() != field_) throw MismatchedField();
        m_[i * n_ + j] = v;
        m_[j * n_ + i] = v;
    }

    // Row i of the adjacency matrix; entry i is always zero.
    Vec neighborhood(size_t i) const {
        bounds(i);
        return Vec(m_.begin() + static_cast<long>(i * n_),
                   m_.begin() + static_cast<long>((i + 1) * n_));
    }

    bool operator==(const LabeledGraph& o) const {
        return field_ == o.field_ && n_ == o.n_ && m_ == o.m_;
    }
    bool operator!=(const LabeledGraph& o) const { return !(*this == o); }

private:
    void bounds(size_t i) const {
        if (i >= n_) throw IndexError("vertex index " + std::to_string(i) + " out of range");
    }

    const FieldSpec* field_;
    size_t n_;
    std::vector<Fq> m_;
};

struct LocalOp {
    enum class Kind { Star, Circ };
    Kind kind;
    size_t v;
    Fq scalar;  // a for Star (any), b for Circ (nonzero)

    static LocalOp star(size_t v, const Fq& a) { return {Kind::Star, v, a}; }
    static LocalOp circ(size_t v, const Fq& b) { return {Kind::Circ, v, b}; }
};

// g'_{ij} = g_{ij} + a * g_{vi} * g_{vj} for i, j != v.
inline LabeledGraph star(const LabeledGraph& g, size_t v, const Fq& a) {
    if (v >= g.size()) throw IndexError("pivot vertex out of range");
    if (a.spec() != g.field()) throw MismatchedField();
    LabeledGraph out = g;
    for (size_t i = 0; i < g.size(); ++i) {
        if (i == v) continue;
        for (size_t j = i + 1; j < g.size(); ++j) {
            if (j == v) continue;
            out.set(i, j, g.at(i, j) + a * g.at(v, i) * g.at(v, j));
        }
    }
    return out;
}

// Scales row and column v by b; b must be invertible.
inline LabeledGraph circ(const LabeledGraph& g, size_t v, const Fq& b) {
    if (v >= g.size()) throw IndexError("pivot vertex out of range");
    if (b.spec() != g.field()) throw MismatchedField();
    if (b.is_zero()) throw InvalidOperator("circ scalar must be nonzero");
    LabeledGraph out = g;
    for (size_t i = 0; i < g.size(); ++i) {
        if (i == v) continue;
        out.set(v, i, b * g.at(v, i));
    }
    return out;
}

inline LabeledGraph apply_op(const LabeledGraph& g, const LocalOp& op) {
    return op.kind == LocalOp::Kind::Star ? star(g, op.v, op.scalar)
                                          : circ(g, op.v, op.scalar);
}

inline LabeledGraph apply_sequence(const LabeledGraph& g, const std::vector<LocalOp>& ops) {
    LabeledGraph cur = g;
    for (const LocalOp& op : ops) cur = apply_op(cur, op);
    return cur;
}

// Connected components as sorted vertex lists, ordered by smallest member.
inline std::vector<std::vector<size_t>> components(const LabeledGraph& g) {
    size_t n = g.size();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<size_t>> out;
    for (size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<size_t> comp, stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (size_t w = 0; w < n; ++w) {
                if (!seen[w] && !g.at(u, w).is_zero()) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const LabeledGraph& g) {
    return g.size() == 0 || components(g).size() == 1;
}

inline LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<size_t>& verts) {
    LabeledGraph out(g.field(), verts.size());
    for (size_t a = 0; a < verts.size(); ++a)
        for (size_t b = a + 1; b < verts.size(); ++b)
            out.set(a, b, g.at(verts[a], verts[b]));
    return out;
}

}  // namespace localeq
