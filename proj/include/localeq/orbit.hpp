#pragma once

#include <cstring>
#include <deque>
#include <string>
#include <unordered_set>
#include <vector>

#include "localeq/field.hpp"
#include "localeq/graph.hpp"

namespace localeq {

class LimitExceeded : public Error {
public:
    using Error::Error;
};

// Row-major upper-triangle label indices, fixed width per label.
inline std::string canonical_encoding(const LabeledGraph& g) {
    std::string out;
    size_t n = g.size();
    out.reserve(n * (n - 1) / 2 * sizeof(uint64_t));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            uint64_t idx = g.field()->index_of(g.at(i, j));
            char buf[sizeof(uint64_t)];
            std::memcpy(buf, &idx, sizeof(buf));
            out.append(buf, sizeof(buf));
        }
    }
    return out;
}

inline LabeledGraph decode_encoding(const FieldSpec* f, size_t n,
                                    const std::string& enc) {
    if (enc.size() != n * (n - 1) / 2 * sizeof(uint64_t))
        throw DimensionMismatch("encoded graph has the wrong length");
    LabeledGraph g(f, n);
    size_t pos = 0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            uint64_t idx;
            std::memcpy(&idx, enc.data() + pos, sizeof(idx));
            pos += sizeof(idx);
            g.set(i, j, f->from_index(idx));
        }
    }
    return g;
}

// Every graph reachable from the origin by star and circ operations.
struct Orbit {
    const FieldSpec* field;
    size_t n;
    LabeledGraph origin;
    std::unordered_set<std::string> members;

    size_t size() const { return members.size(); }

    bool contains(const LabeledGraph& g) const {
        if (g.field() != field || g.size() != n) return false;
        return members.count(canonical_encoding(g)) > 0;
    }
};

// BFS over the group action.  Identity operations (star a=0, circ b=1) are
// skipped; they never leave the current node.
inline Orbit orbit(const LabeledGraph& g, size_t node_limit = 1u << 20) {
    const FieldSpec* f = g.field();
    Orbit o{f, g.size(), g, {}};
    std::deque<LabeledGraph> frontier;
    o.members.insert(canonical_encoding(g));
    frontier.push_back(g);
    while (!frontier.empty()) {
        LabeledGraph cur = std::move(frontier.front());
        frontier.pop_front();
        for (size_t v = 0; v < g.size(); ++v) {
            for (uint64_t idx = 1; idx < f->q(); ++idx) {
                Fq s = f->from_index(idx);
                LabeledGraph next_star = star(cur, v, s);
                if (o.members.insert(canonical_encoding(next_star)).second) {
                    if (o.members.size() > node_limit)
                        throw LimitExceeded("orbit exceeded node limit " + std::to_string(node_limit));
                    frontier.push_back(std::move(next_star));
                }
                if (s == f->one()) continue;
                LabeledGraph next_circ = circ(cur, v, s);
                if (o.members.insert(canonical_encoding(next_circ)).second) {
                    if (o.members.size() > node_limit)
                        throw LimitExceeded("orbit exceeded node limit " + std::to_string(node_limit));
                    frontier.push_back(std::move(next_circ));
                }
            }
        }
    }
    return o;
}

inline bool equivalent_bruteforce(const LabeledGraph& g, const LabeledGraph& h,
                                  size_t node_limit = 1u << 20) {
    if (g.field() != h.field() || g.size() != h.size())
        throw DimensionMismatch("graph pair mismatch");
    return orbit(g, node_limit).contains(h);
}

}  // namespace localeq
