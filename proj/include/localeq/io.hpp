#pragma once

#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "field.hpp"
#include "graph.hpp"

namespace localeq {

class ParseError : public Error {
  public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Insertion-ordered so serialized documents keep their declaration order.
using Json = nlohmann::ordered_json;

namespace detail {

inline int64_t require_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw ParseError(where + ": expected an integer");
    return j.get<int64_t>();
}

inline uint64_t require_uint(const Json& j, const std::string& where) {
    int64_t v = require_int(j, where);
    if (v < 0) throw ParseError(where + ": expected a non-negative integer");
    return static_cast<uint64_t>(v);
}

// Integer k-th root, exact or ParseError.
inline uint64_t exact_root(uint64_t q, int k, const std::string& where) {
    if (k == 1) return q;
    uint64_t r = static_cast<uint64_t>(std::llround(std::pow(double(q), 1.0 / k)));
    for (uint64_t cand = (r > 1 ? r - 1 : 1); cand <= r + 1; ++cand) {
        uint64_t acc = 1;
        for (int i = 0; i < k; ++i) acc *= cand;
        if (acc == q) return cand;
    }
    throw ParseError(where + ": q is not a k-th power of a prime");
}

}  // namespace detail

// Reads "q", optional "k" (default 1), optional "modulus" (k > 1 only).
inline const FieldSpec* field_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("$: expected an object");
    if (!doc.contains("q")) throw ParseError("$.q: required");
    uint64_t q = detail::require_uint(doc.at("q"), "$.q");
    int64_t k = doc.contains("k") ? detail::require_int(doc.at("k"), "$.k") : 1;
    if (k < 1 || k > 3) throw ParseError("$.k: must be 1, 2, or 3");
    try {
        if (k == 1) {
            if (doc.contains("modulus"))
                throw ParseError("$.modulus: prime fields take no modulus");
            return FieldSpec::prime(q);
        }
        uint64_t p = detail::exact_root(q, static_cast<int>(k), "$.q");
        if (!doc.contains("modulus")) return FieldSpec::of_order(q);
        const Json& mj = doc.at("modulus");
        if (!mj.is_array()) throw ParseError("$.modulus: expected an array");
        std::vector<uint64_t> modulus;
        for (size_t i = 0; i < mj.size(); ++i)
            modulus.push_back(detail::require_uint(
                mj[i], "$.modulus[" + std::to_string(i) + "]"));
        return FieldSpec::extension(p, static_cast<int>(k), std::move(modulus));
    } catch (const InvalidFieldSpec& e) {
        throw ParseError(std::string("$.q: ") + e.what());
    }
}

// A label is an integer in [0, q) for prime fields; extension fields take a
// coefficient list (constant term first) or an integer constant shorthand.
inline Fq label_from_json(const Json& j, const FieldSpec* f, const std::string& where) {
    if (j.is_number_integer()) {
        int64_t v = detail::require_int(j, where);
        uint64_t bound = f->k() == 1 ? f->q() : f->p();
        if (v < 0 || static_cast<uint64_t>(v) >= bound)
            throw ParseError(where + ": label out of range [0, " +
                             std::to_string(bound) + ")");
        return f->from_int(v);
    }
    if (j.is_array()) {
        if (j.size() != static_cast<size_t>(f->k()))
            throw ParseError(where + ": coefficient list must have exactly " +
                             std::to_string(f->k()) + " entries");
        std::vector<uint64_t> coeffs;
        for (size_t i = 0; i < j.size(); ++i) {
            std::string at = where + "[" + std::to_string(i) + "]";
            uint64_t c = detail::require_uint(j[i], at);
            if (c >= f->p())
                throw ParseError(at + ": coefficient out of range [0, " +
                                 std::to_string(f->p()) + ")");
            coeffs.push_back(c);
        }
        return f->element(coeffs);
    }
    throw ParseError(where + ": expected an integer or a coefficient list");
}

inline Json label_to_json(const Fq& e) {
    const FieldSpec* f = e.spec();
    if (f->k() == 1) return Json(e.coeff(0));
    Json arr = Json::array();
    for (int i = 0; i < f->k(); ++i) arr.push_back(e.coeff(i));
    return arr;
}

inline LabeledGraph graph_from_json(const Json& doc) {
    const FieldSpec* f = field_from_json(doc);
    if (!doc.contains("n")) throw ParseError("$.n: required");
    uint64_t n = detail::require_uint(doc.at("n"), "$.n");
    if (n > 4096) throw ParseError("$.n: vertex count out of range");
    LabeledGraph g(f, static_cast<size_t>(n));
    if (!doc.contains("edges")) return g;
    const Json& edges = doc.at("edges");
    if (!edges.is_array()) throw ParseError("$.edges: expected an array");
    std::set<std::pair<uint64_t, uint64_t>> seen;
    for (size_t e = 0; e < edges.size(); ++e) {
        std::string where = "$.edges[" + std::to_string(e) + "]";
        const Json& entry = edges[e];
        if (!entry.is_array() || entry.size() != 3)
            throw ParseError(where + ": expected [i, j, label]");
        uint64_t i = detail::require_uint(entry[0], where + "[0]");
        uint64_t j = detail::require_uint(entry[1], where + "[1]");
        if (i >= n || j >= n)
            throw ParseError(where + ": vertex index out of range [0, " +
                             std::to_string(n) + ")");
        if (i == j) throw ParseError(where + ": self-loops are not allowed");
        if (i > j)
            throw ParseError(where + ": list each edge once with i < j");
        if (!seen.insert({i, j}).second)
            throw ParseError(where + ": duplicate edge");
        Fq label = label_from_json(entry[2], f, where + "[2]");
        if (label.is_zero())
            throw ParseError(where + ": zero label (omit absent edges)");
        g.set(static_cast<size_t>(i), static_cast<size_t>(j), label);
    }
    return g;
}

inline Json graph_to_json(const LabeledGraph& g) {
    const FieldSpec* f = g.field();
    Json doc = Json::object();
    doc["q"] = f->q();
    if (f->k() > 1) {
        doc["k"] = f->k();
        doc["modulus"] = f->modulus();
    }
    doc["n"] = g.size();
    Json edges = Json::array();
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = i + 1; j < g.size(); ++j)
            if (!g.at(i, j).is_zero())
                edges.push_back(Json::array({i, j, label_to_json(g.at(i, j))}));
    doc["edges"] = std::move(edges);
    return doc;
}

inline LabeledGraph parse_graph(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return graph_from_json(doc);
}

inline std::string serialize_graph(const LabeledGraph& g) {
    return graph_to_json(g).dump();
}

// Op arrays look like [{"op":"star","v":1,"a":1},{"op":"circ","v":0,"b":2}];
// scalars follow the label encoding of the field the ops will act on.
inline std::vector<LocalOp> ops_from_json(const Json& doc, const FieldSpec* f, size_t n) {
    if (!doc.is_array()) throw ParseError("$: expected an array of ops");
    std::vector<LocalOp> out;
    for (size_t idx = 0; idx < doc.size(); ++idx) {
        std::string where = "$[" + std::to_string(idx) + "]";
        const Json& entry = doc[idx];
        if (!entry.is_object()) throw ParseError(where + ": expected an object");
        if (!entry.contains("op") || !entry.at("op").is_string())
            throw ParseError(where + ".op: required string");
        std::string kind = entry.at("op").get<std::string>();
        if (!entry.contains("v")) throw ParseError(where + ".v: required");
        uint64_t v = detail::require_uint(entry.at("v"), where + ".v");
        if (v >= n)
            throw ParseError(where + ".v: vertex out of range [0, " +
                             std::to_string(n) + ")");
        if (kind == "star") {
            if (!entry.contains("a")) throw ParseError(where + ".a: required");
            out.push_back(LocalOp::star(
                static_cast<size_t>(v),
                label_from_json(entry.at("a"), f, where + ".a")));
        } else if (kind == "circ") {
            if (!entry.contains("b")) throw ParseError(where + ".b: required");
            Fq b = label_from_json(entry.at("b"), f, where + ".b");
            if (b.is_zero()) throw ParseError(where + ".b: must be nonzero");
            out.push_back(LocalOp::circ(static_cast<size_t>(v), b));
        } else {
            throw ParseError(where + ".op: must be \"star\" or \"circ\"");
        }
    }
    return out;
}

inline Json ops_to_json(const std::vector<LocalOp>& ops) {
    Json arr = Json::array();
    for (const LocalOp& op : ops) {
        Json entry = Json::object();
        entry["op"] = op.kind == LocalOp::Kind::Star ? "star" : "circ";
        entry["v"] = op.v;
        entry[op.kind == LocalOp::Kind::Star ? "a" : "b"] = label_to_json(op.scalar);
        arr.push_back(std::move(entry));
    }
    return arr;
}

inline std::vector<LocalOp> parse_ops(const std::string& text, const FieldSpec* f,
                                      size_t n) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return ops_from_json(doc, f, n);
}

inline std::string serialize_ops(const std::vector<LocalOp>& ops) {
    return ops_to_json(ops).dump();
}

}  // namespace localeq
