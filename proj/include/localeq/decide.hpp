#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "localeq/field.hpp"
#include "localeq/graph.hpp"
#include "localeq/lambda.hpp"
#include "localeq/symplectic.hpp"

namespace localeq {

class DisconnectedInput : public Error {
public:
    using Error::Error;
};

class InternalInvariantViolation : public Error {
public:
    using Error::Error;
};

struct SearchStats {
    size_t dim_lambda = 0;
    uint64_t subsets = 0;
    uint64_t candidates = 0;
};

struct Decision {
    bool equivalent = false;
    std::optional<PhiVector> witness;                // set on Equivalent
    std::optional<std::vector<LocalOp>> ops;         // optionally attached by callers
    std::string certificate;                         // set on NotEquivalent
    SearchStats stats;
};

struct DecideOptions {
    unsigned workers = 1;
    bool deterministic = true;
};

inline bool verify_witness(const LabeledGraph& g, const LabeledGraph& h, const PhiVector& phi) {
    if (g.size() != h.size() || g.field() != h.field() || phi.size() != g.size()) return false;
    size_t n = g.size();
    if (det_phi(phi) != ones(g.field(), n)) return false;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            PhiVector lam = PhiVector::from_flat(lambda_ij(g, h, i, j));
            if (!signed_form(phi, lam).is_zero()) return false;
        }
    return true;
}

namespace detail {

// Checks det phi = ones with early exit; phi given flat.
inline bool det_is_identity(const Vec& flat, size_t n) {
    const Fq one = flat[0].spec()->one();
    for (size_t i = 0; i < n; ++i) {
        Fq det = flat[n + i] * flat[2 * n + i] - flat[i] * flat[3 * n + i];
        if (det != one) return false;
    }
    return true;
}

// Enumerates coefficient tuples over the given subset of basis rows, last
// position fastest, coefficients in canonical field order, skipping all-zero.
// Returns the first flat combination with identity determinant.
inline std::optional<Vec> scan_subset(const std::vector<Vec>& basis,
                                      const std::vector<size_t>& subset, size_t n,
                                      uint64_t& candidates) {
    const FieldSpec* f = basis[0][0].spec();
    size_t k = subset.size();
    uint64_t q = f->q();
    std::vector<uint64_t> idx(k, 0);
    // partial[j] = sum of c_t * row_t for t <= j; positions after the last
    // incremented one always hold coefficient zero.
    std::vector<Vec> partial(k, zeros(f, 4 * n));
    for (;;) {
        // Advance the odometer.
        size_t pos = k;
        while (pos > 0) {
            --pos;
            if (idx[pos] + 1 < q) {
                ++idx[pos];
                break;
            }
            idx[pos] = 0;
            if (pos == 0) return std::nullopt;  // wrapped: exhausted
        }
        // Recompute partials from the changed position down.
        for (size_t j = pos; j < k; ++j) {
            const Vec& prev = (j == 0) ? partial[0] : partial[j - 1];
            Vec& cur = partial[j];
            if (j == 0) {
                cur = zeros(f, 4 * n);
            } else {
                cur = prev;
            }
            if (idx[j] != 0) {
                Fq c = f->from_index(idx[j]);
                const Vec& row = basis[subset[j]];
                for (size_t t = 0; t < 4 * n; ++t) {
                    if (row[t].is_zero()) continue;
                    cur[t] += c * row[t];
                }
            }
        }
        ++candidates;
        if (det_is_identity(partial[k - 1], n)) return partial[k - 1];
    }
}

// Lexicographically next k-subset of {0..d-1}; false when exhausted.
inline bool next_subset(std::vector<size_t>& s, size_t d) {
    size_t k = s.size();
    size_t i = k;
    while (i > 0) {
        --i;
        if (s[i] + 1 <= d - (k - i)) {
            ++s[i];
            for (size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline Decision closed_form_small(const LabeledGraph& g, const LabeledGraph& h,
                                  const LambdaSystem& sys) {
    const FieldSpec* f = g.field();
    size_t n = g.size();
    Decision d;
    d.stats.dim_lambda = sys.big.dim();
    if (n == 1) {
        d.equivalent = true;
        d.witness = PhiVector(zeros(f, 1), ones(f, 1), ones(f, 1), zeros(f, 1));
        return d;
    }
    // n = 2: star is vacuous, circ scales the single label by any nonzero b.
    bool ge = !g.at(0, 1).is_zero(), he = !h.at(0, 1).is_zero();
    if (ge != he) {
        d.equivalent = false;
        d.certificate = "edge presence differs on the unique vertex pair";
        return d;
    }
    d.equivalent = true;
    if (!ge) {
        d.witness = PhiVector(zeros(f, 2), ones(f, 2), ones(f, 2), zeros(f, 2));
    } else {
        Fq ga = g.at(0, 1), ha = h.at(0, 1);
        d.witness = PhiVector(zeros(f, 2), Vec{ga.inv(), ha}, Vec{ga, ha.inv()}, zeros(f, 2));
    }
    if (!verify_witness(g, h, *d.witness))
        throw InternalInvariantViolation("closed-form witness failed verification");
    return d;
}

}  // namespace detail

// Searches Lambda(G,H) for a vector with identity determinant, over all
// k-subsets of the echelon basis, k = min(5, dim).  Exhaustive (hence a
// definitive negative) for connected inputs.
inline Decision decide(const LabeledGraph& g, const LabeledGraph& h,
                       const DecideOptions& opts = {}) {
    if (g.size() != h.size() || g.field() != h.field())
        throw DimensionMismatch("graph pair mismatch");
    size_t n = g.size();
    if (n == 0) throw DimensionMismatch("graphs must have at least one vertex");
    LambdaSystem sys = big_lambda(g, h);
    if (n <= 2) return detail::closed_form_small(g, h, sys);
    if (!is_connected(g) || !is_connected(h))
        throw DisconnectedInput("decide requires connected graphs; use decide_general");

    Decision dec;
    size_t d = sys.big.dim();
    dec.stats.dim_lambda = d;
    if (d == 0) {
        dec.equivalent = false;
        dec.certificate = "Lambda(G,H) is the zero space";
        return dec;
    }
    size_t k = d < 5 ? d : 5;
    const std::vector<Vec>& basis = sys.big.basis();

    std::vector<size_t> subset(k);
    for (size_t i = 0; i < k; ++i) subset[i] = i;

    std::optional<Vec> hit;
    bool parallel = opts.workers > 1 && !opts.deterministic;
    if (!parallel) {
        do {
            ++dec.stats.subsets;
            hit = detail::scan_subset(basis, subset, n, dec.stats.candidates);
            if (hit) break;
        } while (detail::next_subset(subset, d));
    } else {
        // Round-robin the subset stream across workers; first hit wins.
        std::vector<std::vector<size_t>> all_subsets;
        do {
            all_subsets.push_back(subset);
        } while (detail::next_subset(subset, d));
        dec.stats.subsets = all_subsets.size();
        std::atomic<bool> found{false};
        std::atomic<uint64_t> total_candidates{0};
        std::mutex mu;
        auto worker = [&](unsigned w) {
            uint64_t local = 0;
            for (size_t s = w; s < all_subsets.size() && !found.load(); s += opts.workers) {
                auto r = detail::scan_subset(basis, all_subsets[s], n, local);
                if (r) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!hit) {
                        hit = std::move(r);
                        found.store(true);
                    }
                    break;
                }
            }
            total_candidates += local;
        };
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < opts.workers; ++w) threads.emplace_back(worker, w);
        for (auto& t : threads) t.join();
        dec.stats.candidates = total_candidates.load();
    }

    if (hit) {
        dec.equivalent = true;
        dec.witness = PhiVector::from_flat(*hit);
        if (!verify_witness(g, h, *dec.witness))
            throw InternalInvariantViolation("search produced a non-verifying witness");
        return dec;
    }
    dec.equivalent = false;
    dec.certificate =
        "no phi in Lambda(G,H) with det phi = I among the complete search space "
        "(dim Lambda = " + std::to_string(d) + ", k = " + std::to_string(k) + ")";
    return dec;
}

// Componentwise decision for arbitrary (possibly disconnected) graphs.
inline Decision decide_general(const LabeledGraph& g, const LabeledGraph& h,
                               const DecideOptions& opts = {}) {
    if (g.size() != h.size() || g.field() != h.field())
        throw DimensionMismatch("graph pair mismatch");
    const FieldSpec* f = g.field();
    size_t n = g.size();
    auto cg = components(g), ch = components(h);
    Decision dec;
    if (cg != ch) {
        dec.equivalent = false;
        dec.certificate = "component partitions differ (local operations preserve them)";
        return dec;
    }
    PhiVector combined(zeros(f, n), zeros(f, n), zeros(f, n), zeros(f, n));
    for (const auto& comp : cg) {
        Decision part = decide(induced_subgraph(g, comp), induced_subgraph(h, comp), opts);
        dec.stats.dim_lambda += part.stats.dim_lambda;
        dec.stats.subsets += part.stats.subsets;
        dec.stats.candidates += part.stats.candidates;
        if (!part.equivalent) {
            dec.equivalent = false;
            dec.certificate = "component containing vertex " + std::to_string(comp[0]) +
                              ": " + part.certificate;
            return dec;
        }
        for (size_t local = 0; local < comp.size(); ++local) {
            size_t v = comp[local];
            combined.X[v] = part.witness->X[local];
            combined.Y[v] = part.witness->Y[local];
            combined.Z[v] = part.witness->Z[local];
            combined.T[v] = part.witness->T[local];
        }
    }
    if (!verify_witness(g, h, combined))
        throw InternalInvariantViolation("combined componentwise witness failed verification");
    dec.equivalent = true;
    dec.witness = std::move(combined);
    return dec;
}

}  // namespace localeq
