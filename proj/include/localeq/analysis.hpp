#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "localeq/decide.hpp"
#include "localeq/field.hpp"
#include "localeq/graph.hpp"
#include "localeq/lambda.hpp"
#include "localeq/rng.hpp"
#include "localeq/symplectic.hpp"

namespace localeq {

class NotLinear : public Error {
public:
    using Error::Error;
};

class InvalidCycle : public Error {
public:
    using Error::Error;
};

// Solutions of the self-pair constraint system with Y + Z = 0 on every vertex.
inline Subspace lambda0_basis(const LabeledGraph& g) {
    if (!is_connected(g))
        throw DisconnectedInput("the Y+Z partition needs a connected graph");
    const FieldSpec* f = g.field();
    size_t n = g.size();
    Subspace small(f, 4 * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) small.insert(lambda_ij(g, g, i, j));
    std::vector<Vec> rows;
    rows.reserve(small.dim() + n);
    for (const Vec& r : small.basis()) rows.push_back(form_adjusted_row(Form::Signed, r));
    for (size_t i = 0; i < n; ++i) {
        Vec r = zeros(f, 4 * n);
        r[n + i] = f->one();
        r[2 * n + i] = f->one();
        rows.push_back(std::move(r));
    }
    return nullspace(f, 4 * n, rows);
}

namespace detail {

inline Vec random_member(const Subspace& s, Rng& rng) {
    const FieldSpec* f = s.field();
    Vec v = zeros(f, s.ambient());
    for (const Vec& row : s.basis()) {
        Fq c = rng.element(f);
        if (c.is_zero()) continue;
        for (size_t i = 0; i < v.size(); ++i) v[i] += c * row[i];
    }
    return v;
}

inline bool constant_vector(const Vec& v) {
    for (const Fq& c : v)
        if (c != v[0]) return false;
    return true;
}

// Y + Z of a flat constraint-space vector.
inline Vec y_plus_z(const Vec& flat) {
    size_t n = flat.size() / 4;
    Vec out(flat.begin() + n, flat.begin() + 2 * n);
    for (size_t i = 0; i < n; ++i) out[i] += flat[2 * n + i];
    return out;
}

}  // namespace detail

// Y + Z is a constant function on the vertices for every sampled element of
// the self-pair solution space.
inline bool check_lemma_ai(const LabeledGraph& g, size_t samples = 50, uint64_t seed = 0xa1u) {
    if (!is_connected(g)) throw DisconnectedInput("constancy of Y+Z needs a connected graph");
    Subspace lam = big_lambda(g, g).big;
    for (const Vec& row : lam.basis())
        if (!detail::constant_vector(detail::y_plus_z(row))) return false;
    Rng rng(seed);
    for (size_t k = 0; k < samples; ++k)
        if (!detail::constant_vector(detail::y_plus_z(detail::random_member(lam, rng))))
            return false;
    return true;
}

// Alternating edge-inverse weighted sum of neighborhood products along an
// even closed vertex sequence.
inline Vec v_cycle(const LabeledGraph& g, const std::vector<size_t>& cycle) {
    size_t n = g.size(), len = cycle.size();
    if (len == 0 || len % 2 != 0) throw InvalidCycle("cycle length must be even and positive");
    for (size_t v : cycle)
        if (v >= n) throw IndexError("cycle vertex out of range");
    const FieldSpec* f = g.field();
    Vec acc = zeros(f, n);
    for (size_t k = 0; k < len; ++k) {
        size_t a = cycle[k], b = cycle[(k + 1) % len];
        if (a == b || g.at(a, b).is_zero())
            throw InvalidCycle("consecutive cycle vertices must be adjacent");
        Fq coef = g.at(a, b).inv();
        if (k % 2 == 0) coef = -coef;
        Vec na = g.neighborhood(a), nb = g.neighborhood(b);
        for (size_t c = 0; c < n; ++c) acc[c] += coef * na[c] * nb[c];
    }
    return acc;
}

// Ground-truth bineighborhood space: neighborhood products of non-adjacent
// pairs plus the alternating sums over even closed walks without immediate
// backtracking (these subsume the even simple cycles; odd cycle pairs only
// show up through walks).  Exponential in the bound; meant for small n.
inline Subspace nu_space_bruteforce(const LabeledGraph& g, size_t walk_bound = 0) {
    const FieldSpec* f = g.field();
    const size_t n = g.size();
    if (walk_bound == 0) walk_bound = 2 * n;
    Subspace nu(f, n);
    std::vector<Vec> nbhd;
    nbhd.reserve(n);
    for (size_t i = 0; i < n; ++i) nbhd.push_back(g.neighborhood(i));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (g.at(i, j).is_zero()) nu.insert(cwise(nbhd[i], nbhd[j]));

    for (size_t s = 0; s < n; ++s) {
        std::vector<size_t> walk{s};
        Vec acc = zeros(f, n);
        std::function<void(size_t)> dfs = [&](size_t depth) {
            size_t cur = walk[depth];
            for (size_t nb = s; nb < n; ++nb) {
                if (nb == cur) continue;
                const Fq& lab = g.at(cur, nb);
                if (lab.is_zero()) continue;
                if (depth >= 1 && nb == walk[depth - 1]) continue;
                Fq coef = lab.inv();
                if (depth % 2 == 0) coef = -coef;
                size_t len = depth + 1;
                if (nb == s && len % 2 == 0 && len >= 4 && walk[1] != cur) {
                    Vec total = acc;
                    for (size_t c = 0; c < n; ++c) total[c] += coef * nbhd[cur][c] * nbhd[s][c];
                    nu.insert(std::move(total));
                }
                if (len + 1 <= walk_bound) {
                    walk.push_back(nb);
                    for (size_t c = 0; c < n; ++c) acc[c] += coef * nbhd[cur][c] * nbhd[nb][c];
                    dfs(depth + 1);
                    for (size_t c = 0; c < n; ++c) acc[c] -= coef * nbhd[cur][c] * nbhd[nb][c];
                    walk.pop_back();
                }
            }
        };
        dfs(0);
    }
    return nu;
}

inline bool has_odd_cycle(const LabeledGraph& g) {
    size_t n = g.size();
    std::vector<int> color(n, -1);
    for (size_t s = 0; s < n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::vector<size_t> stack{s};
        while (!stack.empty()) {
            size_t v = stack.back();
            stack.pop_back();
            for (size_t u = 0; u < n; ++u) {
                if (u == v || g.at(v, u).is_zero()) continue;
                if (color[u] == -1) {
                    color[u] = 1 - color[v];
                    stack.push_back(u);
                } else if (color[u] == color[v]) {
                    return true;
                }
            }
        }
    }
    return false;
}

// First-block projection of a constraint subspace.
inline Subspace x_projection(const Subspace& s) {
    size_t n = s.ambient() / 4;
    Subspace out(s.field(), n);
    for (const Vec& row : s.basis()) out.insert(Vec(row.begin(), row.begin() + n));
    return out;
}

// Vectors of the Y+Z = 0 class with vanishing first block.
inline size_t pen_fiber_dim(const LabeledGraph& g) {
    Subspace l0 = lambda0_basis(g);
    return l0.dim() - x_projection(l0).dim();
}

// The first block ranges exactly over the orthogonal complement of the
// bineighborhood space; with an odd cycle present the extension is unique.
inline bool check_theorem_pen(const LabeledGraph& g) {
    Subspace l0 = lambda0_basis(g);
    Subspace proj = x_projection(l0);
    Subspace perp = orthogonal_complement(nu_space_bruteforce(g), Form::Dot);
    if (!subspace_equal(proj, perp)) return false;
    if (has_odd_cycle(g) && l0.dim() != proj.dim()) return false;
    return true;
}

// det is a constant vector on the whole self-pair solution space.
inline bool check_det_constant(const LabeledGraph& g, size_t combos = 100,
                               uint64_t seed = 0xdeu) {
    if (g.size() < 3) throw DimensionMismatch("det constancy needs 3 or more vertices");
    if (!is_connected(g)) throw DisconnectedInput("det constancy needs a connected graph");
    Subspace lam = big_lambda(g, g).big;
    for (const Vec& row : lam.basis())
        if (!detail::constant_vector(det_phi(PhiVector::from_flat(row)))) return false;
    Rng rng(seed);
    for (size_t k = 0; k < combos; ++k) {
        Vec v = detail::random_member(lam, rng);
        if (!detail::constant_vector(det_phi(PhiVector::from_flat(v)))) return false;
    }
    return true;
}

// The det = 0 subset of the Y+Z = 0 class.  Equals the radical of the det
// quadratic form when that form is anisotropic on a complement of the
// radical; otherwise the subset is a union of proper subspaces and NotLinear
// is thrown (possible only below dimension 5).
inline Subspace lambda00(const LabeledGraph& g) {
    Subspace l0 = lambda0_basis(g);
    const FieldSpec* f = g.field();
    size_t n = g.size(), d = l0.dim();
    Subspace out(f, 4 * n);
    if (d == 0) return out;

    std::vector<PhiVector> phis;
    phis.reserve(d);
    for (const Vec& r : l0.basis()) phis.push_back(PhiVector::from_flat(r));
    Fq neg_half = -(f->from_int(2).inv());
    std::vector<Vec> gram(d, zeros(f, d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = i; j < d; ++j) {
            Vec p = psi(phis[i], phis[j]);
            if (!detail::constant_vector(p))
                throw InternalInvariantViolation("pairing is not constant across vertices");
            gram[i][j] = neg_half * p[0];
            gram[j][i] = gram[i][j];
        }

    Subspace rad = nullspace(f, d, gram);
    size_t r = d - rad.dim();
    if (r == 0) return l0;
    bool anisotropic = r == 1;
    if (r == 2) {
        // Complete the radical with coordinate vectors; the induced form on
        // the complement is nondegenerate, so the binary form has nonzero
        // roots exactly when its discriminant is a square or a corner is 0.
        Subspace span = rad;
        std::vector<size_t> w;
        for (size_t j = 0; j < d && w.size() < 2; ++j)
            if (span.insert(unit(f, d, j))) w.push_back(j);
        Fq a = gram[w[0]][w[0]], b = gram[w[0]][w[1]], c = gram[w[1]][w[1]];
        anisotropic = !(a.is_zero() || c.is_zero() || is_square(b * b - a * c));
    }
    if (!anisotropic) throw NotLinear("the det = 0 subset is not closed under addition");

    for (const Vec& coords : rad.basis()) {
        Vec lift = zeros(f, 4 * n);
        for (size_t i = 0; i < d; ++i) {
            if (coords[i].is_zero()) continue;
            const Vec& row = l0.basis()[i];
            for (size_t t = 0; t < 4 * n; ++t) lift[t] += coords[i] * row[t];
        }
        out.insert(std::move(lift));
    }
    return out;
}

struct SigmaSample {
    PhiVector witness;                      // always a valid self-pair witness
    bool lambda00_linear = false;
    std::optional<Subspace> directions;     // det = 0 translates of the witness
    std::optional<size_t> codim_in_lambda;  // of the affine subset
};

// A guaranteed solution plus, when available, a whole affine subset of
// solutions through it.
inline SigmaSample sigma_sample(const LabeledGraph& g) {
    const FieldSpec* f = g.field();
    size_t n = g.size();
    SigmaSample s{PhiVector(zeros(f, n), ones(f, n), ones(f, n), zeros(f, n)), false, {}, {}};
    size_t dim_lambda = big_lambda(g, g).big.dim();
    try {
        Subspace l00 = lambda00(g);
        s.lambda00_linear = true;
        s.codim_in_lambda = dim_lambda - l00.dim();
        s.directions = std::move(l00);
    } catch (const NotLinear&) {
        s.lambda00_linear = false;
    }
    return s;
}

namespace detail {

// Square root in F_q (q odd), assuming the input is a square.
inline Fq field_sqrt(const Fq& v) {
    const FieldSpec* f = v.spec();
    if (v.is_zero()) return v;
    uint64_t q = f->q();
    if (q % 4 == 3) return v.pow((q + 1) / 4);
    uint64_t m = q - 1;
    size_t e = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++e;
    }
    Fq z = f->one();
    for (uint64_t idx = 1; idx < q; ++idx) {
        Fq cand = f->from_index(idx);
        if (!is_square(cand)) {
            z = cand;
            break;
        }
    }
    Fq c = z.pow(m);
    Fq t = v.pow(m);
    Fq r = v.pow((m + 1) / 2);
    size_t s = e;
    while (t != f->one()) {
        size_t i = 0;
        Fq probe = t;
        while (probe != f->one()) {
            probe = probe * probe;
            ++i;
        }
        Fq b = c;
        for (size_t j = 0; j + i + 1 < s; ++j) b = b * b;
        r = r * b;
        c = b * b;
        t = t * c;
        s = i;
    }
    return r;
}

}  // namespace detail

// A nonzero isotropic vector of any 3x3 quadratic form over odd F_q, by the
// two-step completion of squares and a counting search over one variable.
inline Vec isotropic_3x3(const std::vector<Vec>& mat) {
    if (mat.size() != 3 || mat[0].size() != 3 || mat[1].size() != 3 || mat[2].size() != 3)
        throw DimensionMismatch("expected a 3x3 matrix");
    const FieldSpec* f = mat[0][0].spec();
    Fq inv2 = f->from_int(2).inv();
    Fq qa = mat[0][0], qb = mat[1][1], qc = mat[2][2];
    Fq qd = (mat[0][1] + mat[1][0]) * inv2;
    Fq qe = (mat[0][2] + mat[2][0]) * inv2;
    Fq qf = (mat[1][2] + mat[2][1]) * inv2;
    if (qa.is_zero()) return {f->one(), f->zero(), f->zero()};
    if (qb.is_zero()) return {f->zero(), f->one(), f->zero()};
    if (qc.is_zero()) return {f->zero(), f->zero(), f->one()};
    Fq alpha = qe * qe - qa * qc;
    Fq beta = qf * qf - qb * qc;
    Fq gamma = qe * qf - qc * qd;
    if (alpha.is_zero()) return {f->one(), f->zero(), -(qe * qc.inv())};
    Fq theta = gamma * gamma - alpha * beta;
    for (uint64_t ti = 0; ti < f->q(); ++ti) {
        Fq t = f->from_index(ti);
        Fq rhs = alpha * t * t + theta;
        if (!is_square(rhs)) continue;
        Fq sv = detail::field_sqrt(rhs);
        Fq x = (sv - gamma) * alpha.inv();
        Fq y = f->one();
        Fq z = (t - qe * x - qf) * qc.inv();
        return {x, y, z};
    }
    throw InternalInvariantViolation("isotropic search exhausted the field");
}

struct InternalReport {
    uint64_t q = 0;
    size_t n = 0;
    size_t dim_lambda = 0;
    size_t dim_lambda0 = 0;
    bool lambda00_linear = false;
    std::optional<size_t> dim_lambda00;
    std::optional<size_t> sigma_codim;
    std::optional<PhiVector> sigma_witness;
    bool lemma_ai_ok = false;
    bool shift_structure_ok = false;
    std::optional<bool> det_constant_ok;  // computed for n >= 3
    std::optional<bool> pen_ok;           // computed for small n (walk enumeration)
    std::optional<size_t> pen_fiber;
    bool odd_cycle = false;
    std::optional<bool> nu_span_stable;   // walk bound 2n vs 2n+2, reported not asserted
    std::vector<Fq> y_plus_z_constants;
};

inline InternalReport analyze(const LabeledGraph& g, uint64_t seed = 0x5eedu,
                              size_t samples = 40) {
    if (!is_connected(g)) throw DisconnectedInput("analysis runs on connected graphs");
    const FieldSpec* f = g.field();
    size_t n = g.size();
    InternalReport rep;
    rep.q = f->q();
    rep.n = n;

    Subspace lam = big_lambda(g, g).big;
    Subspace l0 = lambda0_basis(g);
    rep.dim_lambda = lam.dim();
    rep.dim_lambda0 = l0.dim();
    rep.odd_cycle = has_odd_cycle(g);

    rep.lemma_ai_ok = check_lemma_ai(g, samples, seed);
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    for (size_t k = 0; k < samples; ++k) {
        Vec v = detail::random_member(lam, rng);
        Vec yz = detail::y_plus_z(v);
        if (detail::constant_vector(yz)) rep.y_plus_z_constants.push_back(yz[0]);
    }

    // Shift structure: the full space is the Y+Z = 0 class plus the line
    // through the unit witness, and each sampled element lands in the coset
    // its Y+Z constant dictates.
    bool shift = lam.dim() == l0.dim() + 1;
    PhiVector id_phi(zeros(f, n), ones(f, n), ones(f, n), zeros(f, n));
    shift = shift && lam.contains(id_phi.to_flat());
    Fq half = f->from_int(2).inv();
    for (size_t k = 0; k < samples && shift; ++k) {
        Vec v = detail::random_member(lam, rng);
        Vec yz = detail::y_plus_z(v);
        if (!detail::constant_vector(yz)) {
            shift = false;
            break;
        }
        Fq a = yz[0] * half;
        for (size_t i = 0; i < n; ++i) {
            v[n + i] -= a;
            v[2 * n + i] -= a;
        }
        shift = l0.contains(v);
    }
    rep.shift_structure_ok = shift;

    if (n >= 3) rep.det_constant_ok = check_det_constant(g, samples, seed ^ 0xd5u);

    SigmaSample sig = sigma_sample(g);
    rep.sigma_witness = sig.witness;
    rep.lambda00_linear = sig.lambda00_linear;
    if (sig.directions) rep.dim_lambda00 = sig.directions->dim();
    rep.sigma_codim = sig.codim_in_lambda;

    if (n <= 6) {
        rep.pen_ok = check_theorem_pen(g);
        rep.pen_fiber = pen_fiber_dim(g);
    }
    if (n <= 5)
        rep.nu_span_stable =
            subspace_equal(nu_space_bruteforce(g, 2 * n), nu_space_bruteforce(g, 2 * n + 2));
    return rep;
}

}  // namespace localeq
