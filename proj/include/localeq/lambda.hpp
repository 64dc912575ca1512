#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "localeq/field.hpp"
#include "localeq/graph.hpp"
#include "localeq/symplectic.hpp"

namespace localeq {

// Point of F_q^{4n} in block form (X, Y, Z, T); flat layout [X|Y|Z|T].
struct PhiVector {
    Vec X, Y, Z, T;

    PhiVector() = default;
    PhiVector(Vec x, Vec y, Vec z, Vec t)
        : X(std::move(x)), Y(std::move(y)), Z(std::move(z)), T(std::move(t)) {
        if (Y.size() != X.size() || Z.size() != X.size() || T.size() != X.size())
            throw DimensionMismatch("phi blocks of unequal length");
    }

    size_t size() const { return X.size(); }

    static PhiVector from_flat(const Vec& v) {
        if (v.size() % 4 != 0) throw DimensionMismatch("flat phi length not divisible by 4");
        size_t n = v.size() / 4;
        auto block = [&](size_t b) {
            return Vec(v.begin() + static_cast<long>(b * n),
                       v.begin() + static_cast<long>((b + 1) * n));
        };
        return PhiVector(block(0), block(1), block(2), block(3));
    }

    Vec to_flat() const {
        Vec v;
        v.reserve(4 * size());
        for (const Vec* b : {&X, &Y, &Z, &T}) v.insert(v.end(), b->begin(), b->end());
        return v;
    }

    PhiVector operator+(const PhiVector& o) const {
        if (o.size() != size()) throw DimensionMismatch("phi size mismatch");
        PhiVector r = *this;
        for (size_t i = 0; i < size(); ++i) {
            r.X[i] += o.X[i];
            r.Y[i] += o.Y[i];
            r.Z[i] += o.Z[i];
            r.T[i] += o.T[i];
        }
        return r;
    }

    PhiVector scaled(const Fq& c) const {
        PhiVector r = *this;
        for (size_t i = 0; i < size(); ++i) {
            r.X[i] *= c;
            r.Y[i] *= c;
            r.Z[i] *= c;
            r.T[i] *= c;
        }
        return r;
    }

    bool operator==(const PhiVector& o) const {
        return X == o.X && Y == o.Y && Z == o.Z && T == o.T;
    }
    bool operator!=(const PhiVector& o) const { return !(*this == o); }
};

// (g(i)×h(j), g(i)×e_j, e_i×h(j), e_i×e_j), flattened.
inline Vec lambda_ij(const LabeledGraph& g, const LabeledGraph& h, size_t i, size_t j) {
    if (g.size() != h.size() || g.field() != h.field())
        throw DimensionMismatch("graph pair mismatch");
    size_t n = g.size();
    if (i >= n || j >= n) throw IndexError("vertex index out of range");
    const FieldSpec* f = g.field();
    Vec gi = g.neighborhood(i), hj = h.neighborhood(j);
    Vec v = zeros(f, 4 * n);
    for (size_t c = 0; c < n; ++c) v[c] = gi[c] * hj[c];
    v[n + j] = gi[j];
    v[2 * n + i] = hj[i];
    v[3 * n + i] = (i == j) ? f->one() : f->zero();
    return v;
}

// X·X' − Y·Y' + Z·Z' − T·T'.
inline Fq signed_form(const PhiVector& a, const PhiVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("phi size mismatch");
    return dot(a.X, b.X) - dot(a.Y, b.Y) + dot(a.Z, b.Z) - dot(a.T, b.T);
}

// Componentwise y_i z_i − x_i t_i.
inline Vec det_phi(const PhiVector& phi) {
    Vec d = phi.Y;
    for (size_t i = 0; i < phi.size(); ++i) d[i] = phi.Y[i] * phi.Z[i] - phi.X[i] * phi.T[i];
    return d;
}

// 2Y×Y' + X×T' + X'×T.  Equals detφ + detφ' − det(φ+φ') when Z = −Y on both
// arguments; evaluated verbatim otherwise.
inline Vec psi(const PhiVector& a, const PhiVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("phi size mismatch");
    Vec out = a.Y;
    const Fq two = a.size() ? a.Y[0].spec()->from_int(2) : Fq{};
    for (size_t i = 0; i < a.size(); ++i)
        out[i] = two * a.Y[i] * b.Y[i] + a.X[i] * b.T[i] + b.X[i] * a.T[i];
    return out;
}

inline PhiVector phi_superscript(const PhiVector& phi, int l) {
    if (l == 1) {
        PhiVector r = phi;
        for (size_t i = 0; i < phi.size(); ++i) {
            r.X[i] = -phi.Z[i];
            r.Y[i] = -phi.T[i];
            r.Z[i] = -phi.X[i];
            r.T[i] = -phi.Y[i];
        }
        return r;
    }
    if (l == 2) return PhiVector(phi.Y, phi.X, phi.T, phi.Z);
    throw InvalidOperator("superscript index must be 1 or 2");
}

inline PhiVector cwise_phi(const PhiVector& a, const PhiVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("phi size mismatch");
    return PhiVector(cwise(a.X, b.X), cwise(a.Y, b.Y), cwise(a.Z, b.Z), cwise(a.T, b.T));
}

// φ − a·(φ^l × α), componentwise across all four blocks.
inline PhiVector star_transform(const PhiVector& phi, int l, const Fq& a, const PhiVector& alpha) {
    return phi + cwise_phi(phi_superscript(phi, l), alpha).scaled(-a);
}

// All-ones vector with entry i replaced by b.
inline Vec f_vec(const Fq& b, size_t i, size_t n) {
    if (b.is_zero()) throw InvalidOperator("f_vec scale must be nonzero");
    Vec v = ones(b.spec(), n);
    if (i >= n) throw IndexError("vertex index out of range");
    v[i] = b;
    return v;
}

// The lambda constraint system of a graph pair: λ(G,H) spanned by the
// lambda_ij rows and its complement Λ(G,H) under the signed form.
struct LambdaSystem {
    LabeledGraph g;
    LabeledGraph h;
    Subspace small;  // λ(G,H)
    Subspace big;    // Λ(G,H) = λ(G,H)^⊥
};

inline LambdaSystem big_lambda(const LabeledGraph& g, const LabeledGraph& h) {
    if (g.size() != h.size() || g.field() != h.field())
        throw DimensionMismatch("graph pair mismatch");
    size_t n = g.size();
    if (n < 1) throw DimensionMismatch("graphs must have at least one vertex");
    const FieldSpec* f = g.field();
    Subspace small(f, 4 * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) small.insert(lambda_ij(g, h, i, j));
    // The sign adjustment is a diagonal bijection, so adjusting the echelon
    // basis of λ spans the adjusted row space.
    std::vector<Vec> adjusted;
    adjusted.reserve(small.dim());
    for (const Vec& r : small.basis()) adjusted.push_back(form_adjusted_row(Form::Signed, r));
    Subspace big = nullspace(f, 4 * n, adjusted);
    return LambdaSystem{g, h, std::move(small), std::move(big)};
}

namespace detail {

inline Subspace map_subspace(const Subspace& s, const std::function<PhiVector(const PhiVector&)>& fn) {
    Subspace out(s.field(), s.ambient());
    for (const Vec& r : s.basis()) out.insert(fn(PhiVector::from_flat(r)).to_flat());
    return out;
}

}  // namespace detail

// Λ(G*_a i, H) as the star-transform image of Λ(G,H).
inline Subspace star_image_left(const Subspace& big, const LabeledGraph& g, size_t i, const Fq& a) {
    Vec gi = g.neighborhood(i);
    Vec gi2 = cwise(gi, gi);
    PhiVector alpha(unit(g.field(), g.size(), i), unit(g.field(), g.size(), i), gi2, gi2);
    return detail::map_subspace(big, [&](const PhiVector& phi) {
        return star_transform(phi, 1, a, alpha);
    });
}

// Λ(G, H*_a i) as the star-transform image of Λ(G,H).
inline Subspace star_image_right(const Subspace& big, const LabeledGraph& h, size_t i, const Fq& a) {
    Vec hi = h.neighborhood(i);
    Vec hi2 = cwise(hi, hi);
    PhiVector alpha(unit(h.field(), h.size(), i), hi2, unit(h.field(), h.size(), i), hi2);
    return detail::map_subspace(big, [&](const PhiVector& phi) {
        return star_transform(phi, 2, a, alpha);
    });
}

// Λ(G∘_b i, H) as the componentwise-scaling image of Λ(G,H).
inline Subspace circ_image_left(const Subspace& big, size_t i, const Fq& b) {
    size_t n = big.ambient() / 4;
    Vec fb = f_vec(b, i, n), fbi = f_vec(b.inv(), i, n);
    PhiVector scales(fbi, fbi, fb, fb);
    return detail::map_subspace(big, [&](const PhiVector& phi) {
        return cwise_phi(phi, scales);
    });
}

// Λ(G, H∘_b i) as the componentwise-scaling image of Λ(G,H).
inline Subspace circ_image_right(const Subspace& big, size_t i, const Fq& b) {
    size_t n = big.ambient() / 4;
    Vec fb = f_vec(b, i, n), fbi = f_vec(b.inv(), i, n);
    PhiVector scales(fbi, fb, fbi, fb);
    return detail::map_subspace(big, [&](const PhiVector& phi) {
        return cwise_phi(phi, scales);
    });
}

}  // namespace localeq
