#pragma once

#include <string>
#include <vector>

#include "localeq/decide.hpp"
#include "localeq/field.hpp"
#include "localeq/graph.hpp"
#include "localeq/lambda.hpp"
#include "localeq/symplectic.hpp"

namespace localeq {

class InvalidWitness : public Error {
public:
    using Error::Error;
};

inline NormalMatrix normal_from_phi(const PhiVector& phi) {
    return NormalMatrix(phi.X, phi.Y, phi.Z, phi.T);  // ctor enforces det = I
}

namespace detail {

using Mat = std::vector<Vec>;

inline Mat mat_identity(const FieldSpec* f, size_t n) {
    Mat m(n, zeros(f, n));
    for (size_t i = 0; i < n; ++i) m[i][i] = f->one();
    return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
    size_t n = a.size();
    const FieldSpec* f = a[0][0].spec();
    Mat out(n, zeros(f, n));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

// Gauss-Jordan inverse; throws InternalInvariantViolation on singular input
// because callers only reach this with matrices the theory makes invertible.
inline Mat mat_inv(const Mat& m) {
    size_t n = m.size();
    const FieldSpec* f = m[0][0].spec();
    Mat a = m, inv = mat_identity(f, n);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw InternalInvariantViolation("singular matrix in extraction");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Fq scale = a[col][col].inv();
        for (size_t j = 0; j < n; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Fq factor = a[r][col];
            for (size_t j = 0; j < n; ++j) {
                a[r][j] -= factor * a[col][j];
                inv[r][j] -= factor * inv[col][j];
            }
        }
    }
    return inv;
}

struct ExtractionState {
    LabeledGraph g_cur;
    // Per-vertex factor diagonals of the pending normal matrix.
    Vec x, y, z, t;

    bool trivial_at(size_t i) const {
        return z[i] == z[i].spec()->one() && x[i].is_zero();
    }
    size_t nontrivial_count() const {
        size_t c = 0;
        for (size_t i = 0; i < x.size(); ++i)
            if (!trivial_at(i)) ++c;
        return c;
    }
    NormalMatrix pending() const { return NormalMatrix(x, y, z, t); }
};

// (M | D) = (I | G) * product of the per-vertex factors at S (identity
// elsewhere): M = Z_S + G X_S and D = T_S + G Y_S columnwise.
inline void target_blocks(const ExtractionState& st, const std::vector<size_t>& s,
                          Mat& m_out, Mat& d_out) {
    const FieldSpec* f = st.g_cur.field();
    size_t n = st.x.size();
    m_out = mat_identity(f, n);
    d_out = Mat(n, zeros(f, n));
    for (size_t j = 0; j < n; ++j)
        for (size_t k = 0; k < n; ++k) d_out[j][k] = st.g_cur.at(j, k);
    for (size_t k : s) {
        for (size_t j = 0; j < n; ++j) {
            Fq gjk = st.g_cur.at(j, k);
            m_out[j][k] = (j == k ? st.z[k] : gjk * st.x[k]);
            d_out[j][k] = (j == k ? st.t[k] : gjk * st.y[k]);
        }
    }
}

// Resolves one iteration's target graph: G_next from D' = M^{-1} D, plus the
// diagonal entries d_j absorbed into the remaining factors.
inline LabeledGraph resolve_target(const ExtractionState& st, const std::vector<size_t>& s,
                                   Vec& diag_out) {
    Mat m, d;
    target_blocks(st, s, m, d);
    Mat dp = mat_mul(mat_inv(m), d);
    size_t n = st.x.size();
    const FieldSpec* f = st.g_cur.field();
    LabeledGraph next(f, n);
    diag_out = zeros(f, n);
    for (size_t i = 0; i < n; ++i) {
        diag_out[i] = dp[i][i];
        for (size_t j = i + 1; j < n; ++j) {
            if (dp[i][j] != dp[j][i])
                throw InternalInvariantViolation("asymmetric target block in extraction");
            if (!dp[i][j].is_zero()) next.set(i, j, dp[i][j]);
        }
    }
    return next;
}

}  // namespace detail

// Converts a verified witness into an explicit op sequence with
// apply_sequence(G, ops) = H.  Requires a connected G.
inline std::vector<LocalOp> extract_ops(const LabeledGraph& g, const LabeledGraph& h,
                                        const PhiVector& phi) {
    if (!verify_witness(g, h, phi)) throw InvalidWitness("witness fails verification");
    if (!is_connected(g)) throw InvalidWitness("extraction requires a connected graph");
    const FieldSpec* f = g.field();
    size_t n = g.size();
    const Fq one = f->one();

    detail::ExtractionState st{g, phi.X, phi.Y, phi.Z, phi.T};
    std::vector<LocalOp> ops;

    size_t nontrivial = st.nontrivial_count();
    while (nontrivial > 0) {
        // Case split on whether some non-trivial factor has z != 0.
        size_t i0 = n;
        for (size_t i = 0; i < n; ++i)
            if (!st.trivial_at(i) && !st.z[i].is_zero()) {
                i0 = i;
                break;
            }
        std::vector<LocalOp> step;
        std::vector<size_t> s;
        if (i0 < n) {
            // Case (i): a star clearing x, then a rescale by z^{-1}.
            s = {i0};
            Fq a = -(st.z[i0].inv() * st.x[i0]);
            if (!a.is_zero()) step.push_back(LocalOp::star(i0, a));
            Fq b = st.z[i0].inv();
            if (b != one) step.push_back(LocalOp::circ(i0, b));
        } else {
            // Case (ii): every non-trivial factor has z = 0, x != 0.  Route
            // through a neighbor to restore a usable z.
            for (size_t i = 0; i < n; ++i)
                if (!st.trivial_at(i)) {
                    i0 = i;
                    break;
                }
            size_t i1 = n;
            for (size_t i = 0; i < n; ++i) {
                if (i == i0 || st.trivial_at(i)) continue;
                if (!st.g_cur.at(i0, i).is_zero()) {
                    i1 = i;
                    break;
                }
            }
            if (i1 == n)
                throw InternalInvariantViolation("no adjacent non-trivial partner in extraction");
            s = {i0, i1};
            Fq ge = st.g_cur.at(i0, i1);
            Fq b0 = -ge.inv(), b1 = st.x[i0].inv() * ge.inv(), b2 = st.x[i1].inv();
            if (b0 != one) step.push_back(LocalOp::circ(i0, b0));
            step.push_back(LocalOp::star(i0, one));
            step.push_back(LocalOp::star(i1, -one));
            step.push_back(LocalOp::star(i0, one));
            if (b1 != one) step.push_back(LocalOp::circ(i0, b1));
            if (b2 != one) step.push_back(LocalOp::circ(i1, b2));
        }

        Vec diag = zeros(f, n);
        LabeledGraph g_next = detail::resolve_target(st, s, diag);
        if (apply_sequence(st.g_cur, step) != g_next)
            throw InternalInvariantViolation("emitted ops disagree with target graph");

        for (const LocalOp& op : step) ops.push_back(op);
        st.g_cur = g_next;
        // Consumed factors reset to the identity, then every vertex absorbs
        // the diagonal correction (a later iteration cancels the shear it
        // leaves on trivial vertices).  Determinants are preserved:
        // y(z + dx) - x(t + dy) = yz - xt.
        for (size_t i : s) {
            st.x[i] = f->zero();
            st.y[i] = one;
            st.z[i] = one;
            st.t[i] = f->zero();
        }
        for (size_t j = 0; j < n; ++j) {
            st.z[j] += diag[j] * st.x[j];
            st.t[j] += diag[j] * st.y[j];
        }

        if (apply_normal(isotropic_of_graph(st.g_cur), st.pending()) != isotropic_of_graph(h))
            throw InternalInvariantViolation("extraction loop invariant broken");
        size_t now = st.nontrivial_count();
        if (now >= nontrivial)
            throw InternalInvariantViolation("extraction made no progress");
        nontrivial = now;
    }

    for (size_t i = 0; i < n; ++i)
        if (!st.t[i].is_zero())
            throw InternalInvariantViolation("residual shear after extraction");
    if (st.g_cur != h) throw InternalInvariantViolation("extraction terminated off target");
    return ops;
}

// Componentwise extraction: star and circ at a vertex only touch labels inside
// that vertex's component, so remapped per-component sequences compose.
inline std::vector<LocalOp> extract_ops_general(const LabeledGraph& g,
                                                const LabeledGraph& h,
                                                const PhiVector& phi) {
    if (is_connected(g)) return extract_ops(g, h, phi);
    if (!verify_witness(g, h, phi))
        throw InvalidWitness("phi is not a witness for this pair");
    if (components(g) != components(h))
        throw InvalidWitness("component partitions differ");

    std::vector<LocalOp> out;
    for (const std::vector<size_t>& comp : components(g)) {
        LabeledGraph gi = induced_subgraph(g, comp);
        LabeledGraph hi = induced_subgraph(h, comp);
        PhiVector slice(zeros(g.field(), comp.size()), zeros(g.field(), comp.size()),
                        zeros(g.field(), comp.size()), zeros(g.field(), comp.size()));
        for (size_t t = 0; t < comp.size(); ++t) {
            slice.X[t] = phi.X[comp[t]];
            slice.Y[t] = phi.Y[comp[t]];
            slice.Z[t] = phi.Z[comp[t]];
            slice.T[t] = phi.T[comp[t]];
        }
        if (!verify_witness(gi, hi, slice))
            throw InvalidWitness("witness does not restrict to the component of vertex " +
                                 std::to_string(comp.front()));
        for (LocalOp op : extract_ops(gi, hi, slice)) {
            op.v = comp[op.v];
            out.push_back(op);
        }
    }
    if (apply_sequence(g, out) != h)
        throw InternalInvariantViolation("componentwise sequences do not compose");
    return out;
}

}  // namespace localeq
