#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "localeq/field.hpp"
#include "localeq/graph.hpp"

namespace localeq {

class DetNotOne : public Error {
public:
    using Error::Error;
};

inline Vec zeros(const FieldSpec* f, size_t m) { return Vec(m, f->zero()); }

inline Vec ones(const FieldSpec* f, size_t m) { return Vec(m, f->one()); }

inline Vec unit(const FieldSpec* f, size_t m, size_t i) {
    Vec v(m, f->zero());
    v[i] = f->one();
    return v;
}

inline Fq dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot of unequal lengths");
    if (a.empty()) throw DimensionMismatch("dot of empty vectors");
    Fq acc = a[0].spec()->zero();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero() || b[i].is_zero()) continue;
        acc += a[i] * b[i];
    }
    return acc;
}

inline Vec cwise(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw DimensionMismatch("componentwise product of unequal lengths");
    Vec out(a);
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

// X·Y' − X'·Y on F_q^{2n}, halves (X, X').
inline Fq symplectic_form(const Vec& u, const Vec& v) {
    if (u.size() != v.size() || u.size() % 2 != 0)
        throw DimensionMismatch("symplectic form needs equal even lengths");
    size_t n = u.size() / 2;
    Fq acc = u[0].spec()->zero();
    for (size_t i = 0; i < n; ++i) acc += u[i] * v[n + i] - u[n + i] * v[i];
    return acc;
}

// Subspace of F_q^m held as a reduced row-echelon basis with strictly
// increasing pivots.  Equal subspaces store identical rows.
class Subspace {
public:
    Subspace(const FieldSpec* field, size_t ambient) : field_(field), m_(ambient) {}

    static Subspace from_rows(const FieldSpec* field, size_t ambient,
                              const std::vector<Vec>& rows) {
        Subspace s(field, ambient);
        for (const Vec& r : rows) s.insert(r);
        return s;
    }

    const FieldSpec* field() const { return field_; }
    size_t ambient() const { return m_; }
    size_t dim() const { return rows_.size(); }
    const std::vector<Vec>& basis() const { return rows_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    // Residual of v after eliminating all pivot positions.
    Vec reduce(Vec v) const {
        if (v.size() != m_) throw DimensionMismatch("ambient dimension mismatch");
        for (size_t r = 0; r < rows_.size(); ++r) {
            const Fq c = v[pivots_[r]];
            if (c.is_zero()) continue;
            const Vec& row = rows_[r];
            for (size_t j = pivots_[r]; j < m_; ++j) {
                if (row[j].is_zero()) continue;
                v[j] -= c * row[j];
            }
        }
        return v;
    }

    // Returns true if the row enlarged the span.
    bool insert(Vec v) {
        v = reduce(std::move(v));
        size_t piv = m_;
        for (size_t j = 0; j < m_; ++j) {
            if (!v[j].is_zero()) { piv = j; break; }
        }
        if (piv == m_) return false;
        Fq s = v[piv].inv();
        for (size_t j = piv; j < m_; ++j) v[j] *= s;
        for (Vec& row : rows_) {
            const Fq c = row[piv];
            if (c.is_zero()) continue;
            for (size_t j = piv; j < m_; ++j) {
                if (v[j].is_zero()) continue;
                row[j] -= c * v[j];
            }
        }
        auto pos = std::upper_bound(pivots_.begin(), pivots_.end(), piv);
        size_t idx = static_cast<size_t>(pos - pivots_.begin());
        pivots_.insert(pos, piv);
        rows_.insert(rows_.begin() + static_cast<long>(idx), std::move(v));
        return true;
    }

    bool contains(const Vec& v) const {
        Vec r = reduce(v);
        for (const Fq& c : r)
            if (!c.is_zero()) return false;
        return true;
    }

    bool operator==(const Subspace& o) const {
        return field_ == o.field_ && m_ == o.m_ && rows_ == o.rows_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    const FieldSpec* field_;
    size_t m_;
    std::vector<Vec> rows_;
    std::vector<size_t> pivots_;
};

inline Subspace echelonize(const FieldSpec* field, size_t ambient, const std::vector<Vec>& rows) {
    return Subspace::from_rows(field, ambient, rows);
}

inline bool subspace_equal(const Subspace& a, const Subspace& b) { return a == b; }

// Solution space of M v = 0, rows of M given explicitly.
inline Subspace nullspace(const FieldSpec* field, size_t ambient, const std::vector<Vec>& rows) {
    Subspace reduced = Subspace::from_rows(field, ambient, rows);
    const auto& piv = reduced.pivots();
    std::vector<bool> is_pivot(ambient, false);
    for (size_t p : piv) is_pivot[p] = true;
    Subspace out(field, ambient);
    for (size_t fc = 0; fc < ambient; ++fc) {
        if (is_pivot[fc]) continue;
        Vec v = zeros(field, ambient);
        v[fc] = field->one();
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -reduced.basis()[r][fc];
        out.insert(std::move(v));
    }
    return out;
}

enum class Form { Dot, Symplectic, Signed };

// Row c with dot(c, v) = form(r, v) for all v.
inline Vec form_adjusted_row(Form form, const Vec& r) {
    size_t m = r.size();
    Vec c = r;
    switch (form) {
        case Form::Dot:
            return c;
        case Form::Symplectic: {
            if (m % 2 != 0) throw DimensionMismatch("symplectic form needs even ambient");
            size_t n = m / 2;
            for (size_t i = 0; i < n; ++i) {
                c[i] = -r[n + i];
                c[n + i] = r[i];
            }
            return c;
        }
        case Form::Signed: {
            if (m % 4 != 0) throw DimensionMismatch("signed form needs ambient divisible by 4");
            size_t n = m / 4;
            for (size_t i = 0; i < n; ++i) {
                c[n + i] = -r[n + i];
                c[3 * n + i] = -r[3 * n + i];
            }
            return c;
        }
    }
    throw Error("unreachable");
}

inline Subspace orthogonal_complement(const Subspace& w, Form form) {
    std::vector<Vec> adjusted;
    adjusted.reserve(w.dim());
    for (const Vec& r : w.basis()) adjusted.push_back(form_adjusted_row(form, r));
    return nullspace(w.field(), w.ambient(), adjusted);
}

// Rowspan of (I | G): the isotropic system of the graph.
inline Subspace isotropic_of_graph(const LabeledGraph& g) {
    size_t n = g.size();
    Subspace w(g.field(), 2 * n);
    for (size_t i = 0; i < n; ++i) {
        Vec row = zeros(g.field(), 2 * n);
        row[i] = g.field()->one();
        Vec nb = g.neighborhood(i);
        for (size_t j = 0; j < n; ++j) row[n + j] = nb[j];
        w.insert(std::move(row));
    }
    return w;
}

inline bool is_isotropic(const Subspace& w) {
    if (w.ambient() % 2 != 0) throw DimensionMismatch("isotropy needs even ambient");
    if (w.dim() * 2 != w.ambient()) return false;
    const auto& rows = w.basis();
    for (size_t a = 0; a < rows.size(); ++a)
        for (size_t b = a; b < rows.size(); ++b)
            if (!symplectic_form(rows[a], rows[b]).is_zero()) return false;
    return true;
}

// 2n×2n matrix [[Z,T],[X,Y]] with diagonal blocks; vertex i carries the 2×2
// matrix [[z_i, t_i], [x_i, y_i]] with determinant one.
class NormalMatrix {
public:
    NormalMatrix(Vec x, Vec y, Vec z, Vec t)
        : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), t_(std::move(t)) {
        size_t n = x_.size();
        if (y_.size() != n || z_.size() != n || t_.size() != n)
            throw DimensionMismatch("normal matrix blocks of unequal length");
        for (size_t i = 0; i < n; ++i) {
            Fq det = y_[i] * z_[i] - x_[i] * t_[i];
            if (det != det.spec()->one())
                throw DetNotOne("vertex " + std::to_string(i) + " block determinant is not 1");
        }
    }

    static NormalMatrix identity(const FieldSpec* f, size_t n) {
        return NormalMatrix(zeros(f, n), ones(f, n), ones(f, n), zeros(f, n));
    }

    size_t size() const { return x_.size(); }
    const Vec& x() const { return x_; }
    const Vec& y() const { return y_; }
    const Vec& z() const { return z_; }
    const Vec& t() const { return t_; }

private:
    Vec x_, y_, z_, t_;
};

// Right action on a row of F_q^{2n}: (u_i, w_i) -> (u_i z_i + w_i x_i, u_i t_i + w_i y_i).
inline Vec apply_normal_row(const Vec& row, const NormalMatrix& a) {
    size_t n = a.size();
    if (row.size() != 2 * n) throw DimensionMismatch("row length is not 2n");
    Vec out = row;
    for (size_t i = 0; i < n; ++i) {
        const Fq& u = row[i];
        const Fq& w = row[n + i];
        out[i] = u * a.z()[i] + w * a.x()[i];
        out[n + i] = u * a.t()[i] + w * a.y()[i];
    }
    return out;
}

inline Subspace apply_normal(const Subspace& w, const NormalMatrix& a) {
    if (w.ambient() != 2 * a.size()) throw DimensionMismatch("subspace/matrix size mismatch");
    Subspace out(w.field(), w.ambient());
    for (const Vec& row : w.basis()) out.insert(apply_normal_row(row, a));
    return out;
}

inline NormalMatrix compose(const NormalMatrix& a, const NormalMatrix& b) {
    size_t n = a.size();
    if (b.size() != n) throw DimensionMismatch("normal matrix size mismatch");
    Vec x = a.x(), y = a.y(), z = a.z(), t = a.t();
    for (size_t i = 0; i < n; ++i) {
        Fq za = a.z()[i], ta = a.t()[i], xa = a.x()[i], ya = a.y()[i];
        z[i] = za * b.z()[i] + ta * b.x()[i];
        t[i] = za * b.t()[i] + ta * b.y()[i];
        x[i] = xa * b.z()[i] + ya * b.x()[i];
        y[i] = xa * b.t()[i] + ya * b.y()[i];
    }
    return NormalMatrix(std::move(x), std::move(y), std::move(z), std::move(t));
}

inline NormalMatrix invert(const NormalMatrix& a) {
    size_t n = a.size();
    Vec x = a.x(), y = a.y(), z = a.z(), t = a.t();
    for (size_t i = 0; i < n; ++i) {
        // Per-vertex adjugate of [[z,t],[x,y]].
        z[i] = a.y()[i];
        t[i] = -a.t()[i];
        x[i] = -a.x()[i];
        y[i] = a.z()[i];
    }
    return NormalMatrix(std::move(x), std::move(y), std::move(z), std::move(t));
}

}  // namespace localeq
