#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace localeq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero field element") {}
};

class MismatchedField : public Error {
public:
    MismatchedField() : Error("operands belong to different fields") {}
};

class InvalidFieldSpec : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % sp == 0) return n == sp;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

inline uint64_t invmod_u64(uint64_t a, uint64_t p) {
    // Extended Euclid; p prime, 0 < a < p.
    int64_t t = 0, new_t = 1;
    int64_t r = static_cast<int64_t>(p), new_r = static_cast<int64_t>(a);
    while (new_r != 0) {
        int64_t quot = r / new_r;
        int64_t tmp = t - quot * new_t;
        t = new_t; new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r; new_r = tmp;
    }
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

using Poly = std::vector<uint64_t>;  // coefficients mod p, constant term first

inline int poly_deg(const Poly& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

inline Poly poly_mod(Poly a, const Poly& f, uint64_t p) {
    int df = poly_deg(f);
    uint64_t lead_inv = invmod_u64(f[static_cast<size_t>(df)], p);
    for (int i = poly_deg(a); i >= df; --i) {
        uint64_t c = a[static_cast<size_t>(i)];
        if (c == 0) continue;
        uint64_t factor = mulmod_u64(c, lead_inv, p);
        for (int j = 0; j <= df; ++j) {
            uint64_t sub = mulmod_u64(factor, f[static_cast<size_t>(j)], p);
            uint64_t& tgt = a[static_cast<size_t>(i - df + j)];
            tgt = (tgt + p - sub) % p;
        }
    }
    a.resize(static_cast<size_t>(df));
    return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
    Poly out(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            out[i + j] = (out[i + j] + mulmod_u64(a[i], b[j], p)) % p;
        }
    }
    return poly_mod(std::move(out), f, p);
}

inline Poly poly_powmod(Poly base, uint64_t exp, const Poly& f, uint64_t p) {
    Poly r{1};
    base = poly_mod(std::move(base), f, p);
    while (exp) {
        if (exp & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        exp >>= 1;
    }
    return r;
}

inline Poly poly_gcd(Poly a, Poly b, uint64_t p) {
    while (poly_deg(b) >= 0) {
        Poly r = poly_mod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// f has a root in Z_p iff gcd(x^p - x, f) is non-constant.  For deg <= 3
// rootlessness is exactly irreducibility.
inline bool is_irreducible_small_deg(const Poly& f, uint64_t p) {
    int d = poly_deg(f);
    if (d < 2 || d > 3) return false;
    Poly xp = poly_powmod(Poly{0, 1}, p, f, p);  // x^p mod f
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = (xp[1] + p - 1) % p;                 // x^p - x
    Poly g = poly_gcd(f, xp, p);
    return poly_deg(g) <= 0;
}

}  // namespace detail

class Fq;

// Interned description of F_q, q = p^k with p an odd prime and k in {1,2,3}.
// Elements of extensions are polynomials modulo a monic irreducible of degree
// k, stored constant term first.  Bounds: p < 2^31 for k in {1,2}; p < 2^21
// for k = 3 (so q fits in 63 bits).
class FieldSpec {
public:
    static constexpr int kMaxDegree = 3;

    uint64_t p() const { return p_; }
    int k() const { return k_; }
    uint64_t q() const { return q_; }
    const std::vector<uint64_t>& modulus() const { return modulus_; }

    static const FieldSpec* prime(uint64_t p) { return intern(p, 1, {}); }

    static const FieldSpec* extension(uint64_t p, int k, std::vector<uint64_t> modulus) {
        return intern(p, k, std::move(modulus));
    }

    // Field of the given order, resolving built-in moduli for q in
    // {9, 25, 27, 49} and primes directly.
    static const FieldSpec* of_order(uint64_t q) {
        switch (q) {
            case 9:  return extension(3, 2, {1, 0, 1});     // x^2 + 1
            case 25: return extension(5, 2, {2, 0, 1});     // x^2 + 2
            case 27: return extension(3, 3, {1, 2, 0, 1});  // x^3 + 2x + 1
            case 49: return extension(7, 2, {1, 0, 1});     // x^2 + 1
            default: break;
        }
        if (detail::is_prime_u64(q)) return prime(q);
        throw InvalidFieldSpec("no built-in modulus for order " + std::to_string(q) +
                               "; supply an explicit modulus");
    }

    inline Fq zero() const;
    inline Fq one() const;
    inline Fq from_int(int64_t v) const;
    inline Fq element(const std::vector<uint64_t>& coeffs) const;
    inline Fq from_index(uint64_t idx) const;
    inline uint64_t index_of(const Fq& a) const;
    inline std::vector<Fq> enumerate() const;

    std::string describe() const {
        std::ostringstream os;
        os << "F_" << q_;
        if (k_ > 1) {
            os << " = F_" << p_ << "[x]/(";
            bool first = true;
            for (int i = k_; i >= 0; --i) {
                uint64_t c = modulus_[static_cast<size_t>(i)];
                if (c == 0) continue;
                if (!first) os << " + ";
                first = false;
                if (i == 0 || c != 1) os << c;
                if (i >= 1) os << (c != 1 ? "*x" : "x");
                if (i >= 2) os << "^" << i;
            }
            os << ")";
        }
        return os.str();
    }

private:
    FieldSpec(uint64_t p, int k, std::vector<uint64_t> modulus)
        : p_(p), k_(k), modulus_(std::move(modulus)) {
        if (p_ < 3 || !detail::is_prime_u64(p_))
            throw InvalidFieldSpec("characteristic must be an odd prime, got " + std::to_string(p_));
        if (k_ < 1 || k_ > kMaxDegree)
            throw InvalidFieldSpec("extension degree must be 1, 2 or 3");
        uint64_t p_bound = (k_ == 3) ? (1ull << 21) : (1ull << 31);
        if (p_ >= p_bound)
            throw InvalidFieldSpec("characteristic too large for degree " + std::to_string(k_));
        if (k_ == 1) {
            if (!modulus_.empty())
                throw InvalidFieldSpec("prime fields take no modulus");
        } else {
            if (modulus_.size() != static_cast<size_t>(k_) + 1)
                throw InvalidFieldSpec("modulus must list k+1 coefficients, constant term first");
            for (uint64_t c : modulus_)
                if (c >= p_) throw InvalidFieldSpec("modulus coefficient out of range [0, p)");
            if (modulus_.back() != 1)
                throw InvalidFieldSpec("modulus must be monic");
            if (!detail::is_irreducible_small_deg(modulus_, p_))
                throw InvalidFieldSpec("modulus is reducible over the prime field");
        }
        q_ = 1;
        for (int i = 0; i < k_; ++i) q_ *= p_;
    }

    static const FieldSpec* intern(uint64_t p, int k, std::vector<uint64_t> modulus) {
        using Key = std::tuple<uint64_t, int, std::vector<uint64_t>>;
        static std::mutex mu;
        static std::map<Key, std::unique_ptr<FieldSpec>> registry;
        Key key{p, k, modulus};
        std::lock_guard<std::mutex> lock(mu);
        auto it = registry.find(key);
        if (it == registry.end()) {
            auto spec = std::unique_ptr<FieldSpec>(new FieldSpec(p, k, std::move(modulus)));
            it = registry.emplace(std::move(key), std::move(spec)).first;
        }
        return it->second.get();
    }

    uint64_t p_;
    int k_;
    uint64_t q_;
    std::vector<uint64_t> modulus_;
};

// Field element: k coefficients in [0, p), constant term first, plus the
// interned spec.  Default-constructed elements are placeholders; arithmetic
// on them throws.
class Fq {
public:
    Fq() = default;

    const FieldSpec* spec() const { return spec_; }

    bool is_zero() const {
        return c_[0] == 0 && c_[1] == 0 && c_[2] == 0;
    }

    uint64_t coeff(int i) const { return c_[static_cast<size_t>(i)]; }

    Fq operator+(const Fq& o) const {
        check(o);
        Fq r(spec_);
        uint64_t p = spec_->p();
        for (int i = 0; i < spec_->k(); ++i) {
            uint64_t s = c_[static_cast<size_t>(i)] + o.c_[static_cast<size_t>(i)];
            r.c_[static_cast<size_t>(i)] = s >= p ? s - p : s;
        }
        return r;
    }

    Fq operator-(const Fq& o) const {
        check(o);
        Fq r(spec_);
        uint64_t p = spec_->p();
        for (int i = 0; i < spec_->k(); ++i) {
            uint64_t a = c_[static_cast<size_t>(i)], b = o.c_[static_cast<size_t>(i)];
            r.c_[static_cast<size_t>(i)] = a >= b ? a - b : a + p - b;
        }
        return r;
    }

    Fq operator-() const {
        require_spec();
        Fq r(spec_);
        uint64_t p = spec_->p();
        for (int i = 0; i < spec_->k(); ++i) {
            uint64_t a = c_[static_cast<size_t>(i)];
            r.c_[static_cast<size_t>(i)] = a == 0 ? 0 : p - a;
        }
        return r;
    }

    Fq operator*(const Fq& o) const {
        check(o);
        uint64_t p = spec_->p();
        if (spec_->k() == 1) {
            Fq r(spec_);
            r.c_[0] = detail::mulmod_u64(c_[0], o.c_[0], p);
            return r;
        }
        return mul_ext(o);
    }

    Fq& operator+=(const Fq& o) { return *this = *this + o; }
    Fq& operator-=(const Fq& o) { return *this = *this - o; }
    Fq& operator*=(const Fq& o) { return *this = *this * o; }

    Fq inv() const {
        require_spec();
        if (is_zero()) throw DivisionByZero();
        uint64_t p = spec_->p();
        if (spec_->k() == 1) {
            Fq r(spec_);
            r.c_[0] = detail::invmod_u64(c_[0], p);
            return r;
        }
        detail::Poly a(c_.begin(), c_.begin() + spec_->k());
        detail::Poly f = spec_->modulus();
        detail::Poly inv = poly_inv(a, f, p);
        Fq r(spec_);
        for (size_t i = 0; i < inv.size() && i < 3; ++i) r.c_[i] = inv[i];
        return r;
    }

    Fq pow(uint64_t e) const {
        require_spec();
        Fq acc(spec_);
        acc.c_[0] = 1;
        Fq base = *this;
        while (e) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const Fq& o) const {
        return spec_ == o.spec_ && c_ == o.c_;
    }
    bool operator!=(const Fq& o) const { return !(*this == o); }

    friend std::ostream& operator<<(std::ostream& os, const Fq& a) {
        if (!a.spec_) return os << "<null>";
        if (a.spec_->k() == 1) return os << a.c_[0];
        os << "[";
        for (int i = 0; i < a.spec_->k(); ++i) {
            if (i) os << ",";
            os << a.c_[static_cast<size_t>(i)];
        }
        return os << "]";
    }

private:
    friend class FieldSpec;

    explicit Fq(const FieldSpec* spec) : spec_(spec), c_{0, 0, 0} {}

    void require_spec() const {
        if (!spec_) throw MismatchedField();
    }

    void check(const Fq& o) const {
        if (!spec_ || spec_ != o.spec_) throw MismatchedField();
    }

    Fq mul_ext(const Fq& o) const {
        uint64_t p = spec_->p();
        int k = spec_->k();
        uint64_t tmp[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < k; ++i) {
            if (c_[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < k; ++j) {
                tmp[i + j] = (tmp[i + j] +
                              detail::mulmod_u64(c_[static_cast<size_t>(i)],
                                                 o.c_[static_cast<size_t>(j)], p)) % p;
            }
        }
        const auto& f = spec_->modulus();
        for (int d = 2 * k - 2; d >= k; --d) {
            uint64_t c = tmp[d];
            if (c == 0) continue;
            tmp[d] = 0;
            for (int i = 0; i < k; ++i) {
                uint64_t sub = detail::mulmod_u64(f[static_cast<size_t>(i)], c, p);
                tmp[d - k + i] = (tmp[d - k + i] + p - sub) % p;
            }
        }
        Fq r(spec_);
        for (int i = 0; i < k; ++i) r.c_[static_cast<size_t>(i)] = tmp[i];
        return r;
    }

    static detail::Poly poly_inv(const detail::Poly& a, const detail::Poly& f, uint64_t p) {
        // Extended Euclid over Z_p[x]: maintain r, new_r and Bezout coefficients.
        detail::Poly r = f, new_r = a;
        detail::Poly t{0}, new_t{1};
        while (detail::poly_deg(new_r) >= 0) {
            int dr = detail::poly_deg(r), dn = detail::poly_deg(new_r);
            if (dr < dn) {
                std::swap(r, new_r);
                std::swap(t, new_t);
                continue;
            }
            // r -= (lead(r)/lead(new_r)) * x^(dr-dn) * new_r, same for t.
            uint64_t factor = detail::mulmod_u64(
                r[static_cast<size_t>(dr)],
                detail::invmod_u64(new_r[static_cast<size_t>(dn)], p), p);
            int shift = dr - dn;
            auto axpy = [&](detail::Poly& dst, const detail::Poly& src) {
                size_t need = src.size() + static_cast<size_t>(shift);
                if (dst.size() < need) dst.resize(need, 0);
                for (size_t i = 0; i < src.size(); ++i) {
                    uint64_t sub = detail::mulmod_u64(factor, src[i], p);
                    uint64_t& tgt = dst[i + static_cast<size_t>(shift)];
                    tgt = (tgt + p - sub) % p;
                }
            };
            axpy(r, new_r);
            axpy(t, new_t);
            if (detail::poly_deg(r) < detail::poly_deg(new_r)) {
                std::swap(r, new_r);
                std::swap(t, new_t);
            }
        }
        // r is now a nonzero constant gcd; scale t by its inverse.
        uint64_t scale = detail::invmod_u64(r[0], p);
        for (auto& c : t) c = detail::mulmod_u64(c, scale, p);
        t.resize(f.size() - 1, 0);
        return t;
    }

    const FieldSpec* spec_ = nullptr;
    std::array<uint64_t, 3> c_{0, 0, 0};
};

inline Fq FieldSpec::zero() const { return Fq(this); }

inline Fq FieldSpec::one() const {
    Fq r(this);
    r.c_[0] = 1;
    return r;
}

inline Fq FieldSpec::from_int(int64_t v) const {
    int64_t m = static_cast<int64_t>(p_);
    int64_t red = v % m;
    if (red < 0) red += m;
    Fq r(this);
    r.c_[0] = static_cast<uint64_t>(red);
    return r;
}

inline Fq FieldSpec::element(const std::vector<uint64_t>& coeffs) const {
    if (coeffs.size() > static_cast<size_t>(k_))
        throw InvalidFieldSpec("too many coefficients for degree-" + std::to_string(k_) + " field");
    Fq r(this);
    for (size_t i = 0; i < coeffs.size(); ++i) r.c_[i] = coeffs[i] % p_;
    return r;
}

// Canonical order: index ((c0*p)+c1)*p+c2..., i.e. lexicographic with the
// constant coefficient most significant.  For prime fields this is numeric
// order 0..p-1.
inline Fq FieldSpec::from_index(uint64_t idx) const {
    if (idx >= q_) throw InvalidFieldSpec("element index out of range");
    Fq r(this);
    for (int i = k_ - 1; i >= 0; --i) {
        r.c_[static_cast<size_t>(i)] = idx % p_;
        idx /= p_;
    }
    return r;
}

inline uint64_t FieldSpec::index_of(const Fq& a) const {
    if (a.spec() != this) throw MismatchedField();
    uint64_t idx = 0;
    for (int i = 0; i < k_; ++i) idx = idx * p_ + a.c_[static_cast<size_t>(i)];
    return idx;
}

inline std::vector<Fq> FieldSpec::enumerate() const {
    std::vector<Fq> out;
    out.reserve(q_);
    for (uint64_t i = 0; i < q_; ++i) out.push_back(from_index(i));
    return out;
}

inline bool is_square(const Fq& a) {
    if (a.is_zero()) return true;
    return a.pow((a.spec()->q() - 1) / 2) == a.spec()->one();
}

}  // namespace localeq
