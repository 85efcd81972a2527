#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace xact {

namespace gf_detail {

inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on machine ints; p is a small prime
    long long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw std::domain_error("gf: not invertible mod p");
    return static_cast<std::uint32_t>((t % p + p) % p);
}

using PolyP = std::vector<std::uint32_t>;  // dense, little-endian, coeffs in [0,p)

inline void trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline PolyP mul(const PolyP& a, const PolyP& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>(
                (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    trim(r);
    return r;
}

// remainder of a modulo monic divisor d
inline PolyP rem(PolyP a, const PolyP& d, std::uint32_t p) {
    trim(a);
    if (d.empty() || d.back() != 1) throw std::logic_error("gf: divisor must be monic");
    while (a.size() >= d.size()) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - d.size();
        if (lead != 0)
            for (std::size_t i = 0; i < d.size(); ++i) {
                std::uint64_t sub = static_cast<std::uint64_t>(lead) * d[i] % p;
                a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
            }
        a.pop_back();
        trim(a);
    }
    return a;
}

inline bool divides(const PolyP& d, const PolyP& a, std::uint32_t p) {
    // d monic after scaling
    PolyP dm = d;
    trim(dm);
    if (dm.empty()) return false;
    std::uint32_t inv = mod_inverse(dm.back(), p);
    for (auto& c : dm) c = static_cast<std::uint32_t>(static_cast<std::uint64_t>(c) * inv % p);
    return rem(a, dm, p).empty();
}

// all monic polynomials of the given degree, lexicographic in low coefficients
inline std::vector<PolyP> monic_polys(std::uint32_t p, std::uint32_t deg) {
    std::vector<PolyP> out;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        PolyP f(deg + 1, 0);
        std::uint64_t t = idx;
        for (std::uint32_t i = 0; i < deg; ++i) {
            f[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        f[deg] = 1;
        out.push_back(std::move(f));
    }
    return out;
}

inline bool is_irreducible(const PolyP& f, std::uint32_t p) {
    std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= deg; ++d)
        for (const auto& g : monic_polys(p, d))
            if (divides(g, f, p)) return false;
    return true;
}

inline PolyP find_irreducible(std::uint32_t p, std::uint32_t m) {
    if (m == 1) return PolyP{0, 1};
    for (const auto& f : monic_polys(p, m))
        if (is_irreducible(f, p)) return f;
    throw std::logic_error("gf: no irreducible found");  // unreachable
}

}  // namespace gf_detail

/// Shared description of a finite field GF(p^m). Elements compare contexts by
/// value so independently constructed fields of the same shape interoperate.
struct FqCtx {
    std::uint32_t p = 2;
    std::uint32_t m = 1;
    gf_detail::PolyP modulus;  // monic irreducible of degree m (unused when m == 1)

    std::uint64_t q() const {
        std::uint64_t r = 1;
        for (std::uint32_t i = 0; i < m; ++i) r *= p;
        return r;
    }

    bool same(const FqCtx& o) const { return p == o.p && m == o.m && modulus == o.modulus; }

    static std::shared_ptr<const FqCtx> make(std::uint32_t p, std::uint32_t m = 1) {
        if (p < 2) throw std::invalid_argument("FqCtx: p must be a prime >= 2");
        for (std::uint32_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("FqCtx: p is not prime");
        if (m == 0) throw std::invalid_argument("FqCtx: m must be >= 1");
        auto ctx = std::make_shared<FqCtx>();
        ctx->p = p;
        ctx->m = m;
        ctx->modulus = gf_detail::find_irreducible(p, m);
        return ctx;
    }
};

/// Element of GF(p^m); carries its field at runtime, mixed-field arithmetic
/// is an error.
class Ffq {
public:
    Ffq() = default;  // unusable until bound to a field

    Ffq(std::shared_ptr<const FqCtx> ctx, long long v) : ctx_(std::move(ctx)) {
        require_ctx();
        c_.assign(ctx_->m, 0);
        long long r = v % static_cast<long long>(ctx_->p);
        if (r < 0) r += ctx_->p;
        c_[0] = static_cast<std::uint32_t>(r);
    }

    static Ffq from_coeffs(std::shared_ptr<const FqCtx> ctx, std::vector<std::uint32_t> coeffs) {
        Ffq x(std::move(ctx), 0);
        for (std::size_t i = 0; i < coeffs.size() && i < x.c_.size(); ++i)
            x.c_[i] = coeffs[i] % x.ctx_->p;
        return x;
    }

    /// Enumeration order: index = sum c_i p^i over base-p digits.
    static Ffq from_index(std::shared_ptr<const FqCtx> ctx, std::uint64_t idx) {
        Ffq x(std::move(ctx), 0);
        for (std::uint32_t i = 0; i < x.ctx_->m; ++i) {
            x.c_[i] = static_cast<std::uint32_t>(idx % x.ctx_->p);
            idx /= x.ctx_->p;
        }
        return x;
    }

    std::uint64_t index() const {
        require_ctx();
        std::uint64_t idx = 0;
        for (std::size_t i = c_.size(); i-- > 0;) idx = idx * ctx_->p + c_[i];
        return idx;
    }

    const std::shared_ptr<const FqCtx>& ctx() const { return ctx_; }

    bool is_zero() const {
        for (auto c : c_)
            if (c) return false;
        return true;
    }
    bool is_one() const {
        if (c_.empty() || c_[0] != 1) return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i]) return false;
        return true;
    }

    friend Ffq operator+(const Ffq& a, const Ffq& b) {
        a.require_same(b);
        Ffq r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = (r.c_[i] + b.c_[i]) % a.ctx_->p;
        return r;
    }
    friend Ffq operator-(const Ffq& a, const Ffq& b) {
        a.require_same(b);
        Ffq r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = (r.c_[i] + a.ctx_->p - b.c_[i]) % a.ctx_->p;
        return r;
    }
    Ffq operator-() const {
        require_ctx();
        Ffq r = *this;
        for (auto& c : r.c_) c = c ? ctx_->p - c : 0;
        return r;
    }
    friend Ffq operator*(const Ffq& a, const Ffq& b) {
        a.require_same(b);
        auto prod = gf_detail::mul(a.c_, b.c_, a.ctx_->p);
        if (a.ctx_->m > 1) prod = gf_detail::rem(std::move(prod), a.ctx_->modulus, a.ctx_->p);
        Ffq r(a.ctx_, 0);
        for (std::size_t i = 0; i < prod.size(); ++i) r.c_[i] = prod[i];
        return r;
    }
    friend Ffq operator/(const Ffq& a, const Ffq& b) { return a * b.inverse(); }

    Ffq& operator+=(const Ffq& b) { return *this = *this + b; }
    Ffq& operator-=(const Ffq& b) { return *this = *this - b; }
    Ffq& operator*=(const Ffq& b) { return *this = *this * b; }
    Ffq& operator/=(const Ffq& b) { return *this = *this / b; }

    Ffq inverse() const {
        require_ctx();
        if (is_zero()) throw std::domain_error("Ffq: inverse of zero");
        // x^(q-2) — fields here are tiny, exponentiation is simplest
        std::uint64_t e = ctx_->q() - 2;
        Ffq base = *this, r(ctx_, 1);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    friend bool operator==(const Ffq& a, const Ffq& b) {
        a.require_same(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const Ffq& a, const Ffq& b) { return !(a == b); }

    std::string to_string() const {
        require_ctx();
        if (ctx_->m == 1) return std::to_string(c_[0]);
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i)
            s += (i ? "," : "") + std::to_string(c_[i]);
        return s + "]";
    }

private:
    std::shared_ptr<const FqCtx> ctx_;
    std::vector<std::uint32_t> c_;

    void require_ctx() const {
        if (!ctx_) throw std::logic_error("Ffq: value not bound to a field");
    }
    void require_same(const Ffq& o) const {
        require_ctx();
        o.require_ctx();
        if (ctx_.get() != o.ctx_.get() && !ctx_->same(*o.ctx_))
            throw std::invalid_argument("Ffq: mixed-modulus arithmetic");
    }
};

inline Ffq zero_like(const Ffq& x) { return Ffq(x.ctx(), 0); }
inline Ffq one_like(const Ffq& x) { return Ffq(x.ctx(), 1); }
inline Ffq from_int_like(const Ffq& x, long long v) { return Ffq(x.ctx(), v); }

}  // namespace xact
