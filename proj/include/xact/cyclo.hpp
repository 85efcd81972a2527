#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xact/poly.hpp"
#include "xact/rat.hpp"
#include "xact/valuation.hpp"

namespace xact {

/// Element of Q(zeta_{p^N}) times an optional formal half-integer power of p:
///   value = (sum_i c_i * zeta^i) * p^(e/2),   0 <= i < phi(p^N).
/// Coefficients are kept reduced modulo the p^N-th cyclotomic polynomial
/// Phi_{p^N}(x) = sum_{j<p} x^{j p^(N-1)}. p == 0 marks a plain rational
/// (level 0) that adopts the other operand's field on contact.
class Cyclo {
public:
    Cyclo() : c_(1, Rat()) {}

    static Cyclo from_rat(const Rat& r) {
        Cyclo z;
        z.c_[0] = r;
        return z;
    }
    static Cyclo from_int(long long v) { return from_rat(Rat(v)); }

    static Cyclo one() { return from_int(1); }

    /// zeta_{p^N}^a, exponent reduced mod p^N.
    static Cyclo zeta_pow(std::uint32_t p, std::uint32_t level, long long a) {
        check_p(p);
        Cyclo z;
        z.p_ = p;
        z.level_ = level;
        z.c_.assign(phi_pn(p, level), Rat());
        add_monomial(z.c_, p, level, a, Rat(1));
        return z;
    }

    /// The value p^(e/2) (formal square root of p for odd e).
    static Cyclo p_half_power(std::uint32_t p, long long e) {
        check_p(p);
        Cyclo z;
        z.p_ = p;
        z.level_ = 0;
        z.c_.assign(1, Rat(1));
        z.e_ = e;
        return z;
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t level() const { return level_; }
    long long half_pow_p() const { return e_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool is_one() const { return *this == one(); }

    /// True when the value lies in Q (no root of unity, no odd power of sqrt p).
    bool is_rational() const {
        Cyclo z = canonical();
        if (z.is_zero()) return true;
        for (std::size_t i = 1; i < z.c_.size(); ++i)
            if (!z.c_[i].is_zero()) return false;
        return z.e_ % 2 == 0;
    }

    Rat as_rat() const {
        Cyclo z = canonical();
        if (z.is_zero()) return Rat();
        if (!z.is_rational()) throw std::domain_error("Cyclo: value is not rational");
        return z.c_[0];  // canonical() folded the even half-power already
    }

    friend Cyclo operator+(const Cyclo& a, const Cyclo& b) {
        // common case in accumulation loops: identical field and half-power
        if (a.p_ == b.p_ && a.level_ == b.level_ && a.e_ == b.e_) {
            Cyclo r = a;
            for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
            return r;
        }
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        auto [x, y] = aligned(a.canonical(), b.canonical());
        if (x.e_ != y.e_)
            throw std::domain_error("Cyclo: sum mixes integral and sqrt(p) half-powers");
        Cyclo r = x;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += y.c_[i];
        return r;
    }
    friend Cyclo operator-(const Cyclo& a, const Cyclo& b) { return a + (-b); }
    Cyclo operator-() const {
        Cyclo r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
        auto [x, y] = aligned(a, b);
        Cyclo r;
        r.p_ = x.p_;
        r.level_ = x.level_;
        r.e_ = x.e_ + y.e_;
        r.c_.assign(x.c_.size(), Rat());
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j].is_zero()) continue;
                add_monomial(r.c_, r.p_, r.level_, static_cast<long long>(i + j),
                             x.c_[i] * y.c_[j]);
            }
        }
        return r;
    }

    Cyclo& operator+=(const Cyclo& b) {
        // in-place when the representations already align
        if (p_ == b.p_ && level_ == b.level_ && e_ == b.e_) {
            for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += b.c_[i];
            return *this;
        }
        return *this = *this + b;
    }
    Cyclo& operator-=(const Cyclo& b) { return *this = *this - b; }
    Cyclo& operator*=(const Cyclo& b) { return *this = *this * b; }
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
    Cyclo& operator/=(const Cyclo& b) { return *this = *this / b; }

    /// Galois conjugation zeta -> zeta^{-1} (complex conjugation); fixes sqrt p.
    Cyclo conj() const {
        if (p_ == 0 || level_ == 0) return *this;
        Cyclo r;
        r.p_ = p_;
        r.level_ = level_;
        r.e_ = e_;
        r.c_.assign(c_.size(), Rat());
        long long P = pow_ll(p_, level_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            add_monomial(r.c_, p_, level_, (P - static_cast<long long>(i)) % P, c_[i]);
        }
        return r;
    }

    /// z * conj(z): a nonnegative element of the real subfield, equal to 1
    /// exactly when z is unimodular.
    Cyclo abs_sq() const { return *this * conj(); }

    bool is_unimodular() const { return abs_sq() == one(); }

    Cyclo inverse() const {
        Cyclo z = canonical();
        if (z.is_zero()) throw std::domain_error("Cyclo: inverse of zero");
        bool plain = true;
        for (std::size_t i = 1; i < z.c_.size(); ++i)
            if (!z.c_[i].is_zero()) plain = false;
        Cyclo r;
        r.p_ = z.p_;
        r.level_ = z.level_;
        r.e_ = -z.e_;
        if (plain) {
            r.c_.assign(z.c_.size(), Rat());
            r.c_[0] = z.c_[0].inverse();
            return r;
        }
        // invert modulo the cyclotomic polynomial
        Poly<Rat> f = Poly<Rat>::from_coeffs(z.c_, Rat());
        Poly<Rat> phi = cyclotomic_poly(z.p_, z.level_);
        auto [g, u, v] = Poly<Rat>::extended_gcd(f, phi);
        (void)v;
        if (g.degree() != 0) throw std::logic_error("Cyclo: cyclotomic polynomial not coprime");
        Poly<Rat> inv = Poly<Rat>::divmod(u, phi).second;
        r.c_.assign(z.c_.size(), Rat());
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = inv.coeff(i);
        return r;
    }

    friend bool operator==(const Cyclo& a, const Cyclo& b) {
        if (a.is_zero()) return b.is_zero();
        if (b.is_zero()) return false;
        Cyclo x = a.canonical(), y = b.canonical();
        if (x.p_ != 0 && y.p_ != 0 && x.p_ != y.p_) {
            // distinct cyclotomic systems: equal only through Q
            return x.is_rational() && y.is_rational() && x.as_rat() == y.as_rat();
        }
        auto [u, w] = aligned(x, y);
        return u.e_ == w.e_ && u.c_ == w.c_;
    }
    friend bool operator!=(const Cyclo& a, const Cyclo& b) { return !(a == b); }

    /// Folds even powers of p into the coefficients; e becomes 0 or 1.
    Cyclo canonical() const {
        Cyclo z = *this;
        if (z.is_zero()) {
            z.e_ = 0;
            for (auto& c : z.c_) c = Rat();
            return z;
        }
        long long par = ((z.e_ % 2) + 2) % 2;
        long long shift = (z.e_ - par) / 2;
        if (shift != 0) {
            Rat f = Rat(static_cast<long long>(z.p_)).pow(shift);
            for (auto& c : z.c_) c *= f;
            z.e_ = par;
        }
        return z;
    }

    /// Exact detection of +p^L for integer L (used by valuation comparisons).
    /// Returns false if the value is not a plain integral power of p.
    bool as_p_power(std::uint32_t p, long long& exp_out) const {
        Cyclo z = canonical();
        if (z.is_zero() || !z.is_rational()) return false;
        Rat r = z.as_rat();
        if (r.signum() <= 0) return false;
        BigInt num = r.numerator(), den = r.denominator();
        if (num.is_one()) {
            long long v = den.valuation(p);
            if (den != BigInt(static_cast<long long>(p)).pow(v)) return false;
            exp_out = -v;
            return true;
        }
        if (!den.is_one()) return false;
        long long v = num.valuation(p);
        if (num != BigInt(static_cast<long long>(p)).pow(v)) return false;
        exp_out = v;
        return true;
    }

    std::string to_string() const {
        Cyclo z = canonical();
        std::string s = "(";
        bool first = true;
        for (std::size_t i = 0; i < z.c_.size(); ++i) {
            if (z.c_[i].is_zero()) continue;
            if (!first) s += " + ";
            first = false;
            s += z.c_[i].to_string();
            if (i > 0) s += "*z^" + std::to_string(i);
        }
        if (first) s += "0";
        s += ")";
        if (z.e_ != 0) s += "*sqrt(" + std::to_string(z.p_) + ")";
        if (z.p_ != 0 && z.level_ > 0)
            s += " [z=zeta_" + std::to_string(pow_ll(z.p_, z.level_)) + "]";
        return s;
    }

    static std::size_t phi_pn(std::uint32_t p, std::uint32_t level) {
        if (level == 0) return 1;
        std::size_t r = p - 1;
        for (std::uint32_t i = 1; i < level; ++i) r *= p;
        return r;
    }

    static Poly<Rat> cyclotomic_poly(std::uint32_t p, std::uint32_t level) {
        std::vector<Rat> c(phi_pn(p, level) + 1, Rat());
        std::size_t step = 1;
        for (std::uint32_t i = 1; i < level; ++i) step *= p;
        for (std::uint32_t j = 0; j < p; ++j) c[j * step] = Rat(1);
        return Poly<Rat>::from_coeffs(std::move(c), Rat());
    }

private:
    std::uint32_t p_ = 0;      // 0 = plain rational
    std::uint32_t level_ = 0;  // N
    std::vector<Rat> c_;       // size phi(p^N)
    long long e_ = 0;          // half-power exponent

    static void check_p(std::uint32_t p) {
        if (p < 2) throw std::invalid_argument("Cyclo: p must be >= 2");
    }

    static long long pow_ll(std::uint32_t p, std::uint32_t e) {
        long long r = 1;
        for (std::uint32_t i = 0; i < e; ++i) r *= p;
        return r;
    }

    /// Adds coeff * zeta^k into acc, reducing into the power basis.
    static void add_monomial(std::vector<Rat>& acc, std::uint32_t p, std::uint32_t level,
                             long long k, const Rat& coeff) {
        if (level == 0) {
            acc[0] += coeff;  // zeta = 1
            return;
        }
        long long P = pow_ll(p, level);
        k %= P;
        if (k < 0) k += P;
        long long phi = static_cast<long long>(phi_pn(p, level));
        if (k < phi) {
            acc[static_cast<std::size_t>(k)] += coeff;
            return;
        }
        // zeta^((p-1)p^(N-1) + r) = -sum_{j<p-1} zeta^(j p^(N-1) + r)
        long long step = P / p;  // p^(N-1)
        long long r = k - (static_cast<long long>(p) - 1) * step;
        for (std::uint32_t j = 0; j + 1 < p; ++j)
            acc[static_cast<std::size_t>(j * step + r)] -= coeff;
    }

    Cyclo raised(std::uint32_t p, std::uint32_t level) const {
        if (p_ != 0 && p_ != p) throw std::invalid_argument("Cyclo: mixed cyclotomic systems");
        Cyclo r;
        r.p_ = p;
        r.level_ = level;
        r.e_ = e_;
        r.c_.assign(phi_pn(p, level), Rat());
        long long step = 1;
        for (std::uint32_t i = level_; i < level; ++i) step *= p;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) r.c_[static_cast<std::size_t>(i) * step] = c_[i];
        return r;
    }

    static std::pair<Cyclo, Cyclo> aligned(const Cyclo& a, const Cyclo& b) {
        std::uint32_t p = a.p_ != 0 ? a.p_ : b.p_;
        if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
            throw std::invalid_argument("Cyclo: mixed cyclotomic systems");
        std::uint32_t level = a.level_ > b.level_ ? a.level_ : b.level_;
        if (p == 0) return {a, b};
        return {a.raised(p, level), b.raised(p, level)};
    }
};

/// In-place accumulate for matrix kernels: acc += a * b without copying acc.
inline void fused_add_mul(Cyclo& acc, const Cyclo& a, const Cyclo& b) {
    if (a.is_zero() || b.is_zero()) return;
    Cyclo prod = a * b;
    if (acc.is_zero()) {
        acc = std::move(prod);
        return;
    }
    acc += prod;
}

/// The fixed additive character psi(x) = e^{2 pi i {x}_p} with conductor Z_p,
/// valued in roots of unity of order p^N. Errors if the level cannot hold the
/// fractional part of x.
inline Cyclo psi_eval(const Rat& x, std::uint32_t p, std::uint32_t level) {
    if (x.is_zero()) return Cyclo::one();
    long long s = x.denominator().valuation(p);
    if (s == 0) return Cyclo::one();  // x in Z_p
    if (s > static_cast<long long>(level))
        throw std::domain_error("psi_eval: insufficient level for denominator p^" +
                                std::to_string(s));
    BigInt ps = BigInt(static_cast<long long>(p)).pow(static_cast<unsigned long long>(s));
    BigInt bprime = x.denominator() / ps;  // prime to p
    // fractional part of x in Q_p/Z_p: (num * bprime^{-1} mod p^s) / p^s
    BigInt num_mod = x.numerator() % ps;
    // modular inverse of bprime mod p^s by extended Euclid on BigInt
    BigInt t(0), nt(1), r = ps, nr = ((bprime % ps) + ps) % ps;
    while (!nr.is_zero()) {
        BigInt q = r / nr;
        BigInt tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    BigInt inv = ((t % ps) + ps) % ps;
    BigInt a = ((num_mod * inv) % ps + ps) % ps;
    // exponent at level N: a * p^(N-s)
    BigInt expo = a * BigInt(static_cast<long long>(p))
                          .pow(static_cast<unsigned long long>(level - s));
    return Cyclo::zeta_pow(p, level, expo.to_longlong());
}

/// psi at the smallest sufficient level.
inline Cyclo psi_eval_auto(const Rat& x, std::uint32_t p) {
    if (x.is_zero()) return Cyclo::one();
    long long s = x.denominator().valuation(p);
    return psi_eval(x, p, static_cast<std::uint32_t>(s));
}

inline Cyclo cyclo_abs_sq(const Cyclo& z) { return z.abs_sq(); }

inline Cyclo zero_like(const Cyclo&) { return Cyclo(); }
inline Cyclo one_like(const Cyclo&) { return Cyclo::one(); }
inline Cyclo from_int_like(const Cyclo&, long long v) { return Cyclo::from_int(v); }

}  // namespace xact
