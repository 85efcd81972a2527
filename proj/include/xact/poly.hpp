#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xact {

/// Dense univariate polynomial over a field scalar K. Keeps an exemplar
/// element around so coefficients of the right field can be minted even for
/// runtime-parameterized scalars.
template <class K>
class Poly {
public:
    explicit Poly(const K& exemplar) : ex_(zero_like(exemplar)) {}

    static Poly zero(const K& exemplar) { return Poly(exemplar); }
    static Poly constant(const K& value) {
        Poly p(value);
        p.c_.push_back(value);
        p.trim();
        return p;
    }
    static Poly from_coeffs(std::vector<K> coeffs, const K& exemplar) {
        Poly p(exemplar);
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }
    /// The monomial x.
    static Poly x(const K& exemplar) {
        Poly p(exemplar);
        p.c_ = {zero_like(exemplar), one_like(exemplar)};
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    long long degree() const { return static_cast<long long>(c_.size()) - 1; }
    const K& exemplar() const { return ex_; }

    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : ex_; }
    const std::vector<K>& coeffs() const { return c_; }

    K leading() const {
        if (is_zero()) throw std::domain_error("Poly: zero polynomial has no leading coeff");
        return c_.back();
    }

    bool is_monic() const { return !is_zero() && c_.back().is_one(); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r(a.ex_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), a.ex_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) + b.coeff(i);
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r(a.ex_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), a.ex_);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) - b.coeff(i);
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.ex_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, a.ex_);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend Poly operator*(const K& s, const Poly& a) {
        Poly r = a;
        for (auto& c : r.c_) c = s * c;
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Quotient and remainder; the divisor's leading coefficient is inverted.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly q(a.ex_), r = a;
        K lead_inv = b.leading().inverse();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            K factor = r.leading() * lead_inv;
            if (q.c_.size() < shift + 1) q.c_.resize(shift + 1, a.ex_);
            q.c_[shift] = q.c_[shift] + factor;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                r.c_[shift + i] = r.c_[shift + i] - factor * b.c_[i];
            r.trim();
        }
        q.trim();
        return {std::move(q), std::move(r)};
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return leading().inverse() * *this;
    }

    Poly derivative() const {
        Poly r(ex_);
        if (degree() < 1) return r;
        r.c_.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_.push_back(from_int_like(ex_, static_cast<long long>(i)) * c_[i]);
        r.trim();
        return r;
    }

    /// Monic gcd; gcd(0,0) = 0.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Extended Euclid: returns (g, u, v) monic with u*a + v*b = g.
    static std::tuple<Poly, Poly, Poly> extended_gcd(const Poly& a, const Poly& b) {
        Poly r0 = a, r1 = b;
        Poly s0 = constant(one_like(a.ex_)), s1 = zero(a.ex_);
        Poly t0 = zero(a.ex_), t1 = constant(one_like(a.ex_));
        while (!r1.is_zero()) {
            auto [q, r2] = divmod(r0, r1);
            Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
            r0 = std::move(r1);
            r1 = std::move(r2);
            s0 = std::move(s1);
            s1 = std::move(s2);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        if (r0.is_zero()) return {r0, s0, t0};
        K inv = r0.leading().inverse();
        return {inv * r0, inv * s0, inv * t0};
    }

    K eval(const K& x) const {
        K acc = zero_like(x);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// P / gcd(P, P'): same irreducible factors, multiplicity one each.
    Poly squarefree_part() const {
        if (is_zero()) return *this;
        Poly g = gcd(*this, derivative());
        if (g.degree() <= 0) return monic();
        return divmod(*this, g).first.monic();
    }

    bool is_squarefree() const {
        if (is_zero()) return false;
        return gcd(*this, derivative()).degree() == 0;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].to_string();
            if (i > 0) s += "*x^" + std::to_string(i);
        }
        return s;
    }

private:
    K ex_;  // a zero of the coefficient field
    std::vector<K> c_;

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

}  // namespace xact
