#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "xact/bigint.hpp"

namespace xact {

/// Exact rational, always in lowest terms with positive denominator.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}
    Rat(int v) : num_(v), den_(1) {}
    Rat(BigInt n) : num_(std::move(n)), den_(1) {}

    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { canonicalize(); }

    Rat(long long n, long long d) : num_(n), den_(d) { canonicalize(); }

    /// Parses "a/b" or "a".
    static Rat from_string(std::string_view s) {
        auto slash = s.find('/');
        if (slash == std::string_view::npos) return Rat(BigInt::from_string(s));
        return Rat(BigInt::from_string(s.substr(0, slash)),
                   BigInt::from_string(s.substr(slash + 1)));
    }

    const BigInt& numerator() const { return num_; }
    const BigInt& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }
    int signum() const { return num_.signum(); }

    friend Rat operator+(const Rat& a, const Rat& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_.is_one() && b.den_.is_one()) return Rat(a.num_ + b.num_);
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        if (b.is_zero()) return a;
        if (a.den_.is_one() && b.den_.is_one()) return Rat(a.num_ - b.num_);
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        if (a.is_zero() || b.is_zero()) return Rat();
        if (a.den_.is_one() && b.den_.is_one()) return Rat(a.num_ * b.num_);
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rat operator-() const {
        Rat r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Rat& operator+=(const Rat& b) { return *this = *this + b; }
    Rat& operator-=(const Rat& b) { return *this = *this - b; }
    Rat& operator*=(const Rat& b) { return *this = *this * b; }
    Rat& operator/=(const Rat& b) { return *this = *this / b; }

    Rat inverse() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(den_, num_);
    }

    Rat abs() const { return signum() < 0 ? -*this : *this; }

    /// Exact integer power, negative exponents allowed for nonzero values.
    Rat pow(long long e) const {
        if (e >= 0) return Rat(num_.pow(static_cast<unsigned long long>(e)),
                               den_.pow(static_cast<unsigned long long>(e)));
        return inverse().pow(-e);
    }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return (a.num_ * b.den_) < (b.num_ * a.den_);
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return num_.to_string() + "/" + den_.to_string();
    }

private:
    BigInt num_, den_;

    void canonicalize() {
        if (den_.is_zero()) throw std::domain_error("Rat: zero denominator");
        if (num_.is_zero()) {
            den_ = BigInt(1);
            return;
        }
        if (den_.is_one()) return;
        if (den_.signum() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = BigInt::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
    }
};

inline Rat zero_like(const Rat&) { return Rat(); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline Rat from_int_like(const Rat&, long long v) { return Rat(v); }

}  // namespace xact
