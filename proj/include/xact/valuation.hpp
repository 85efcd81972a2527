#pragma once

#include <stdexcept>
#include <string>

#include "xact/rat.hpp"

namespace xact {

/// p-adic valuation of a nonzero rational: ord_p(num) - ord_p(den).
inline long long val_p(const Rat& x, std::uint32_t p) {
    if (x.is_zero()) throw std::domain_error("val_p: valuation of zero is infinite");
    return x.numerator().valuation(p) - x.denominator().valuation(p);
}

/// A rational seen through the p-adic absolute value: |x| = p^{-v}, with the
/// unit part x / p^v kept exactly. v(0) = +infinity.
struct Valued {
    bool infinite = true;  // x == 0
    long long v = 0;
    Rat unit;  // x * p^{-v}; zero when infinite

    static Valued of_zero() { return Valued{}; }

    bool is_zero() const { return infinite; }

    std::string to_string() const {
        if (infinite) return "v=+inf";
        return "v=" + std::to_string(v) + ", unit=" + unit.to_string();
    }
};

inline Valued padic_norm(const Rat& x, std::uint32_t p) {
    if (x.is_zero()) return Valued::of_zero();
    Valued r;
    r.infinite = false;
    r.v = val_p(x, p);
    r.unit = x * Rat(BigInt(static_cast<long long>(p))).pow(-r.v);
    return r;
}

/// |x| <= |y| in the p-adic absolute value (v(x) >= v(y)); zero is smallest.
inline bool abs_leq(const Valued& x, const Valued& y) {
    if (x.infinite) return true;
    if (y.infinite) return false;
    return x.v >= y.v;
}

}  // namespace xact
