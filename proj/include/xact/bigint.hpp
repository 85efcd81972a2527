#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xact {

/// Arbitrary-precision signed integer: sign-magnitude over base-2^32 limbs.
/// Schoolbook arithmetic throughout; operands in this project stay within a
/// few thousand bits, where the simple routines are entirely adequate.
class BigInt {
public:
    BigInt() = default;

    BigInt(long long v) {
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // avoid overflow on LLONG_MIN
        unsigned long long u = v < 0 ? ~static_cast<unsigned long long>(v) + 1ull
                                     : static_cast<unsigned long long>(v);
        mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffull));
        if (u >> 32) mag_.push_back(static_cast<std::uint32_t>(u >> 32));
    }

    BigInt(int v) : BigInt(static_cast<long long>(v)) {}

    static BigInt from_string(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("BigInt: empty string");
        bool neg = false;
        std::size_t i = 0;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
        BigInt r;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                throw std::invalid_argument("BigInt: bad digit in \"" + std::string(s) + "\"");
            r.mul_small_inplace(10);
            r.add_small_inplace(static_cast<std::uint32_t>(s[i] - '0'));
        }
        if (neg && !r.is_zero()) r.sign_ = -1;
        return r;
    }

    bool is_zero() const { return sign_ == 0; }
    int signum() const { return sign_; }

    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.sign_ == b.sign_ && a.mag_ == b.mag_;
    }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b) { return cmp(a, b) < 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return cmp(a, b) >= 0; }

    static int cmp(const BigInt& a, const BigInt& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c : -c;
    }

    BigInt operator-() const {
        BigInt r = *this;
        r.sign_ = -r.sign_;
        return r;
    }

    BigInt abs() const {
        BigInt r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        BigInt r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return BigInt();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
        BigInt r;
        r.mag_ = mul_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    BigInt& operator+=(const BigInt& b) { return *this = *this + b; }
    BigInt& operator-=(const BigInt& b) { return *this = *this - b; }
    BigInt& operator*=(const BigInt& b) { return *this = *this * b; }

    /// Truncated division: a = q*b + r with |r| < |b| and sign(r) = sign(a).
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
        if (a.sign_ == 0) return {BigInt(), BigInt()};
        auto [qm, rm] = divmod_mag(a.mag_, b.mag_);
        BigInt q, r;
        q.mag_ = std::move(qm);
        r.mag_ = std::move(rm);
        q.normalize();
        r.normalize();
        if (!q.mag_.empty()) q.sign_ = a.sign_ * b.sign_;
        if (!r.mag_.empty()) r.sign_ = a.sign_;
        return {std::move(q), std::move(r)};
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) { return divmod(a, b).first; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return divmod(a, b).second; }

    /// gcd of absolute values; gcd(0,0) = 0.
    static BigInt gcd(BigInt a, BigInt b) {
        a.sign_ = a.mag_.empty() ? 0 : 1;
        b.sign_ = b.mag_.empty() ? 0 : 1;
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        // binary gcd: only shifts and subtractions
        unsigned az = a.trailing_zero_bits(), bz = b.trailing_zero_bits();
        unsigned shift = az < bz ? az : bz;
        a.shr_bits_inplace(az);
        b.shr_bits_inplace(bz);
        while (true) {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) break;
            if (c < 0) std::swap(a, b);
            a.mag_ = sub_mag(a.mag_, b.mag_);
            if (a.mag_.empty()) break;
            a.shr_bits_inplace(a.trailing_zero_bits());
        }
        BigInt g = a.mag_.empty() ? b : a;
        g.shl_bits_inplace(shift);
        return g;
    }

    static BigInt lcm(const BigInt& a, const BigInt& b) {
        if (a.is_zero() || b.is_zero()) return BigInt();
        return (a * b).abs() / gcd(a, b);
    }

    BigInt pow(unsigned long long e) const {
        BigInt base = *this, r(1);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    /// Largest e with p^e dividing this (nonzero input required).
    long long valuation(std::uint32_t p) const {
        if (is_zero()) throw std::domain_error("BigInt: valuation of zero");
        long long v = 0;
        BigInt cur = abs();
        while (true) {
            auto [q, r] = divmod_small(cur, p);
            if (r != 0) break;
            cur = std::move(q);
            ++v;
        }
        return v;
    }

    bool fits_longlong() const {
        if (mag_.size() > 2) return false;
        unsigned long long u = to_ull();
        if (sign_ >= 0) return u <= 0x7fffffffffffffffull;
        return u <= 0x8000000000000000ull;
    }

    long long to_longlong() const {
        if (!fits_longlong()) throw std::overflow_error("BigInt: does not fit in long long");
        unsigned long long u = to_ull();
        return sign_ < 0 ? -static_cast<long long>(u - 1) - 1 : static_cast<long long>(u);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        BigInt cur = abs();
        while (!cur.is_zero()) {
            auto [q, r] = divmod_small(cur, 1000000000u);
            std::string chunk = std::to_string(r);
            cur = std::move(q);
            if (cur.is_zero())
                out.insert(0, chunk);
            else
                out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
        }
        if (sign_ < 0) out.insert(0, "-");
        return out;
    }

    bool is_even() const { return mag_.empty() || (mag_[0] & 1u) == 0; }

private:
    int sign_ = 0;                    // -1, 0, +1
    std::vector<std::uint32_t> mag_;  // little-endian, no leading zero limbs

    void normalize() {
        while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
        if (mag_.empty()) sign_ = 0;
    }

    unsigned long long to_ull() const {
        unsigned long long u = 0;
        if (!mag_.empty()) u = mag_[0];
        if (mag_.size() > 1) u |= static_cast<unsigned long long>(mag_[1]) << 32;
        return u;
    }

    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        const auto& big = a.size() >= b.size() ? a : b;
        const auto& small = a.size() >= b.size() ? b : a;
        std::vector<std::uint32_t> r(big.size() + 1, 0);
        unsigned long long carry = 0;
        for (std::size_t i = 0; i < big.size(); ++i) {
            unsigned long long s = carry + big[i] + (i < small.size() ? small[i] : 0u);
            r[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        r[big.size()] = static_cast<std::uint32_t>(carry);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size(), 0);
        long long borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            long long s = static_cast<long long>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
            if (s < 0) {
                s += 1ll << 32;
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<std::uint32_t>(s);
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            unsigned long long carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                unsigned long long cur = r[i + j] +
                                         static_cast<unsigned long long>(a[i]) * b[j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            std::size_t k = i + b.size();
            while (carry) {
                unsigned long long cur = r[k] + carry;
                r[k] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    unsigned bit_length() const {
        if (mag_.empty()) return 0;
        std::uint32_t top = mag_.back();
        unsigned bits = static_cast<unsigned>(mag_.size() - 1) * 32;
        while (top) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

    bool bit(unsigned i) const {
        std::size_t limb = i / 32;
        if (limb >= mag_.size()) return false;
        return (mag_[limb] >> (i % 32)) & 1u;
    }

    unsigned trailing_zero_bits() const {
        for (std::size_t i = 0; i < mag_.size(); ++i) {
            if (mag_[i] != 0) {
                unsigned b = 0;
                std::uint32_t v = mag_[i];
                while ((v & 1u) == 0) {
                    ++b;
                    v >>= 1;
                }
                return static_cast<unsigned>(i) * 32 + b;
            }
        }
        return 0;
    }

    void shl_bits_inplace(unsigned k) {
        if (mag_.empty() || k == 0) return;
        unsigned limbs = k / 32, bits = k % 32;
        mag_.insert(mag_.begin(), limbs, 0u);
        if (bits) {
            std::uint32_t carry = 0;
            for (std::size_t i = limbs; i < mag_.size(); ++i) {
                std::uint32_t nv = (mag_[i] << bits) | carry;
                carry = mag_[i] >> (32 - bits);
                mag_[i] = nv;
            }
            if (carry) mag_.push_back(carry);
        }
    }

    void shr_bits_inplace(unsigned k) {
        if (mag_.empty() || k == 0) return;
        unsigned limbs = k / 32, bits = k % 32;
        if (limbs >= mag_.size()) {
            mag_.clear();
            sign_ = 0;
            return;
        }
        mag_.erase(mag_.begin(), mag_.begin() + limbs);
        if (bits) {
            for (std::size_t i = 0; i < mag_.size(); ++i) {
                std::uint32_t lo = mag_[i] >> bits;
                std::uint32_t hi = (i + 1 < mag_.size()) ? (mag_[i + 1] << (32 - bits)) : 0;
                mag_[i] = lo | hi;
            }
        }
        normalize();
    }

    // shift-subtract long division on magnitudes
    static std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> divmod_mag(
        const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
        BigInt r, d, q;
        r.mag_ = a;
        r.sign_ = 1;
        d.mag_ = b;
        d.sign_ = 1;
        if (cmp_mag(a, b) < 0) return {{}, a};
        unsigned shift = r.bit_length() - d.bit_length();
        d.shl_bits_inplace(shift);
        q.mag_.assign(shift / 32 + 1, 0u);
        for (unsigned i = shift + 1; i-- > 0;) {
            if (cmp_mag(r.mag_, d.mag_) >= 0) {
                r.mag_ = sub_mag(r.mag_, d.mag_);
                q.mag_[i / 32] |= 1u << (i % 32);
            }
            d.shr_bits_inplace(1);
        }
        return {q.mag_, r.mag_};
    }

    static std::pair<BigInt, std::uint32_t> divmod_small(const BigInt& a, std::uint32_t d) {
        BigInt q;
        q.mag_.assign(a.mag_.size(), 0u);
        unsigned long long rem = 0;
        for (std::size_t i = a.mag_.size(); i-- > 0;) {
            unsigned long long cur = (rem << 32) | a.mag_[i];
            q.mag_[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        q.normalize();
        if (!q.mag_.empty()) q.sign_ = 1;
        return {std::move(q), static_cast<std::uint32_t>(rem)};
    }

    void mul_small_inplace(std::uint32_t f) {
        unsigned long long carry = 0;
        for (auto& limb : mag_) {
            unsigned long long cur = static_cast<unsigned long long>(limb) * f + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        if (carry) mag_.push_back(static_cast<std::uint32_t>(carry));
        normalize();
        if (!mag_.empty() && sign_ == 0) sign_ = 1;
    }

    void add_small_inplace(std::uint32_t v) {
        if (v == 0) return;
        if (sign_ < 0) {
            *this = *this + BigInt(static_cast<long long>(v));
            return;
        }
        unsigned long long carry = v;
        for (auto& limb : mag_) {
            unsigned long long cur = limb + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            if (!carry) break;
        }
        if (carry) mag_.push_back(static_cast<std::uint32_t>(carry));
        sign_ = 1;
    }
};

}  // namespace xact
