#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xact/cyclo.hpp"
#include "xact/rat.hpp"

namespace xact {

/// Finite level of the Schwartz space on Q_p^d: functions supported in
/// p^{-m} Z_p^d and constant on cosets of p^k Z_p^d.
struct Level {
    int m = 0;
    int k = 0;

    friend bool operator==(const Level& a, const Level& b) { return a.m == b.m && a.k == b.k; }
    friend bool operator!=(const Level& a, const Level& b) { return !(a == b); }

    Level join(const Level& o) const { return Level{m > o.m ? m : o.m, k > o.k ? k : o.k}; }

    std::string to_string() const {
        return "(" + std::to_string(m) + "," + std::to_string(k) + ")";
    }
};

/// The finite group p^{-m} Z_p^d / p^k Z_p^d. A coset is addressed by d
/// integers a_j in [0, p^{m+k}); the representative point is x_j = a_j p^{-m}.
class CosetSpace {
public:
    CosetSpace(std::uint32_t p, int d, Level level) : p_(p), d_(d), level_(level) {
        if (p < 2) throw std::invalid_argument("CosetSpace: p must be >= 2");
        if (d < 1) throw std::invalid_argument("CosetSpace: d must be >= 1");
        if (level.m < 0 || level.k < 0)
            throw std::invalid_argument("CosetSpace: negative level");
        modulus_ = 1;
        for (int i = 0; i < level.m + level.k; ++i) modulus_ *= p;
        double size_est = 1;
        for (int j = 0; j < d; ++j) size_est *= static_cast<double>(modulus_);
        if (size_est > 1e6)
            throw std::invalid_argument("CosetSpace: p^{(m+k)d} exceeds the 10^6 cap");
        size_ = 1;
        for (int j = 0; j < d; ++j) size_ *= static_cast<std::size_t>(modulus_);
    }

    std::uint32_t p() const { return p_; }
    int d() const { return d_; }
    const Level& level() const { return level_; }
    long long coord_modulus() const { return modulus_; }
    std::size_t size() const { return size_; }

    friend bool operator==(const CosetSpace& a, const CosetSpace& b) {
        return a.p_ == b.p_ && a.d_ == b.d_ && a.level_ == b.level_;
    }
    friend bool operator!=(const CosetSpace& a, const CosetSpace& b) { return !(a == b); }

    std::vector<long long> coords(std::size_t idx) const {
        std::vector<long long> a(d_);
        for (int j = 0; j < d_; ++j) {
            a[j] = static_cast<long long>(idx % static_cast<std::size_t>(modulus_));
            idx /= static_cast<std::size_t>(modulus_);
        }
        return a;
    }

    std::size_t index(const std::vector<long long>& a) const {
        std::size_t idx = 0;
        for (int j = d_; j-- > 0;) {
            long long c = ((a[j] % modulus_) + modulus_) % modulus_;
            idx = idx * static_cast<std::size_t>(modulus_) + static_cast<std::size_t>(c);
        }
        return idx;
    }

    /// The representative point, coordinate j = a_j * p^{-m}.
    std::vector<Rat> point(std::size_t idx) const {
        auto a = coords(idx);
        Rat scale = Rat(1, BigInt(static_cast<long long>(p_)).pow(
                               static_cast<unsigned long long>(level_.m)));
        std::vector<Rat> x(d_);
        for (int j = 0; j < d_; ++j) x[j] = Rat(a[j]) * scale;
        return x;
    }

    std::size_t negate(std::size_t idx) const {
        auto a = coords(idx);
        for (auto& c : a) c = (modulus_ - c) % modulus_;
        return index(a);
    }

private:
    std::uint32_t p_;
    int d_;
    Level level_;
    long long modulus_;
    std::size_t size_;
};

/// Finite-level model of a Schwartz function: one exact value per coset.
class LevelledFunction {
public:
    explicit LevelledFunction(CosetSpace space)
        : sp_(std::move(space)), val_(sp_.size(), Cyclo()) {}

    static LevelledFunction indicator(const CosetSpace& sp, std::size_t idx) {
        LevelledFunction f(sp);
        f.val_.at(idx) = Cyclo::one();
        return f;
    }

    static LevelledFunction constant(const CosetSpace& sp, const Cyclo& c) {
        LevelledFunction f(sp);
        for (auto& v : f.val_) v = c;
        return f;
    }

    const CosetSpace& space() const { return sp_; }
    std::uint32_t p() const { return sp_.p(); }
    int d() const { return sp_.d(); }
    const Level& level() const { return sp_.level(); }
    std::size_t size() const { return val_.size(); }

    const Cyclo& value(std::size_t idx) const { return val_[idx]; }
    void set_value(std::size_t idx, Cyclo c) { val_[idx] = std::move(c); }

    bool is_zero() const {
        for (const auto& v : val_)
            if (!v.is_zero()) return false;
        return true;
    }

    friend LevelledFunction operator+(const LevelledFunction& a, const LevelledFunction& b) {
        if (a.sp_ != b.sp_) throw std::invalid_argument("LevelledFunction: level mismatch");
        LevelledFunction r = a;
        for (std::size_t i = 0; i < r.val_.size(); ++i) r.val_[i] += b.val_[i];
        return r;
    }
    friend LevelledFunction operator*(const Cyclo& s, const LevelledFunction& a) {
        LevelledFunction r = a;
        for (auto& v : r.val_) v *= s;
        return r;
    }
    friend bool operator==(const LevelledFunction& a, const LevelledFunction& b) {
        if (a.sp_ != b.sp_) return false;
        for (std::size_t i = 0; i < a.val_.size(); ++i)
            if (!(a.val_[i] == b.val_[i])) return false;
        return true;
    }
    friend bool operator!=(const LevelledFunction& a, const LevelledFunction& b) {
        return !(a == b);
    }

    /// Exact re-expression at a wider and/or finer level: values are copied
    /// onto subdivided cosets and zero outside the old support window.
    LevelledFunction embed(Level target) const {
        const Level& l = sp_.level();
        if (target.m < l.m || target.k < l.k)
            throw std::invalid_argument("LevelledFunction: embed target must refine the level");
        if (target == l) return *this;
        CosetSpace out_sp(sp_.p(), sp_.d(), target);
        LevelledFunction out(out_sp);
        long long p = sp_.p();
        long long scale = 1;  // p^{m' - m}
        for (int i = 0; i < target.m - l.m; ++i) scale *= p;
        long long old_mod = sp_.coord_modulus();
        for (std::size_t idx = 0; idx < out_sp.size(); ++idx) {
            auto a = out_sp.coords(idx);
            bool inside = true;
            std::vector<long long> old_a(a.size());
            for (std::size_t j = 0; j < a.size(); ++j) {
                if (a[j] % scale != 0) {
                    inside = false;  // representative falls outside p^{-m} Z_p
                    break;
                }
                old_a[j] = (a[j] / scale) % old_mod;
            }
            if (inside) out.val_[idx] = val_[sp_.index(old_a)];
        }
        return out;
    }

    /// f(-x).
    LevelledFunction reflect() const {
        LevelledFunction r(sp_);
        for (std::size_t idx = 0; idx < val_.size(); ++idx)
            r.val_[idx] = val_[sp_.negate(idx)];
        return r;
    }

    /// Embed both sides to the joined level and compare exactly.
    bool equal_as_functions(const LevelledFunction& other) const {
        if (sp_.p() != other.sp_.p() || sp_.d() != other.sp_.d()) return false;
        Level j = sp_.level().join(other.sp_.level());
        return embed(j) == other.embed(j);
    }

private:
    CosetSpace sp_;
    std::vector<Cyclo> val_;
};

}  // namespace xact
