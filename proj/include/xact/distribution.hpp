#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xact/fourier.hpp"
#include "xact/padic_level.hpp"

namespace xact {

/// Finite-level distribution: a weight per coset, acting by
///   xi(f) = sum_C w(C) f(C) vol(C),  vol(C) = p^{-kd}.
class FiniteDistribution {
public:
    explicit FiniteDistribution(CosetSpace space)
        : sp_(std::move(space)), w_(sp_.size(), Cyclo()) {}

    static FiniteDistribution delta_at(const CosetSpace& sp, std::size_t idx) {
        FiniteDistribution xi(sp);
        // xi(f) = f(idx): the weight cancels the coset volume
        xi.w_.at(idx) = Cyclo::from_rat(Rat(BigInt(static_cast<long long>(sp.p()))
                                                .pow(static_cast<unsigned long long>(
                                                    sp.level().k * sp.d()))));
        return xi;
    }

    static FiniteDistribution haar(const CosetSpace& sp) {
        FiniteDistribution xi(sp);
        for (auto& w : xi.w_) w = Cyclo::one();
        return xi;
    }

    /// Haar mass on the cosets selected by the predicate (by index).
    template <class Pred>
    static FiniteDistribution haar_on(const CosetSpace& sp, Pred&& keep) {
        FiniteDistribution xi(sp);
        for (std::size_t i = 0; i < sp.size(); ++i)
            if (keep(i)) xi.w_[i] = Cyclo::one();
        return xi;
    }

    const CosetSpace& space() const { return sp_; }
    std::uint32_t p() const { return sp_.p(); }
    int d() const { return sp_.d(); }
    const Level& level() const { return sp_.level(); }

    const Cyclo& weight(std::size_t idx) const { return w_[idx]; }
    void set_weight(std::size_t idx, Cyclo c) { w_[idx] = std::move(c); }

    bool is_zero() const {
        for (const auto& w : w_)
            if (!w.is_zero()) return false;
        return true;
    }

    friend bool operator==(const FiniteDistribution& a, const FiniteDistribution& b) {
        return a.sp_ == b.sp_ && a.w_ == b.w_;
    }
    friend bool operator!=(const FiniteDistribution& a, const FiniteDistribution& b) {
        return !(a == b);
    }

    Cyclo coset_volume() const {
        return Cyclo::from_rat(Rat(1, BigInt(static_cast<long long>(sp_.p()))
                                          .pow(static_cast<unsigned long long>(
                                              sp_.level().k * sp_.d()))));
    }

    /// Evaluate on a test function at this or any coarser level.
    Cyclo eval(const LevelledFunction& f) const {
        if (f.p() != sp_.p() || f.d() != sp_.d())
            throw std::invalid_argument("FiniteDistribution: domain mismatch");
        if (f.level().m > sp_.level().m || f.level().k > sp_.level().k)
            throw std::invalid_argument(
                "FiniteDistribution: test function finer than the distribution level");
        LevelledFunction g = f.embed(sp_.level());
        Cyclo acc;
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i].is_zero() || g.value(i).is_zero()) continue;
            acc += w_[i] * g.value(i);
        }
        return acc * coset_volume();
    }

    /// Cosets on which some test function is detected: exactly the nonzero
    /// weights at finite level.
    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (!w_[i].is_zero()) s.push_back(i);
        return s;
    }

private:
    CosetSpace sp_;
    std::vector<Cyclo> w_;
};

/// (F_B xi)(f) := xi(F_B f). The result lives at the level whose transform
/// lands exactly on xi's level, so both windows must dominate the
/// elementary-divisor inflation.
inline FiniteDistribution distribution_fourier(const FiniteDistribution& xi,
                                               const BilinearFormB& b) {
    if (b.d() != static_cast<std::size_t>(xi.d()))
        throw std::invalid_argument("distribution_fourier: form dimension mismatch");
    std::uint32_t p = xi.p();
    long long smax = b.s_max(p);
    Level l = xi.level();
    if (l.m < smax || l.k < smax)
        throw std::domain_error(
            "distribution_fourier: level too small for this form's elementary divisors");
    Level dual{static_cast<int>(l.k - smax), static_cast<int>(l.m - smax)};
    CosetSpace dual_sp(p, xi.d(), dual);
    FiniteDistribution out(dual_sp);
    Rat dual_vol_inv(BigInt(static_cast<long long>(p))
                         .pow(static_cast<unsigned long long>(dual.k * xi.d())));
    for (std::size_t idx = 0; idx < dual_sp.size(); ++idx) {
        LevelledFunction ind = LevelledFunction::indicator(dual_sp, idx);
        Cyclo val = xi.eval(fourier(ind, b));
        out.set_weight(idx, val * Cyclo::from_rat(dual_vol_inv));
    }
    return out;
}

/// Partial transform of a distribution in the first (or last) d1 coordinates:
/// (F_{B1} xi)(f) := xi(F_{B1} f). Only levels the partial transform maps to
/// themselves are supported (square windows, unimodular factor form).
inline FiniteDistribution distribution_partial_fourier(const FiniteDistribution& xi,
                                                       std::size_t d1, const BilinearFormB& b1,
                                                       bool first_factor = true) {
    const CosetSpace& sp = xi.space();
    LevelledFunction probe = LevelledFunction::indicator(sp, 0);
    LevelledFunction probe_out = partial_fourier(probe, d1, b1, first_factor);
    if (probe_out.space() != sp)
        throw std::domain_error(
            "distribution_partial_fourier: the partial transform moves this level window");
    FiniteDistribution out(sp);
    Rat vol_inv(BigInt(static_cast<long long>(sp.p()))
                    .pow(static_cast<unsigned long long>(sp.level().k * sp.d())));
    for (std::size_t idx = 0; idx < sp.size(); ++idx) {
        LevelledFunction ind = LevelledFunction::indicator(sp, idx);
        Cyclo val = xi.eval(partial_fourier(ind, d1, b1, first_factor));
        out.set_weight(idx, val * Cyclo::from_rat(vol_inv));
    }
    return out;
}

/// One valuation constraint: val(expr) >= min_val, with infinite() meaning
/// the expression must vanish exactly.
struct ValCond {
    bool is_infinite = false;
    long long min_val = 0;

    static ValCond at_least(long long v) { return ValCond{false, v}; }
    static ValCond infinite() { return ValCond{true, 0}; }
};

/// A cell: per-coordinate valuation constraints plus an optional constraint
/// on B(x,x). A cell set is a finite union.
struct Cell {
    std::map<std::size_t, ValCond> coord;
    std::optional<ValCond> quad;
};

struct CellSet {
    std::vector<Cell> cells;

    /// The isotropic cone Z(B) = {B(x,x) = 0}.
    static CellSet isotropic_cone() {
        Cell c;
        c.quad = ValCond::infinite();
        return CellSet{{c}};
    }
};

namespace cells_detail {

inline long long val_or_big(const Rat& x, std::uint32_t p, long long big) {
    return x.is_zero() ? big : val_p(x, p);
}

}  // namespace cells_detail

/// Documented coset-meets-cell rule, decided exactly from the representative:
///  - coordinate j, val >= c: passes iff val(x0_j) >= min(c, k); for c
///    infinite this is val(x0_j) >= k, which is exact coset membership of 0.
///  - quadratic val >= c on Q(x) = x^T M x / 2: passes iff
///    val(Q(x0)) >= min(c, t_C) with
///      t_C = min(v_B + minval(x0) + k,  v_B + 2k - val_p(2)),
///    the smallest valuation Q can move by inside the coset
///    (Q(x0+d) - Q(x0) = x0^T M d + d^T M d / 2).
inline bool coset_meets_cell(const CosetSpace& sp, std::size_t idx, const Cell& cell,
                             const BilinearFormB& b) {
    constexpr long long kBig = 1ll << 40;
    std::uint32_t p = sp.p();
    long long k = sp.level().k;
    auto x0 = sp.point(idx);
    for (const auto& [j, cond] : cell.coord) {
        if (j >= x0.size()) throw std::invalid_argument("cell: coordinate index out of range");
        long long bound = cond.is_infinite ? k : std::min(cond.min_val, k);
        if (cells_detail::val_or_big(x0[j], p, kBig) < bound) return false;
    }
    if (cell.quad) {
        long long vB = b.min_entry_valuation(p);
        long long minx = kBig;
        for (const auto& c : x0) minx = std::min(minx, cells_detail::val_or_big(c, p, kBig));
        long long val2 = (p == 2) ? 1 : 0;
        long long t_c = std::min(vB + minx + k, vB + 2 * k - val2);
        long long bound = cell.quad->is_infinite ? t_c : std::min(cell.quad->min_val, t_c);
        if (cells_detail::val_or_big(b.quad(x0), p, kBig) < bound) return false;
    }
    return true;
}

/// Supp(xi) lies inside the cell set under the coset-meets rule.
inline bool supported_in(const FiniteDistribution& xi, const CellSet& z,
                         const BilinearFormB& b) {
    for (std::size_t idx : xi.support()) {
        bool meets = false;
        for (const auto& cell : z.cells)
            if (coset_meets_cell(xi.space(), idx, cell, b)) {
                meets = true;
                break;
            }
        if (!meets) return false;
    }
    return true;
}

/// Verdict of the abs-homogeneity measurement.
struct HomogeneityVerdict {
    enum class Kind { Degree, AnyDegree, NotHomogeneous };
    Kind kind = Kind::AnyDegree;
    Rat degree;          // meaningful for Kind::Degree
    std::string witness;  // for Kind::NotHomogeneous

    bool is_degree(const Rat& d) const { return kind == Kind::Degree && degree == d; }
};

/// Measures d with |xi(h_{t^{-1}} f)| = |t|^{-d} |xi(f)| over t = p^a for the
/// sampled exponents a >= 1, testing every window indicator whose dilate
/// stays inside the window. Absolute values are compared as exact valuations
/// via |.|^2 in the cyclotomic field.
inline HomogeneityVerdict abs_homogeneity_degree(const FiniteDistribution& xi,
                                                 const std::vector<int>& exponent_samples) {
    const CosetSpace& sp = xi.space();
    std::uint32_t p = sp.p();
    int m = sp.level().m, k = sp.level().k, d = sp.d();
    bool any_testable = false;
    std::optional<Rat> degree;
    for (int a : exponent_samples) {
        if (a < 1) throw std::invalid_argument("abs_homogeneity_degree: exponents must be >= 1");
        if (a > m + k) continue;  // dilated cosets cannot be expressed in the window
        long long pa = 1;
        for (int i = 0; i < a; ++i) pa *= p;
        long long modulus = sp.coord_modulus();
        for (std::size_t ci = 0; ci < sp.size(); ++ci) {
            // 1_C dilated by t = p^a is the indicator of p^{-a} C, a coset of
            // p^{k-a} Z^d with representative p^{-a} x0; representable iff
            // every coordinate keeps valuation >= -m, i.e. p^a | a_j ... p^{a-m}
            auto coords = sp.coords(ci);
            bool representable = true;
            for (auto c : coords)
                if (c % pa != 0) {
                    representable = false;
                    break;
                }
            if (!representable) continue;
            any_testable = true;
            // xi(1_C)
            LevelledFunction ind = LevelledFunction::indicator(sp, ci);
            Cyclo base = xi.eval(ind);
            // xi(1_{p^{-a} C}): union of the p^{ad} window cosets congruent to
            // p^{-a} x0 modulo p^{k-a}
            LevelledFunction dil(sp);
            std::size_t sub_count = 1;
            for (int j = 0; j < d; ++j) sub_count *= static_cast<std::size_t>(pa);
            std::vector<long long> basec(coords);
            for (auto& c : basec) c /= pa;
            std::vector<long long> cur(coords.size());
            for (std::size_t code = 0; code < sub_count; ++code) {
                std::size_t t = code;
                for (int j = 0; j < d; ++j) {
                    long long step = static_cast<long long>(t % static_cast<std::size_t>(pa));
                    t /= static_cast<std::size_t>(pa);
                    cur[j] = (basec[j] + step * (modulus / pa)) % modulus;
                }
                dil.set_value(sp.index(cur), Cyclo::one());
            }
            Cyclo dilated = xi.eval(dil);
            bool bz = base.is_zero(), dz = dilated.is_zero();
            if (bz != dz) {
                HomogeneityVerdict v;
                v.kind = HomogeneityVerdict::Kind::NotHomogeneous;
                v.witness = "coset " + std::to_string(ci) + ", t = p^" + std::to_string(a) +
                            ": exactly one of |xi(f)|, |xi(h f)| vanishes";
                return v;
            }
            if (bz) continue;
            Cyclo ratio = dilated.abs_sq() / base.abs_sq();
            long long L = 0;
            if (!ratio.as_p_power(p, L)) {
                HomogeneityVerdict v;
                v.kind = HomogeneityVerdict::Kind::NotHomogeneous;
                v.witness = "coset " + std::to_string(ci) + ", t = p^" + std::to_string(a) +
                            ": |ratio|^2 = " + ratio.to_string() + " is not a power of p";
                return v;
            }
            Rat cand(L, 2ll * a);
            if (!degree) {
                degree = cand;
            } else if (*degree != cand) {
                HomogeneityVerdict v;
                v.kind = HomogeneityVerdict::Kind::NotHomogeneous;
                v.witness = "conflicting degrees " + degree->to_string() + " vs " +
                            cand.to_string() + " at coset " + std::to_string(ci);
                return v;
            }
        }
    }
    if (!any_testable)
        throw std::domain_error("abs_homogeneity_degree: level window too small for samples");
    HomogeneityVerdict v;
    if (degree) {
        v.kind = HomogeneityVerdict::Kind::Degree;
        v.degree = *degree;
    }
    return v;  // no nonzero evaluation at all: vacuously any degree
}

}  // namespace xact
