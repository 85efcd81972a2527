#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "xact/matrix.hpp"
#include "xact/padic_level.hpp"
#include "xact/valuation.hpp"

namespace xact {

/// Nondegenerate symmetric bilinear form on Q^d, the datum behind the exact
/// Fourier transform. M is the kernel matrix: the transform integrates
/// against psi(x^T M y). The attached quadratic form is Q(x) = x^T M x / 2,
/// so that M is its full polarization: Q(x+y) - Q(x) - Q(y) = x^T M y. This
/// pairing is what makes the Weil-operator relations close up; for U + U*
/// the canonical choice M = [[0,I],[I,0]] gives exactly Q((v,phi)) = <phi,v>.
class BilinearFormB {
public:
    explicit BilinearFormB(Mat<Rat> m) : m_(std::move(m)) {
        m_.require_square();
        if (m_.rows() == 0) throw std::invalid_argument("BilinearFormB: empty form");
        if (m_ != m_.transpose()) throw std::invalid_argument("BilinearFormB: not symmetric");
        if (!is_invertible(m_)) throw std::invalid_argument("BilinearFormB: degenerate form");
    }

    /// The canonical form on U + U*: Q((v,phi)) = <phi,v>, polarized without
    /// halving so it stays integral in residue characteristic 2.
    static BilinearFormB hyperbolic(std::size_t u_dim) {
        Mat<Rat> m = Mat<Rat>::zero(2 * u_dim, 2 * u_dim, Rat());
        for (std::size_t i = 0; i < u_dim; ++i) {
            m(i, u_dim + i) = Rat(1);
            m(u_dim + i, i) = Rat(1);
        }
        return BilinearFormB(std::move(m));
    }

    static BilinearFormB diagonal(const std::vector<Rat>& entries) {
        Mat<Rat> m = Mat<Rat>::zero(entries.size(), entries.size(), Rat());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return BilinearFormB(std::move(m));
    }

    std::size_t d() const { return m_.rows(); }
    const Mat<Rat>& matrix() const { return m_; }

    Rat apply(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
        if (x.size() != d() || y.size() != d())
            throw std::invalid_argument("BilinearFormB: dimension mismatch");
        Rat acc;
        for (std::size_t i = 0; i < d(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < d(); ++j) acc += x[i] * m_(i, j) * y[j];
        }
        return acc;
    }

    /// Q(x) = x^T M x / 2: the quadratic form whose polarization is the kernel.
    Rat quad(const std::vector<Rat>& x) const { return apply(x, x) * Rat(1, 2); }

    /// Valuations of the elementary divisors over Z_p, ascending. Min-val
    /// pivoting keeps every elimination multiplier p-integral, so the pivot
    /// valuations are exactly the Smith valuations.
    std::vector<long long> smith_valuations(std::uint32_t p) const {
        Mat<Rat> w = m_;
        std::size_t n = d();
        std::vector<bool> row_done(n, false), col_done(n, false);
        std::vector<long long> vals;
        for (std::size_t step = 0; step < n; ++step) {
            bool found = false;
            long long best = 0;
            std::size_t bi = 0, bj = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (row_done[i]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (col_done[j] || w(i, j).is_zero()) continue;
                    long long v = val_p(w(i, j), p);
                    if (!found || v < best) {
                        found = true;
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (!found) throw std::logic_error("smith_valuations: rank deficiency");
            vals.push_back(best);
            Rat pivot = w(bi, bj);
            for (std::size_t i = 0; i < n; ++i) {
                if (row_done[i] || i == bi || w(i, bj).is_zero()) continue;
                Rat f = w(i, bj) / pivot;
                for (std::size_t j = 0; j < n; ++j)
                    if (!col_done[j]) w(i, j) = w(i, j) - f * w(bi, j);
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (col_done[j] || j == bj || w(bi, j).is_zero()) continue;
                Rat f = w(bi, j) / pivot;
                for (std::size_t i = 0; i < n; ++i)
                    if (!row_done[i]) w(i, j) = w(i, j) - f * w(i, bj);
            }
            row_done[bi] = true;
            col_done[bj] = true;
        }
        std::sort(vals.begin(), vals.end());
        return vals;
    }

    long long det_valuation(std::uint32_t p) const {
        long long s = 0;
        for (auto v : smith_valuations(p)) s += v;
        return s;
    }

    /// max |valuation| over elementary divisors: the level inflation bound.
    long long s_max(std::uint32_t p) const {
        long long s = 0;
        for (auto v : smith_valuations(p)) s = std::max(s, v < 0 ? -v : v);
        return s;
    }

    /// min valuation over nonzero entries (0 for a p-integral primitive form).
    long long min_entry_valuation(std::uint32_t p) const {
        bool found = false;
        long long best = 0;
        for (std::size_t i = 0; i < d(); ++i)
            for (std::size_t j = 0; j < d(); ++j) {
                if (m_(i, j).is_zero()) continue;
                long long v = val_p(m_(i, j), p);
                if (!found || v < best) {
                    found = true;
                    best = v;
                }
            }
        return best;
    }

private:
    Mat<Rat> m_;
};

namespace fourier_detail {

/// Output window of F_B on level (m,k): support/smoothness both inflate by
/// the elementary-divisor bound.
inline Level output_level(const Level& in, long long s_max) {
    return Level{in.k + static_cast<int>(s_max), in.m + static_cast<int>(s_max)};
}

/// Summation scale: fine enough that psi(B(x,y)) is constant on the
/// subdivided input cosets for every output point.
inline int summation_k(const Level& in, const Level& out, long long min_entry_val) {
    long long need = out.m + std::max(0ll, -min_entry_val);
    return static_cast<int>(std::max<long long>(in.k, need));
}

/// Character sums evaluate psi(B(x,y)) millions of times; this kernel turns
/// each evaluation into one 128-bit dot product and a table lookup.
/// With x = a p^{-m1}, y = c p^{-m2} and M = Mint / D:
///   B(x,y) = (a^T Mint c) / (D p^{m1+m2}) = T / (p^s D0),  D0 prime to p,
///   psi(B) = zeta_{p^s}^{T D0^{-1} mod p^s}.
class PsiKernel {
public:
    PsiKernel(const BilinearFormB& b, std::uint32_t p, int m1, int m2) : p_(p) {
        std::size_t d = b.d();
        BigInt den(1);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                den = BigInt::lcm(den, b.matrix()(i, j).denominator());
        mint_.assign(d, std::vector<long long>(d, 0));
        Rat den_rat{den};
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Rat scaled = b.matrix()(i, j) * den_rat;
                if (!scaled.is_integer() || !scaled.numerator().fits_longlong())
                    throw std::domain_error("PsiKernel: form entries out of integer range");
                mint_[i][j] = scaled.numerator().to_longlong();
            }
        // common p-power of the numerators lowers the character level
        long long content = -1;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                if (mint_[i][j] == 0) continue;
                long long v = BigInt(mint_[i][j]).valuation(p);
                if (content < 0 || v < content) content = v;
            }
        if (content > 0) {
            long long pc = 1;
            for (long long i = 0; i < content; ++i) pc *= p;
            for (auto& row : mint_)
                for (auto& e : row) e /= pc;
        }
        long long s = den.valuation(p) + m1 + m2 - std::max(0ll, content);
        if (s < 0) s = 0;
        ps_ = 1;
        for (long long i = 0; i < s; ++i) {
            ps_ *= p;
            if (ps_ > 40000000ll)
                throw std::domain_error("PsiKernel: zeta table exceeds the desk-scale cap");
        }
        BigInt d0 = den / BigInt(static_cast<long long>(p))
                              .pow(static_cast<unsigned long long>(den.valuation(p)));
        // inverse of D0 modulo p^s
        BigInt mod(ps_);
        BigInt t0(0), t1(1), r0 = mod, r1 = ((d0 % mod) + mod) % mod;
        while (!r1.is_zero()) {
            BigInt q = r0 / r1;
            BigInt tmp = t0 - q * t1;
            t0 = t1;
            t1 = tmp;
            tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
        }
        inv_d0_ = (((t0 % mod) + mod) % mod).to_longlong();
        std::uint32_t level = 0;
        for (long long q = ps_; q > 1; q /= p) ++level;
        table_.reserve(static_cast<std::size_t>(ps_));
        for (long long e = 0; e < ps_; ++e)
            table_.push_back(level == 0 ? Cyclo::one() : Cyclo::zeta_pow(p, level, e));
    }

    /// psi(B(a p^{-m1}, c p^{-m2})) by table lookup.
    const Cyclo& eval(const std::vector<long long>& a, const std::vector<long long>& c) const {
        __int128 t = 0;
        for (std::size_t i = 0; i < mint_.size(); ++i) {
            if (a[i] == 0) continue;
            __int128 row = 0;
            for (std::size_t j = 0; j < mint_.size(); ++j)
                row += static_cast<__int128>(mint_[i][j]) * c[j];
            t += static_cast<__int128>(a[i]) * row;
        }
        long long e = static_cast<long long>(t % ps_);
        if (e < 0) e += ps_;
        e = static_cast<long long>((static_cast<__int128>(e) * inv_d0_) % ps_);
        return table_[static_cast<std::size_t>(e)];
    }

private:
    std::uint32_t p_;
    long long ps_ = 1;
    long long inv_d0_ = 1;
    std::vector<std::vector<long long>> mint_;
    std::vector<Cyclo> table_;
};

}  // namespace fourier_detail

/// Exact Fourier transform with the self-dual normalization:
///   (F_B f)(y) = |det M|^{1/2} * p^{-k~ d} * sum_x f(x) psi(B(x, y)).
/// Double transform gives reflection exactly (tested, not assumed).
inline LevelledFunction fourier(const LevelledFunction& f, const BilinearFormB& b) {
    if (b.d() != static_cast<std::size_t>(f.d()))
        throw std::invalid_argument("fourier: form dimension mismatch");
    std::uint32_t p = f.p();
    long long smax = b.s_max(p);
    Level out_level = fourier_detail::output_level(f.level(), smax);
    int ksum = fourier_detail::summation_k(f.level(), out_level, b.min_entry_valuation(p));
    LevelledFunction fine = f.embed(Level{f.level().m, ksum});
    CosetSpace out_sp(p, f.d(), out_level);
    LevelledFunction out(out_sp);
    // self-dual volume: p^{-k~ d} |det M|^{1/2}
    Cyclo vol = Cyclo::from_rat(
        Rat(1, BigInt(static_cast<long long>(p))
                   .pow(static_cast<unsigned long long>(ksum * f.d()))));
    vol *= Cyclo::p_half_power(p, -b.det_valuation(p));
    fourier_detail::PsiKernel kernel(b, p, fine.level().m, out_level.m);
    std::vector<std::vector<long long>> in_coords(fine.size());
    for (std::size_t xi = 0; xi < fine.size(); ++xi)
        if (!fine.value(xi).is_zero()) in_coords[xi] = fine.space().coords(xi);
    for (std::size_t yi = 0; yi < out_sp.size(); ++yi) {
        auto y = out_sp.coords(yi);
        Cyclo acc;
        for (std::size_t xi = 0; xi < fine.size(); ++xi) {
            if (fine.value(xi).is_zero()) continue;
            acc += fine.value(xi) * kernel.eval(in_coords[xi], y);
        }
        out.set_value(yi, vol * acc);
    }
    return out;
}

/// Partial transform in the first d1 coordinates (or the last d1 when
/// first_factor is false); the other factor rides along untouched.
inline LevelledFunction partial_fourier(const LevelledFunction& f, std::size_t d1,
                                        const BilinearFormB& b1, bool first_factor = true) {
    if (d1 == 0 || d1 > static_cast<std::size_t>(f.d()))
        throw std::invalid_argument("partial_fourier: bad split");
    if (b1.d() != d1) throw std::invalid_argument("partial_fourier: form/split mismatch");
    std::uint32_t p = f.p();
    std::size_t d = static_cast<std::size_t>(f.d());
    std::size_t off = first_factor ? 0 : d - d1;
    long long smax = b1.s_max(p);
    Level tr = fourier_detail::output_level(f.level(), smax);
    // a single uniform level must hold both the transformed and the inert factor
    Level out_level = Level{std::max(tr.m, f.level().m), std::max(tr.k, f.level().k)};
    int ksum = fourier_detail::summation_k(f.level(), tr, b1.min_entry_valuation(p));
    LevelledFunction fine = f.embed(Level{f.level().m, ksum});
    CosetSpace out_sp(p, f.d(), out_level);
    LevelledFunction out(out_sp);
    Cyclo vol = Cyclo::from_rat(
        Rat(1, BigInt(static_cast<long long>(p))
                   .pow(static_cast<unsigned long long>(ksum * d1))));
    vol *= Cyclo::p_half_power(p, -b1.det_valuation(p));
    long long fine_mod = fine.space().coord_modulus();
    long long scale = 1;  // p^{m_out - m_in}
    for (int i = 0; i < out_level.m - f.level().m; ++i) scale *= p;
    fourier_detail::PsiKernel kernel(b1, p, fine.level().m, out_level.m);
    // iterate over output cosets; inert coordinates map back into the input window
    std::size_t factor_count = 1;
    for (std::size_t i = 0; i < d1; ++i) factor_count *= static_cast<std::size_t>(fine_mod);
    std::vector<long long> x1(d1), y1(d1);
    for (std::size_t yi = 0; yi < out_sp.size(); ++yi) {
        auto ya = out_sp.coords(yi);
        bool inside = true;
        std::vector<long long> tail(d);
        for (std::size_t j = 0; j < d; ++j) {
            if (j >= off && j < off + d1) continue;
            if (ya[j] % scale != 0) {
                inside = false;
                break;
            }
            tail[j] = (ya[j] / scale) % fine_mod;
        }
        if (!inside) continue;  // inert factor outside the original support: 0
        for (std::size_t j = 0; j < d1; ++j) y1[j] = ya[off + j];
        Cyclo acc;
        std::vector<long long> xa = tail;
        for (std::size_t code = 0; code < factor_count; ++code) {
            std::size_t c = code;
            for (std::size_t j = 0; j < d1; ++j) {
                xa[off + j] = static_cast<long long>(c % static_cast<std::size_t>(fine_mod));
                c /= static_cast<std::size_t>(fine_mod);
            }
            const Cyclo& fv = fine.value(fine.space().index(xa));
            if (fv.is_zero()) continue;
            for (std::size_t j = 0; j < d1; ++j) x1[j] = xa[off + j];
            acc += fv * kernel.eval(x1, y1);
        }
        out.set_value(yi, vol * acc);
    }
    return out;
}

}  // namespace xact
