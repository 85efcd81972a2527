#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "xact/gf.hpp"
#include "xact/gtilde.hpp"
#include "xact/matrix.hpp"
#include "xact/orbits.hpp"
#include "xact/point_x.hpp"
#include "xact/subspace.hpp"

namespace xact {

/// Y = {(v, phi) : <phi, v> = 0}.
template <class K>
bool in_Y(const Vec<K>& v, const Covec<K>& phi) {
    return pairing(phi, v).is_zero();
}

/// Membership tester for Q_A = {(v,phi) : v(x)phi in [A, gl(V)]}, with the
/// tangent space precomputed once. Defined for nilpotent A only.
template <class K>
class QaTester {
public:
    explicit QaTester(Mat<K> a) : a_(std::move(a)), ad_(ad_image(a_)) {
        if (!is_nilpotent(a_)) throw std::invalid_argument("Q_A: non-nilpotent operator");
    }

    const Mat<K>& a() const { return a_; }
    const Subspace<K>& tangent() const { return ad_; }

    bool contains(const Vec<K>& v, const Covec<K>& phi) const {
        return solve_in_subspace(rank_one(v, phi), ad_).has_value();
    }

private:
    Mat<K> a_;
    Subspace<K> ad_;
};

template <class K>
bool in_QA(const Mat<K>& a, const Vec<K>& v, const Covec<K>& phi) {
    return QaTester<K>(a).contains(v, phi);
}

/// The kernel flag F^i = Ker A^i = Im A^{r-i} of the Jordan block J_r, and
/// the dual flag L^i = (F^{r-i})^perp = Im (A*)^{r-i} = Ker (A*)^i. All three
/// descriptions are computed independently and must agree.
template <class K>
struct JordanFlags {
    std::size_t r = 0;
    std::vector<Subspace<K>> F;  // F[0..r] in V_r
    std::vector<Subspace<K>> L;  // L[0..r] in V_r^*
};

template <class K>
JordanFlags<K> flag_spaces(std::size_t r, const K& exemplar) {
    const K ex = zero_like(exemplar);
    Mat<K> a = jordan_matrix(std::vector<std::size_t>{r}, ex);
    JordanFlags<K> out;
    out.r = r;
    for (std::size_t i = 0; i <= r; ++i) {
        Mat<K> ai = mat_pow(a, i);
        Mat<K> ari = mat_pow(a, r - i);
        // F^i three ways
        Subspace<K> f_ker = Subspace<K>::kernel_of(ai, ex);
        Subspace<K> f_im = Subspace<K>::span_of_rows(ari.transpose(), ex);  // column space
        if (f_ker != f_im) throw std::logic_error("flag_spaces: Ker A^i != Im A^{r-i}");
        // L^i three ways: annihilator of F^{r-i}; row space of A^{r-i};
        // kernel of phi -> phi A^i
        Subspace<K> l_im = Subspace<K>::span_of_rows(ari, ex);
        Subspace<K> l_ker = Subspace<K>::kernel_of(ai.transpose(), ex);
        if (l_im != l_ker) throw std::logic_error("flag_spaces: Im (A*)^{r-i} != Ker (A*)^i");
        out.F.push_back(std::move(f_ker));
        out.L.push_back(std::move(l_im));
    }
    for (std::size_t i = 0; i <= r; ++i)
        if (annihilator(out.F[r - i]) != out.L[i])
            throw std::logic_error("flag_spaces: L^i != (F^{r-i})^perp");
    return out;
}

/// Z = union over i of F^i + L^{r-i}.
template <class K>
bool in_Z(const Vec<K>& v, const Covec<K>& phi, const JordanFlags<K>& flags) {
    for (std::size_t i = 0; i <= flags.r; ++i)
        if (flags.F[i].contains(v.entries()) && flags.L[flags.r - i].contains(phi.entries()))
            return true;
    return false;
}

/// rho(lambda)(v, phi) = (lambda v, lambda^{-1} phi), lambda nonzero.
template <class K>
std::pair<Vec<K>, Covec<K>> rho(const K& lambda, const Vec<K>& v, const Covec<K>& phi) {
    if (lambda.is_zero()) throw std::invalid_argument("rho: lambda must be nonzero");
    return {lambda * v, lambda.inverse() * phi};
}

/// Sampled membership test for
///   Otilde = (O x Y) ∩ ⋂_lambda nu_lambda^{-1}(N_i x Y).
/// Necessary condition only: the defining intersection runs over the whole
/// field; over a finite field sampling every element makes the test exact.
/// The operator of the point must be nilpotent with orbit dimension exactly i.
template <class K>
bool in_Otilde_sampled(const PointX<K>& pt, long long i, const std::vector<K>& lambda_samples) {
    pt.check();
    NilpotentProfile prof = nilpotent_profile(pt.A);  // rejects non-nilpotent
    if (prof.orbit_dim != i)
        throw std::invalid_argument("in_Otilde_sampled: orbit dimension of A must equal i");
    if (!in_Y(pt.v, pt.phi)) return false;
    Mat<K> vphi = rank_one(pt.v, pt.phi);
    for (const K& lam : lambda_samples) {
        Mat<K> b = pt.A + lam * vphi;  // nu_lambda fixes (v, phi); <phi,v> = 0 here
        if (!is_nilpotent(b)) return false;
        if (nilpotent_profile(b).orbit_dim > i) return false;
    }
    return true;
}

/// Documented default sample set over Q.
inline std::vector<Rat> default_lambda_samples(const Rat&) {
    return {Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2)};
}

/// Over a finite field: every element, which makes the Otilde intersection
/// exact rather than sampled.
inline std::vector<Ffq> default_lambda_samples(const Ffq& exemplar) {
    std::vector<Ffq> out;
    std::uint64_t q = exemplar.ctx()->q();
    out.reserve(q);
    for (std::uint64_t idx = 0; idx < q; ++idx)
        out.push_back(Ffq::from_index(exemplar.ctx(), idx));
    return out;
}

/// Stabilizer check at z0 = (e_n, lambda e_n^*), with the Aut-branch block
/// structure the Gtilde_{n-1} identification reads off.
template <class K>
struct StabilizerZ0Report {
    bool stabilizes = false;
    bool aut_branch = false;
    bool last_col_is_en = false;
    bool last_row_is_en_star = false;
    std::optional<Mat<K>> corner_block;  // top-left (n-1)x(n-1), Aut branch only
};

template <class K>
StabilizerZ0Report<K> stabilizer_check_z0(const Gtilde<K>& g, const K& lambda) {
    if (lambda.is_zero()) throw std::invalid_argument("stabilizer_check_z0: lambda nonzero");
    std::size_t n = g.n();
    const K ex = zero_like(lambda);
    Vec<K> e_n = Vec<K>::unit(n, n - 1, ex);
    Covec<K> z_phi = lambda * Covec<K>::unit(n, n - 1, ex);
    auto [v2, phi2] = act_pair(g, e_n, z_phi);
    StabilizerZ0Report<K> rep;
    rep.stabilizes = (v2 == e_n && phi2 == z_phi);
    rep.aut_branch = g.is_aut();
    if (g.is_aut()) {
        const Mat<K>& m = g.matrix();
        rep.last_col_is_en = true;
        rep.last_row_is_en_star = true;
        for (std::size_t i = 0; i < n; ++i) {
            K want = i + 1 == n ? one_like(ex) : ex;
            if (!(m(i, n - 1) == want)) rep.last_col_is_en = false;
            if (!(m(n - 1, i) == want)) rep.last_row_is_en_star = false;
        }
        if (rep.stabilizes && n >= 1) rep.corner_block = m.block(0, 0, n - 1, n - 1);
    }
    return rep;
}

}  // namespace xact
