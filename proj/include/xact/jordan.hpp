#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "xact/matrix.hpp"
#include "xact/orbits.hpp"
#include "xact/point_x.hpp"
#include "xact/poly.hpp"
#include "xact/rat.hpp"

namespace xact {

/// A = semisimple + nilpotent with the two parts commuting; both are
/// polynomials in A.
struct JCDecomp {
    Mat<Rat> semisimple;
    Mat<Rat> nilpotent;
};

/// Factorization-free Jordan-Chevalley over Q: take the squarefree part g of
/// the characteristic polynomial and Newton-iterate X <- X - g(X) g'(X)^{-1}.
/// g'(X) stays invertible (unit plus nilpotent), and g(X) squares its
/// nilpotency order each step, so log2(n)+1 iterations suffice.
inline JCDecomp jordan_chevalley(const Mat<Rat>& a) {
    a.require_square();
    require_desk_scale(a.rows());
    if (a.rows() == 0) throw std::invalid_argument("jordan_chevalley: empty matrix");
    Poly<Rat> g = char_poly(a).squarefree_part();
    Poly<Rat> gp = g.derivative();
    Mat<Rat> x = a;
    for (std::size_t iter = 0; iter < 64; ++iter) {
        Mat<Rat> gx = eval_poly_at(g, x);
        if (gx.is_zero()) return JCDecomp{x, a - x};
        x = x - gx * inverse(eval_poly_at(gp, x));
    }
    throw std::logic_error("jordan_chevalley: Newton iteration failed to terminate");
}

/// The fibration map J on a char-poly fiber: A -> A_s.
inline Mat<Rat> jc_map(const Mat<Rat>& a) { return jordan_chevalley(a).semisimple; }

inline Mat<Rat> jc_map(const PointX<Rat>& pt) { return jc_map(pt.A); }

/// Minimal polynomial: the first monic x^d - sum c_j x^j with A^d dependent
/// on lower powers.
template <class K>
Poly<K> min_poly(const Mat<K>& a) {
    a.require_square();
    require_desk_scale(a.rows());
    std::size_t n = a.rows();
    if (n == 0) throw std::invalid_argument("min_poly: empty matrix");
    const K ex = zero_like(a.exemplar());
    std::vector<Mat<K>> powers{Mat<K>::identity(n, a.exemplar())};
    for (std::size_t d = 1; d <= n; ++d) {
        powers.push_back(powers.back() * a);
        Mat<K> cols(n * n, d, ex);
        for (std::size_t j = 0; j < d; ++j) {
            auto vj = vectorize(powers[j]);
            for (std::size_t k = 0; k < n * n; ++k) cols(k, j) = vj[k];
        }
        auto sol = solve_linear(cols, vectorize(powers[d]));
        if (!sol) continue;
        std::vector<K> coeffs(d + 1, ex);
        for (std::size_t j = 0; j < d; ++j) coeffs[j] = -(*sol)[j];
        coeffs[d] = one_like(ex);
        return Poly<K>::from_coeffs(std::move(coeffs), ex);
    }
    throw std::logic_error("min_poly: no annihilator found below Cayley-Hamilton degree");
}

template <class K>
bool is_semisimple(const Mat<K>& a) {
    return min_poly(a).is_squarefree();
}

/// One factor GL_k(E) of the Levi centralizer of a semisimple element, where
/// E is the extension generated by an irreducible factor of degree d.
struct LeviFactor {
    std::size_t multiplicity = 0;  // k: how often the factor divides char poly
    std::size_t degree = 0;        // d = [E : F]
};

/// dim of Prod GL_{k_i}(E_i) as an F-variety: sum k_i^2 d_i.
inline long long levi_dimension(const std::vector<LeviFactor>& factors) {
    long long dim = 0;
    for (const auto& f : factors)
        dim += static_cast<long long>(f.multiplicity) * f.multiplicity * f.degree;
    return dim;
}

/// Companion matrix of a monic polynomial.
template <class K>
Mat<K> companion(const Poly<K>& p) {
    if (!p.is_monic() || p.degree() < 1)
        throw std::invalid_argument("companion: monic polynomial of degree >= 1 required");
    std::size_t d = static_cast<std::size_t>(p.degree());
    const K ex = zero_like(p.exemplar());
    Mat<K> m = Mat<K>::zero(d, d, ex);
    for (std::size_t i = 0; i + 1 < d; ++i) m(i + 1, i) = one_like(ex);
    for (std::size_t i = 0; i < d; ++i) m(i, d - 1) = -p.coeff(i);
    return m;
}

/// Block-diagonal semisimple operator with each irreducible factor repeated
/// according to its multiplicity. The caller supplies distinct irreducibles;
/// semisimplicity is checked via the minimal polynomial.
inline Mat<Rat> build_semisimple(const std::vector<std::pair<Poly<Rat>, std::size_t>>& factors) {
    Mat<Rat> m;
    for (const auto& [f, mult] : factors)
        for (std::size_t c = 0; c < mult; ++c) m = direct_sum(m, companion(f));
    if (!is_semisimple(m))
        throw std::invalid_argument("build_semisimple: factors were not distinct irreducibles");
    return m;
}

}  // namespace xact
