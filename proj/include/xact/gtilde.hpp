#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "xact/matrix.hpp"
#include "xact/point_x.hpp"

namespace xact {

/// Element of the group Gtilde = Aut(V) ⊔ Iso(V, V*). An Iso is stored as the
/// matrix H of v -> t(Hv) in the standard bases. Multiplication follows the
/// coordinate-free composition rules:
///   g x g' = g.g'        h x g  = h.g
///   g x h  = (g*)^-1 . h h x h' = (h*)^-1 . h'
/// which on matrices read Aut(G G'), Iso(H G), Iso(G^-T H), Aut(H^-T H').
template <class K>
class Gtilde {
public:
    enum class Kind { Aut, Iso };

    static Gtilde aut(Mat<K> g) { return Gtilde(Kind::Aut, std::move(g)); }
    static Gtilde iso(Mat<K> h) { return Gtilde(Kind::Iso, std::move(h)); }

    static Gtilde identity(std::size_t n, const K& ex) {
        return aut(Mat<K>::identity(n, ex));
    }

    /// The involution T acting by (A,v,phi) -> (tA, t.phi, t.v): the Iso whose
    /// matrix is the identity (e_i -> e_i^*).
    static Gtilde transposition(std::size_t n, const K& ex) {
        return iso(Mat<K>::identity(n, ex));
    }

    /// The symmetric form e_i -> e*_{n+1-i} used for the Jordan-block
    /// centralizer argument.
    static Gtilde antidiag_form(std::size_t n, const K& ex) {
        Mat<K> h = Mat<K>::zero(n, n, ex);
        for (std::size_t i = 0; i < n; ++i) h(n - 1 - i, i) = one_like(ex);
        return iso(std::move(h));
    }

    Kind kind() const { return kind_; }
    bool is_aut() const { return kind_ == Kind::Aut; }
    const Mat<K>& matrix() const { return m_; }
    std::size_t n() const { return m_.rows(); }

    /// The sign character: +1 on Aut, -1 on Iso.
    int chi() const { return is_aut() ? 1 : -1; }

    friend Gtilde operator*(const Gtilde& x, const Gtilde& y) {
        if (x.n() != y.n()) throw std::invalid_argument("Gtilde: dimension mismatch");
        if (x.is_aut() && y.is_aut()) return aut(x.m_ * y.m_);
        if (!x.is_aut() && y.is_aut()) return iso(x.m_ * y.m_);
        Mat<K> xit = inverse(x.m_).transpose();
        if (x.is_aut()) return iso(xit * y.m_);
        return aut(xit * y.m_);
    }

    Gtilde inverse_el() const {
        if (is_aut()) return aut(inverse(m_));
        return iso(m_.transpose());
    }

    friend bool operator==(const Gtilde& a, const Gtilde& b) {
        return a.kind_ == b.kind_ && a.m_ == b.m_;
    }
    friend bool operator!=(const Gtilde& a, const Gtilde& b) { return !(a == b); }

    std::string to_string() const {
        return std::string(is_aut() ? "Aut" : "Iso") + m_.to_string();
    }

private:
    Kind kind_;
    Mat<K> m_;

    Gtilde(Kind k, Mat<K> m) : kind_(k), m_(std::move(m)) {
        m_.require_square();
        if (!is_invertible(m_)) throw std::domain_error("Gtilde: singular matrix");
    }
};

/// Action on X: Aut(g) by (gAg^-1, gv, phi g^-1) and Iso(h) by
/// ((hAh^-1)*, (h*)^-1 phi, hv).
template <class K>
PointX<K> act(const Gtilde<K>& x, const PointX<K>& pt) {
    if (x.n() != pt.n()) throw std::invalid_argument("act: dimension mismatch");
    const Mat<K>& m = x.matrix();
    Mat<K> mi = inverse(m);
    if (x.is_aut())
        return make_point(m * pt.A * mi, m * pt.v, pt.phi * mi);
    Mat<K> mit = mi.transpose();
    Vec<K> tphi(pt.phi.entries());
    Vec<K> new_v = mit * tphi;
    Vec<K> hv = m * pt.v;
    return make_point(mit * pt.A.transpose() * m.transpose(), std::move(new_v),
                      Covec<K>(hv.entries()));
}

/// The induced action on V + V* alone (the pr_2 part).
template <class K>
std::pair<Vec<K>, Covec<K>> act_pair(const Gtilde<K>& x, const Vec<K>& v, const Covec<K>& phi) {
    if (x.n() != v.dim() || x.n() != phi.dim())
        throw std::invalid_argument("act_pair: dimension mismatch");
    const Mat<K>& m = x.matrix();
    Mat<K> mi = inverse(m);
    if (x.is_aut()) return {m * v, phi * mi};
    Vec<K> tphi(phi.entries());
    Vec<K> hv = m * v;
    return {mi.transpose() * tphi, Covec<K>(hv.entries())};
}

/// The displayed coordinate formula T(A,v,phi) = (tA, t.phi, t.v), kept as an
/// independent implementation to cross-check against act(transposition, .).
template <class K>
PointX<K> coordinate_T_act(const PointX<K>& pt) {
    return make_point(pt.A.transpose(), Vec<K>(pt.phi.entries()), Covec<K>(pt.v.entries()));
}

/// nu_lambda(A,v,phi) = (A + lambda v(x)phi - lambda <phi,v>/n Id, v, phi).
/// The trace correction needs char(K) coprime to n; it vanishes on Y, where
/// every use in the containment suites lives.
template <class K>
PointX<K> nu(const K& lambda, const PointX<K>& pt) {
    pt.check();
    std::size_t n = pt.n();
    if (n == 0) throw std::invalid_argument("nu: need n >= 1");
    Mat<K> m = pt.A + lambda * rank_one(pt.v, pt.phi);
    K c = lambda * pairing(pt.phi, pt.v);
    if (!c.is_zero()) {
        K denom = from_int_like(lambda, static_cast<long long>(n));
        if (denom.is_zero())
            throw std::domain_error("nu: field characteristic divides n");
        K shift = c * denom.inverse();
        for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i) - shift;
    }
    return make_point(std::move(m), pt.v, pt.phi);
}

}  // namespace xact
