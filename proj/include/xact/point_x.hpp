#pragma once

#include <stdexcept>
#include <string>

#include "xact/matrix.hpp"

namespace xact {

/// A point of X = sl(V) x V x V*: a traceless operator, a vector, a covector.
template <class K>
struct PointX {
    Mat<K> A;
    Vec<K> v;
    Covec<K> phi;

    std::size_t n() const { return v.dim(); }

    void check() const {
        A.require_square();
        if (A.rows() != v.dim() || A.rows() != phi.dim())
            throw std::invalid_argument("PointX: mismatched dimensions");
        if (!A.trace().is_zero()) throw std::invalid_argument("PointX: operator has a trace");
    }

    friend bool operator==(const PointX& a, const PointX& b) {
        return a.A == b.A && a.v == b.v && a.phi == b.phi;
    }
    friend bool operator!=(const PointX& a, const PointX& b) { return !(a == b); }

    std::string to_string() const {
        return "{A=" + A.to_string() + ", v=" + v.to_string() + ", phi=" + phi.to_string() + "}";
    }
};

template <class K>
PointX<K> make_point(Mat<K> a, Vec<K> v, Covec<K> phi) {
    PointX<K> p{std::move(a), std::move(v), std::move(phi)};
    p.check();
    return p;
}

}  // namespace xact
