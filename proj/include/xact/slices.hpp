#pragma once

#include <stdexcept>

#include "xact/matrix.hpp"
#include "xact/point_x.hpp"

namespace xact {

/// gl_{n+1} -> sl_{n+1}: subtract tr(A)/(n+1) Id. On a fixed-trace slice this
/// is a bijection commuting with conjugation and transposition.
template <class K>
Mat<K> trace_slice(const Mat<K>& a) {
    a.require_square();
    if (a.rows() == 0) return a;
    K t = a.trace();
    Mat<K> r = a;
    if (!t.is_zero()) {
        K denom = from_int_like(a.exemplar(), static_cast<long long>(a.rows()));
        if (denom.is_zero())
            throw std::domain_error("trace_slice: field characteristic divides the dimension");
        K shift = t * denom.inverse();
        for (std::size_t i = 0; i < a.rows(); ++i) r(i, i) = r(i, i) - shift;
    }
    return r;
}

/// The slice {B in sl_{n+1} : B_{n+1,n+1} = lambda} -> X_n:
///   B = [[A, v], [phi, lambda]]  |->  (A + (lambda/n) Id, v, phi).
template <class K>
PointX<K> block_slice(const Mat<K>& b) {
    b.require_square();
    if (b.rows() < 2) throw std::invalid_argument("block_slice: need n >= 1");
    if (!b.trace().is_zero()) throw std::invalid_argument("block_slice: input must be traceless");
    std::size_t n = b.rows() - 1;
    K lambda = b(n, n);
    Mat<K> a = b.block(0, 0, n, n);
    if (!lambda.is_zero()) {
        K denom = from_int_like(lambda, static_cast<long long>(n));
        if (denom.is_zero())
            throw std::domain_error("block_slice: field characteristic divides n");
        K shift = lambda * denom.inverse();
        for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i) + shift;
    }
    std::vector<K> v(n, zero_like(lambda)), phi(n, zero_like(lambda));
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = b(i, n);
        phi[i] = b(n, i);
    }
    return make_point(std::move(a), Vec<K>(std::move(v)), Covec<K>(std::move(phi)));
}

/// Inverse of block_slice for the given corner value lambda.
template <class K>
Mat<K> block_unslice(const PointX<K>& pt, const K& lambda) {
    pt.check();
    std::size_t n = pt.n();
    if (n == 0) throw std::invalid_argument("block_unslice: need n >= 1");
    Mat<K> b = Mat<K>::zero(n + 1, n + 1, lambda);
    Mat<K> a = pt.A;
    if (!lambda.is_zero()) {
        K denom = from_int_like(lambda, static_cast<long long>(n));
        if (denom.is_zero())
            throw std::domain_error("block_unslice: field characteristic divides n");
        K shift = lambda * denom.inverse();
        for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i) - shift;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = a(i, j);
    for (std::size_t i = 0; i < n; ++i) {
        b(i, n) = pt.v[i];
        b(n, i) = pt.phi[i];
    }
    b(n, n) = lambda;
    return b;
}

}  // namespace xact
