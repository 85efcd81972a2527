#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "xact/matrix.hpp"

namespace xact {

/// Linear subspace given by a canonical basis: reduced-echelon rows, pivots 1,
/// zero rows stripped. Equality of subspaces is therefore plain comparison.
template <class K>
class Subspace {
public:
    static Subspace zero_subspace(std::size_t ambient, const K& exemplar) {
        Subspace s;
        s.ambient_ = ambient;
        s.ex_ = zero_like(exemplar);
        s.basis_ = Mat<K>(0, ambient, s.ex_);
        return s;
    }

    static Subspace full_space(std::size_t ambient, const K& exemplar) {
        Subspace s;
        s.ambient_ = ambient;
        s.ex_ = zero_like(exemplar);
        s.basis_ = Mat<K>::identity(ambient, exemplar);
        for (std::size_t i = 0; i < ambient; ++i) s.pivots_.push_back(i);
        return s;
    }

    /// Row span of the given matrix.
    static Subspace span_of_rows(Mat<K> rows, const K& exemplar) {
        Subspace s;
        s.ambient_ = rows.cols();
        s.ex_ = zero_like(exemplar);
        auto pivots = rref(rows);
        Mat<K> basis(pivots.size(), rows.cols(), s.ex_);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            for (std::size_t j = 0; j < rows.cols(); ++j) basis(i, j) = rows(i, j);
        s.basis_ = std::move(basis);
        s.pivots_.assign(pivots.begin(), pivots.end());
        return s;
    }

    static Subspace span_of(const std::vector<std::vector<K>>& vectors, std::size_t ambient,
                            const K& exemplar) {
        Mat<K> rows(vectors.size(), ambient, zero_like(exemplar));
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            if (vectors[i].size() != ambient)
                throw std::invalid_argument("Subspace: ambient dimension mismatch");
            for (std::size_t j = 0; j < ambient; ++j) rows(i, j) = vectors[i][j];
        }
        return span_of_rows(std::move(rows), exemplar);
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Mat<K>& basis() const { return basis_; }
    const K& exemplar() const { return ex_; }

    /// Coordinates of x in the canonical basis, or nullopt if x lies outside.
    std::optional<std::vector<K>> coords_of(const std::vector<K>& x) const {
        if (x.size() != ambient_) throw std::invalid_argument("Subspace: dimension mismatch");
        std::vector<K> res = x;
        std::vector<K> coords;
        coords.reserve(dim());
        for (std::size_t r = 0; r < dim(); ++r) {
            K c = res[pivots_[r]];
            coords.push_back(c);
            if (!c.is_zero())
                for (std::size_t j = 0; j < ambient_; ++j)
                    res[j] = res[j] - c * basis_(r, j);
        }
        for (const auto& v : res)
            if (!v.is_zero()) return std::nullopt;
        return coords;
    }

    bool contains(const std::vector<K>& x) const { return coords_of(x).has_value(); }

    bool contains_subspace(const Subspace& other) const {
        for (std::size_t r = 0; r < other.dim(); ++r)
            if (!contains(other.basis_.row(r))) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    static Subspace sum(const Subspace& a, const Subspace& b) {
        if (a.ambient_ != b.ambient_) throw std::invalid_argument("Subspace: ambient mismatch");
        Mat<K> rows(a.dim() + b.dim(), a.ambient_, a.ex_);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.ambient_; ++j) rows(i, j) = a.basis_(i, j);
        for (std::size_t i = 0; i < b.dim(); ++i)
            for (std::size_t j = 0; j < a.ambient_; ++j) rows(a.dim() + i, j) = b.basis_(i, j);
        return span_of_rows(std::move(rows), a.ex_);
    }

    /// {x : Bx = 0 for every basis row B}, i.e. the joint kernel.
    static Subspace kernel_of(const Mat<K>& m, const K& exemplar) {
        auto null_basis = kernel(m, exemplar);
        std::vector<std::vector<K>> rows;
        rows.reserve(null_basis.size());
        for (auto& v : null_basis) rows.push_back(v.entries());
        return span_of(rows, m.cols(), exemplar);
    }

private:
    std::size_t ambient_ = 0;
    K ex_{};
    Mat<K> basis_;
    std::vector<std::size_t> pivots_;
};

/// Image of B -> [A, B] inside End(V), a subspace of the n^2-dim operator
/// space (row-major vectorization). Its dimension is n^2 - dim centralizer(A).
template <class K>
Subspace<K> ad_image(const Mat<K>& a) {
    a.require_square();
    require_desk_scale(a.rows());
    std::size_t n = a.rows();
    const K ex = zero_like(a.exemplar());
    Mat<K> rows(n * n, n * n, ex);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Mat<K> e = Mat<K>::zero(n, n, ex);
            e(i, j) = one_like(ex);
            auto c = vectorize(commutator(a, e));
            for (std::size_t k = 0; k < n * n; ++k) rows(i * n + j, k) = c[k];
        }
    return Subspace<K>::span_of_rows(std::move(rows), ex);
}

/// Membership of an operator in a subspace of End(V), with witness
/// coordinates in the canonical basis on success.
template <class K>
std::optional<std::vector<K>> solve_in_subspace(const Mat<K>& target, const Subspace<K>& s) {
    auto v = vectorize(target);
    if (v.size() != s.ambient())
        throw std::invalid_argument("solve_in_subspace: ambient dimension mismatch");
    return s.coords_of(v);
}

/// {B : [A,B] = 0} as a subspace of End(V).
template <class K>
Subspace<K> centralizer(const Mat<K>& a) {
    a.require_square();
    require_desk_scale(a.rows());
    std::size_t n = a.rows();
    const K ex = zero_like(a.exemplar());
    // columns indexed by vec(B), rows by vec([A,B])
    Mat<K> t(n * n, n * n, ex);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Mat<K> e = Mat<K>::zero(n, n, ex);
            e(i, j) = one_like(ex);
            auto c = vectorize(commutator(a, e));
            for (std::size_t k = 0; k < n * n; ++k) t(k, i * n + j) = c[k];
        }
    return Subspace<K>::kernel_of(t, ex);
}

/// Annihilator {phi in V^* : phi(v) = 0 for all v in S}, rows = covectors.
template <class K>
Subspace<K> annihilator(const Subspace<K>& s) {
    return Subspace<K>::kernel_of(s.basis(), s.exemplar());
}

/// Orthocomplement inside V_r + V_r^* for the canonical symmetric pairing
/// B((v,phi),(w,psi)) = psi(v) + phi(w); ambient dimension must be 2r.
template <class K>
Subspace<K> orthocomplement(const Subspace<K>& s) {
    if (s.ambient() % 2 != 0)
        throw std::invalid_argument("orthocomplement: ambient must be V_r + V_r^*");
    std::size_t r = s.ambient() / 2;
    const K ex = s.exemplar();
    if (s.dim() == 0) return Subspace<K>::full_space(s.ambient(), ex);
    // Gram matrix [[0, I], [I, 0]]
    Mat<K> constraints(s.dim(), s.ambient(), ex);
    for (std::size_t i = 0; i < s.dim(); ++i)
        for (std::size_t j = 0; j < s.ambient(); ++j)
            constraints(i, j) = s.basis()(i, (j + r) % (2 * r));
    return Subspace<K>::kernel_of(constraints, ex);
}

}  // namespace xact
