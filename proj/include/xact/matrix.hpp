#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "xact/poly.hpp"
#include "xact/rat.hpp"

namespace xact {

/// acc += a * b; scalar types may override to cut temporaries in hot loops.
template <class K>
inline void fused_add_mul(K& acc, const K& a, const K& b) {
    acc = acc + a * b;
}

/// Operators live on V_n with n <= 16; anything bigger is out of scope.
inline void require_desk_scale(std::size_t n) {
    if (n > 16)
        throw std::invalid_argument("dimension " + std::to_string(n) +
                                    " exceeds the desk-scale cap n <= 16");
}

template <class K>
class Vec;
template <class K>
class Covec;

/// Dense matrix over an exact field scalar.
template <class K>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, const K& fill)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Mat zero(std::size_t rows, std::size_t cols, const K& exemplar) {
        return Mat(rows, cols, zero_like(exemplar));
    }
    static Mat identity(std::size_t n, const K& exemplar) {
        Mat m = zero(n, n, exemplar);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(exemplar);
        return m;
    }
    static Mat from_rows(const std::vector<std::vector<K>>& rows) {
        if (rows.empty()) return Mat();
        Mat m(rows.size(), rows[0].size(), zero_like(rows[0][0]));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("Mat: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return a_.empty(); }

    K& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const K& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    /// Any entry, used to mint field constants of the right domain.
    const K& exemplar() const {
        if (a_.empty()) throw std::logic_error("Mat: empty matrix has no exemplar");
        return a_[0];
    }

    friend Mat operator+(const Mat& a, const Mat& b) {
        a.require_same_shape(b);
        Mat r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + b.a_[i];
        return r;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        a.require_same_shape(b);
        Mat r = a;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - b.a_[i];
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch in product");
        if (a.empty() || b.empty()) return Mat(a.rows_, b.cols_, K());
        Mat r = zero(a.rows_, b.cols_, a.exemplar());
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (b(k, j).is_zero()) continue;
                    fused_add_mul(r(i, j), a(i, k), b(k, j));
                }
            }
        return r;
    }
    friend Mat operator*(const K& s, const Mat& a) {
        Mat r = a;
        for (auto& x : r.a_) x = s * x;
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a.a_.size(); ++i)
            if (!(a.a_[i] == b.a_[i])) return false;
        return true;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    K trace() const {
        require_square();
        K t = zero_like(exemplar());
        for (std::size_t i = 0; i < rows_; ++i) t = t + (*this)(i, i);
        return t;
    }

    Mat transpose() const {
        if (empty()) return Mat(cols_, rows_, K());
        Mat r(cols_, rows_, exemplar());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Mat block(std::size_t r0, std::size_t c0, std::size_t h, std::size_t w) const {
        Mat r(h, w, exemplar());
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }

    std::vector<K> row(std::size_t i) const {
        return std::vector<K>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
    }
    std::vector<K> col(std::size_t j) const {
        std::vector<K> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (std::size_t j = 0; j < cols_; ++j)
                s += (j ? "," : "") + (*this)(i, j).to_string();
        }
        return s + "]";
    }

    void require_square() const {
        if (!is_square()) throw std::invalid_argument("Mat: square matrix required");
    }
    void require_same_shape(const Mat& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("Mat: shape mismatch");
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<K> a_;
};

/// Column vector in V_n.
template <class K>
class Vec {
public:
    Vec() = default;
    explicit Vec(std::vector<K> e) : e_(std::move(e)) {}
    static Vec zero(std::size_t n, const K& ex) { return Vec(std::vector<K>(n, zero_like(ex))); }
    static Vec unit(std::size_t n, std::size_t i, const K& ex) {
        Vec v = zero(n, ex);
        v[i] = one_like(ex);
        return v;
    }

    std::size_t dim() const { return e_.size(); }
    K& operator[](std::size_t i) { return e_[i]; }
    const K& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<K>& entries() const { return e_; }

    friend Vec operator+(const Vec& a, const Vec& b) {
        Vec r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] + b.e_[i];
        return r;
    }
    friend Vec operator-(const Vec& a, const Vec& b) {
        Vec r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] - b.e_[i];
        return r;
    }
    friend Vec operator*(const K& s, const Vec& a) {
        Vec r = a;
        for (auto& x : r.e_) x = s * x;
        return r;
    }
    friend bool operator==(const Vec& a, const Vec& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }
    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) s += (i ? "," : "") + e_[i].to_string();
        return s + ")";
    }

private:
    std::vector<K> e_;
};

/// Row covector in V_n^*.
template <class K>
class Covec {
public:
    Covec() = default;
    explicit Covec(std::vector<K> e) : e_(std::move(e)) {}
    static Covec zero(std::size_t n, const K& ex) {
        return Covec(std::vector<K>(n, zero_like(ex)));
    }
    static Covec unit(std::size_t n, std::size_t i, const K& ex) {
        Covec v = zero(n, ex);
        v[i] = one_like(ex);
        return v;
    }

    std::size_t dim() const { return e_.size(); }
    K& operator[](std::size_t i) { return e_[i]; }
    const K& operator[](std::size_t i) const { return e_[i]; }
    const std::vector<K>& entries() const { return e_; }

    friend Covec operator+(const Covec& a, const Covec& b) {
        Covec r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] + b.e_[i];
        return r;
    }
    friend Covec operator-(const Covec& a, const Covec& b) {
        Covec r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] - b.e_[i];
        return r;
    }
    friend Covec operator*(const K& s, const Covec& a) {
        Covec r = a;
        for (auto& x : r.e_) x = s * x;
        return r;
    }
    friend bool operator==(const Covec& a, const Covec& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Covec& a, const Covec& b) { return !(a == b); }
    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }
    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < e_.size(); ++i) s += (i ? "," : "") + e_[i].to_string();
        return s + ")*";
    }

private:
    std::vector<K> e_;
};

template <class K>
Vec<K> operator*(const Mat<K>& m, const Vec<K>& v) {
    if (m.cols() != v.dim()) throw std::invalid_argument("Mat*Vec: shape mismatch");
    Vec<K> r = Vec<K>::zero(m.rows(), m.exemplar());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] = r[i] + m(i, j) * v[j];
    return r;
}

template <class K>
Covec<K> operator*(const Covec<K>& phi, const Mat<K>& m) {
    if (m.rows() != phi.dim()) throw std::invalid_argument("Covec*Mat: shape mismatch");
    Covec<K> r = Covec<K>::zero(m.cols(), m.exemplar());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) r[j] = r[j] + phi[i] * m(i, j);
    return r;
}

/// <phi, v> = phi(v), the row-by-column product.
template <class K>
K pairing(const Covec<K>& phi, const Vec<K>& v) {
    if (phi.dim() != v.dim()) throw std::invalid_argument("pairing: dimension mismatch");
    if (phi.dim() == 0) throw std::invalid_argument("pairing: empty vectors");
    K acc = zero_like(phi[0]);
    for (std::size_t i = 0; i < v.dim(); ++i) acc = acc + phi[i] * v[i];
    return acc;
}

/// v (x) phi, the rank-one operator w -> <phi,w> v.
template <class K>
Mat<K> rank_one(const Vec<K>& v, const Covec<K>& phi) {
    if (v.dim() != phi.dim()) throw std::invalid_argument("rank_one: dimension mismatch");
    Mat<K> r(v.dim(), v.dim(), zero_like(v.dim() ? v[0] : K()));
    for (std::size_t i = 0; i < v.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j) r(i, j) = v[i] * phi[j];
    return r;
}

/// [A, B] = AB - BA.
template <class K>
Mat<K> commutator(const Mat<K>& a, const Mat<K>& b) {
    a.require_square();
    b.require_square();
    a.require_same_shape(b);
    return a * b - b * a;
}

template <class K>
Mat<K> mat_pow(const Mat<K>& a, std::size_t e) {
    a.require_square();
    Mat<K> r = Mat<K>::identity(a.rows(), a.exemplar());
    for (std::size_t i = 0; i < e; ++i) r = r * a;
    return r;
}

template <class K>
Mat<K> direct_sum(const Mat<K>& a, const Mat<K>& b) {
    a.require_square();
    b.require_square();
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::size_t n = a.rows() + b.rows();
    Mat<K> r = Mat<K>::zero(n, n, a.exemplar());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) r(a.rows() + i, a.rows() + j) = b(i, j);
    return r;
}

template <class K>
Vec<K> join_vec(const Vec<K>& a, const Vec<K>& b) {
    std::vector<K> e = a.entries();
    e.insert(e.end(), b.entries().begin(), b.entries().end());
    return Vec<K>(std::move(e));
}
template <class K>
std::pair<Vec<K>, Vec<K>> split_vec(const Vec<K>& v, std::size_t k) {
    std::vector<K> a(v.entries().begin(), v.entries().begin() + k);
    std::vector<K> b(v.entries().begin() + k, v.entries().end());
    return {Vec<K>(std::move(a)), Vec<K>(std::move(b))};
}
template <class K>
Covec<K> join_covec(const Covec<K>& a, const Covec<K>& b) {
    std::vector<K> e = a.entries();
    e.insert(e.end(), b.entries().begin(), b.entries().end());
    return Covec<K>(std::move(e));
}
template <class K>
std::pair<Covec<K>, Covec<K>> split_covec(const Covec<K>& v, std::size_t k) {
    std::vector<K> a(v.entries().begin(), v.entries().begin() + k);
    std::vector<K> b(v.entries().begin() + k, v.entries().end());
    return {Covec<K>(std::move(a)), Covec<K>(std::move(b))};
}

template <class K>
std::vector<K> vectorize(const Mat<K>& m) {
    std::vector<K> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

template <class K>
Mat<K> unvectorize(std::size_t n, const std::vector<K>& v) {
    Mat<K> m(n, n, zero_like(v.at(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
    return m;
}

namespace linalg_detail {

// content normalization keeps fraction-free-style growth under control over Q
template <class K>
inline void row_make_primitive(Mat<K>&, std::size_t) {}

inline void row_make_primitive(Mat<Rat>& m, std::size_t r) {
    BigInt den_lcm(1), num_gcd(0);
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Rat& x = m(r, j);
        if (x.is_zero()) continue;
        den_lcm = BigInt::lcm(den_lcm, x.denominator());
        num_gcd = BigInt::gcd(num_gcd, x.numerator());
    }
    if (num_gcd.is_zero()) return;
    Rat f(den_lcm, num_gcd);
    f = f.abs();
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = f * m(r, j);
}

}  // namespace linalg_detail

/// In-place reduced row echelon form; returns the pivot column of each pivot
/// row. Canonical: pivots are 1 with zeros above and below, so equal row
/// spaces produce identical matrices.
template <class K>
std::vector<std::size_t> rref(Mat<K>& m) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < m.cols() && lead < m.rows(); ++col) {
        std::size_t piv = lead;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        m.swap_rows(piv, lead);
        K inv = m(lead, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j) m(lead, j) = inv * m(lead, j);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead || m(r, col).is_zero()) continue;
            K f = m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(r, j) = m(r, j) - f * m(lead, j);
            if (r > lead) linalg_detail::row_make_primitive(m, r);
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

template <class K>
std::size_t rank(Mat<K> m) {
    return rref(m).size();
}

/// Basis of the right kernel {x : Mx = 0}. The exemplar parameter lets a
/// 0-row system (whole space) mint coordinates of the right field.
template <class K>
std::vector<Vec<K>> kernel(Mat<K> m, const K& exemplar) {
    std::size_t n = m.cols();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vec<K>> out;
    const K ex = zero_like(exemplar);
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        Vec<K> x = Vec<K>::zero(n, ex);
        x[j] = one_like(ex);
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m(r, j);
        out.push_back(std::move(x));
    }
    return out;
}

template <class K>
std::vector<Vec<K>> kernel(const Mat<K>& m) {
    return kernel(m, m.exemplar());
}

/// Exact inverse; throws std::domain_error on singular input.
template <class K>
Mat<K> inverse(const Mat<K>& a) {
    a.require_square();
    std::size_t n = a.rows();
    if (n == 0) return a;
    Mat<K> aug(n, 2 * n, zero_like(a.exemplar()));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n + i) = one_like(a.exemplar());
    }
    auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != n - 1)
        throw std::domain_error("Mat: singular matrix has no inverse");
    return aug.block(0, n, n, n);
}

template <class K>
bool is_invertible(const Mat<K>& a) {
    a.require_square();
    return rank(a) == a.rows();
}

/// One solution of Ax = b (free variables set to zero), or nullopt.
template <class K>
std::optional<std::vector<K>> solve_linear(const Mat<K>& a, const std::vector<K>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: shape mismatch");
    if (a.cols() == 0) {
        for (const auto& x : b)
            if (!x.is_zero()) return std::nullopt;
        return std::vector<K>{};
    }
    const K ex = zero_like(a.empty() ? b.at(0) : a.exemplar());
    Mat<K> aug(a.rows(), a.cols() + 1, ex);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // inconsistent
    std::vector<K> x(a.cols(), ex);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

/// Monic characteristic polynomial det(xI - A), by first-row expansion with
/// memoization over column subsets. Exact over any field, fine for n <= 16.
template <class K>
Poly<K> char_poly(const Mat<K>& a) {
    a.require_square();
    require_desk_scale(a.rows());
    std::size_t n = a.rows();
    if (n == 0) throw std::invalid_argument("char_poly: empty matrix");
    const K ex = zero_like(a.exemplar());
    std::unordered_map<std::uint32_t, Poly<K>> memo;
    // rec(mask) expands along row n - popcount(mask) over the columns in mask
    auto rec = [&](auto&& self, std::uint32_t mask) -> Poly<K> {
        if (mask == 0) return Poly<K>::constant(one_like(ex));
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::size_t row = n - static_cast<std::size_t>(__builtin_popcount(mask));
        Poly<K> acc(ex);
        bool negate = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            Poly<K> entry(ex);
            if (row == j)
                entry = Poly<K>::from_coeffs({-a(row, j), one_like(ex)}, ex);
            else if (!a(row, j).is_zero())
                entry = Poly<K>::constant(-a(row, j));
            if (!entry.is_zero()) {
                Poly<K> term = entry * self(self, mask & ~(1u << j));
                acc = negate ? acc - term : acc + term;
            }
            negate = !negate;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(rec, static_cast<std::uint32_t>((1ull << n) - 1));
}

/// P(A) by Horner.
template <class K>
Mat<K> eval_poly_at(const Poly<K>& p, const Mat<K>& a) {
    a.require_square();
    std::size_t n = a.rows();
    Mat<K> acc = Mat<K>::zero(n, n, a.exemplar());
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        acc = acc * a;
        for (std::size_t d = 0; d < n; ++d) acc(d, d) = acc(d, d) + p.coeff(i);
    }
    return acc;
}

}  // namespace xact
