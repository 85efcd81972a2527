#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "xact/matrix.hpp"

namespace xact {

/// Classification data of a nilpotent orbit: the Jordan partition, the rank
/// sequence rank(A^k), and the orbit dimension n^2 - sum of squared parts of
/// the conjugate partition.
struct NilpotentProfile {
    std::vector<std::size_t> partition;  // weakly decreasing
    std::vector<std::size_t> rank_seq;   // rank(A^k), k = 0..n
    long long orbit_dim = 0;

    std::size_t n() const {
        std::size_t s = 0;
        for (auto part : partition) s += part;
        return s;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < partition.size(); ++i)
            s += (i ? "," : "") + std::to_string(partition[i]);
        return s + "), dim " + std::to_string(orbit_dim);
    }
};

inline std::vector<std::size_t> conjugate_partition(const std::vector<std::size_t>& p) {
    std::vector<std::size_t> c;
    if (p.empty()) return c;
    for (std::size_t k = 1; k <= p[0]; ++k) {
        std::size_t cnt = 0;
        for (auto part : p)
            if (part >= k) ++cnt;
        c.push_back(cnt);
    }
    return c;
}

inline long long orbit_dim_from_partition(const std::vector<std::size_t>& p) {
    std::size_t n = 0;
    for (auto part : p) n += part;
    long long dim = static_cast<long long>(n) * static_cast<long long>(n);
    for (auto c : conjugate_partition(p)) dim -= static_cast<long long>(c) * c;
    return dim;
}

/// rank(A^k) for the Jordan form of the partition: sum_i max(lambda_i - k, 0).
inline std::vector<std::size_t> rank_seq_from_partition(const std::vector<std::size_t>& p) {
    std::size_t n = 0;
    for (auto part : p) n += part;
    std::vector<std::size_t> r;
    for (std::size_t k = 0; k <= n; ++k) {
        std::size_t rk = 0;
        for (auto part : p) rk += part > k ? part - k : 0;
        r.push_back(rk);
    }
    return r;
}

inline std::vector<std::vector<std::size_t>> partitions_of(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t rem, std::size_t maxpart) -> void {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t part = std::min(rem, maxpart); part >= 1; --part) {
            cur.push_back(part);
            self(self, rem - part, part);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

template <class K>
Mat<K> jordan_matrix(const std::vector<std::size_t>& partition, const K& exemplar) {
    std::size_t n = 0;
    for (auto p : partition) n += p;
    Mat<K> m = Mat<K>::zero(n, n, exemplar);
    std::size_t off = 0;
    for (auto p : partition) {
        for (std::size_t i = 0; i + 1 < p; ++i) m(off + i, off + i + 1) = one_like(exemplar);
        off += p;
    }
    return m;
}

template <class K>
bool is_nilpotent(const Mat<K>& a) {
    a.require_square();
    return mat_pow(a, a.rows()).is_zero();
}

/// Partition, rank sequence and orbit dimension of a nilpotent operator.
/// Rejects non-nilpotent input.
template <class K>
NilpotentProfile nilpotent_profile(const Mat<K>& a) {
    a.require_square();
    require_desk_scale(a.rows());
    std::size_t n = a.rows();
    if (!is_nilpotent(a)) throw std::invalid_argument("nilpotent_profile: non-nilpotent input");
    NilpotentProfile prof;
    Mat<K> pow = Mat<K>::identity(n, a.exemplar());
    for (std::size_t k = 0; k <= n; ++k) {
        prof.rank_seq.push_back(rank(pow));
        pow = pow * a;
    }
    // blocks of size >= k: rank(A^{k-1}) - rank(A^k)
    std::vector<std::size_t> ge(n + 2, 0);
    for (std::size_t k = 1; k <= n; ++k) ge[k] = prof.rank_seq[k - 1] - prof.rank_seq[k];
    for (std::size_t size = n; size >= 1; --size)
        for (std::size_t cnt = ge[size] - (size < n ? ge[size + 1] : 0); cnt > 0; --cnt)
            prof.partition.push_back(size);
    std::sort(prof.partition.rbegin(), prof.partition.rend());
    prof.orbit_dim = orbit_dim_from_partition(prof.partition);
    return prof;
}

/// A lies in the closure of the orbit of the given partition iff its rank
/// sequence is dominated entrywise.
template <class K>
bool in_orbit_closure(const Mat<K>& a, const std::vector<std::size_t>& partition) {
    NilpotentProfile prof = nilpotent_profile(a);
    auto bound = rank_seq_from_partition(partition);
    if (bound.size() != prof.rank_seq.size())
        throw std::invalid_argument("in_orbit_closure: size mismatch");
    for (std::size_t k = 0; k < bound.size(); ++k)
        if (prof.rank_seq[k] > bound[k]) return false;
    return true;
}

/// Membership in N_i, the union of nilpotent orbits of dimension <= i.
template <class K>
bool in_stratum(const Mat<K>& a, long long i) {
    return nilpotent_profile(a).orbit_dim <= i;
}

/// The same set described through closures: some partition of dimension <= i
/// dominates the rank sequence. Kept as an independent route for the suites.
template <class K>
bool in_stratum_by_dominance(const Mat<K>& a, long long i) {
    a.require_square();
    for (const auto& mu : partitions_of(a.rows()))
        if (orbit_dim_from_partition(mu) <= i && in_orbit_closure(a, mu)) return true;
    return false;
}

}  // namespace xact
