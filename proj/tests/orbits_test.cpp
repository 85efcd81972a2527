#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xact/jordan.hpp"
#include "xact/orbits.hpp"
#include "xact/rng.hpp"
#include "xact/slices.hpp"
#include "xact/subspace.hpp"

using namespace xact;

namespace {

Mat<Rat> qmat(const std::vector<std::vector<long long>>& rows) {
    std::vector<std::vector<Rat>> r;
    for (const auto& row : rows) {
        std::vector<Rat> rr;
        for (auto v : row) rr.emplace_back(v);
        r.push_back(std::move(rr));
    }
    return Mat<Rat>::from_rows(r);
}

Mat<Rat> random_invertible(Rng& rng, std::size_t n) {
    Mat<Rat> l = Mat<Rat>::identity(n, Rat());
    Mat<Rat> u = Mat<Rat>::identity(n, Rat());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = Rat(rng.int_in(-3, 3));
            u(j, i) = Rat(rng.int_in(-3, 3));
        }
    return l * u;
}

}  // namespace

TEST_CASE("nilpotent_profile on frozen examples") {
    auto zero3 = Mat<Rat>::zero(3, 3, Rat());
    auto p0 = nilpotent_profile(zero3);
    CHECK(p0.partition == std::vector<std::size_t>{1, 1, 1});
    CHECK(p0.orbit_dim == 0);

    for (std::size_t n = 1; n <= 5; ++n) {
        auto jn = jordan_matrix(std::vector<std::size_t>{n}, Rat());
        auto p = nilpotent_profile(jn);
        CHECK(p.partition == std::vector<std::size_t>{n});
        CHECK(p.orbit_dim == static_cast<long long>(n * n - n));
        for (std::size_t k = 0; k <= n; ++k) CHECK(p.rank_seq[k] == n - k);
    }

    auto j21 = jordan_matrix(std::vector<std::size_t>{2, 1}, Rat());
    auto p = nilpotent_profile(j21);
    CHECK(p.partition == std::vector<std::size_t>{2, 1});
    CHECK(p.orbit_dim == 4);

    CHECK_THROWS_AS(nilpotent_profile(qmat({{1, 0}, {0, -1}})), std::invalid_argument);
}

TEST_CASE("orbit dimension formula vs tangent space, all partitions n <= 5") {
    for (std::size_t n = 1; n <= 5; ++n)
        for (const auto& part : partitions_of(n)) {
            auto a = jordan_matrix(part, Rat());
            auto prof = nilpotent_profile(a);
            CHECK(prof.partition == part);
            CHECK(prof.orbit_dim == static_cast<long long>(ad_image(a).dim()));
            CHECK(prof.orbit_dim % 2 == 0);
            // rank sequence is convex and matches the partition formula
            CHECK(prof.rank_seq == rank_seq_from_partition(part));
            for (std::size_t k = 1; k < prof.rank_seq.size() - 1; ++k)
                CHECK(prof.rank_seq[k - 1] + prof.rank_seq[k + 1] >= 2 * prof.rank_seq[k]);
        }
}

TEST_CASE("in_stratum thresholds and dominance route") {
    auto zero1 = Mat<Rat>::zero(1, 1, Rat());
    CHECK(in_stratum(zero1, 0));
    auto j21 = jordan_matrix(std::vector<std::size_t>{2, 1}, Rat());
    CHECK_FALSE(in_stratum(j21, 3));
    CHECK(in_stratum(j21, 4));
    Rng rng(11);
    for (std::size_t n = 1; n <= 5; ++n) {
        long long top = static_cast<long long>(n * n - n);
        for (const auto& part : partitions_of(n)) {
            auto a = jordan_matrix(part, Rat());
            auto g = random_invertible(rng, n);
            auto conj = g * a * inverse(g);
            CHECK(in_stratum(conj, top));  // N_i = N for i large enough
            for (long long i = -1; i <= top; ++i)
                CHECK(in_stratum(conj, i) == in_stratum_by_dominance(conj, i));
        }
    }
}

TEST_CASE("jordan_chevalley frozen examples") {
    auto j3 = jordan_matrix(std::vector<std::size_t>{3}, Rat());
    auto d1 = jordan_chevalley(j3);
    CHECK(d1.semisimple.is_zero());
    CHECK(d1.nilpotent == j3);

    auto diag = qmat({{1, 0}, {0, 2}});
    auto d2 = jordan_chevalley(diag);
    CHECK(d2.semisimple == diag);
    CHECK(d2.nilpotent.is_zero());

    auto shear = qmat({{1, 1}, {0, 1}});
    auto d3 = jordan_chevalley(shear);
    CHECK(d3.semisimple == Mat<Rat>::identity(2, Rat()));
    CHECK(d3.nilpotent == qmat({{0, 1}, {0, 0}}));
}

TEST_CASE("jordan_chevalley invariants on seeded matrices") {
    Rng rng(2024);
    int done = 0;
    while (done < 60) {
        std::size_t n = static_cast<std::size_t>(rng.int_in(1, 5));
        // random matrix with clustered eigenvalues: build from Jordan data, conjugate
        auto parts = partitions_of(n);
        auto part = parts[rng.below(parts.size())];
        Mat<Rat> a0;
        Mat<Rat> s0;
        for (auto k : part) {
            long long lam = rng.int_in(-3, 3);
            Mat<Rat> blk = jordan_matrix(std::vector<std::size_t>{k}, Rat());
            Mat<Rat> eye = Mat<Rat>::identity(k, Rat());
            for (std::size_t i = 0; i < k; ++i) blk(i, i) = Rat(lam);
            a0 = direct_sum(a0, blk);
            s0 = direct_sum(s0, Rat(lam) * eye);
        }
        auto g = random_invertible(rng, n);
        auto gi = inverse(g);
        auto a = g * a0 * gi;
        auto dec = jordan_chevalley(a);
        CHECK(dec.semisimple + dec.nilpotent == a);
        CHECK(commutator(dec.semisimple, dec.nilpotent).is_zero());
        CHECK(mat_pow(dec.nilpotent, n).is_zero());
        CHECK(min_poly(dec.semisimple).is_squarefree());
        // uniqueness: must agree with the construction
        CHECK(dec.semisimple == g * s0 * gi);
        // A_s is a polynomial in A
        std::vector<std::vector<Rat>> pow_rows;
        Mat<Rat> p = Mat<Rat>::identity(n, Rat());
        for (std::size_t k = 0; k < n; ++k) {
            pow_rows.push_back(vectorize(p));
            p = p * a;
        }
        auto span = Subspace<Rat>::span_of(pow_rows, n * n, Rat());
        CHECK(span.contains(vectorize(dec.semisimple)));
        ++done;
    }
}

TEST_CASE("jc_map equivariance") {
    auto shear = qmat({{1, 1}, {0, 1}});
    Rng rng(515151);
    for (int t = 0; t < 25; ++t) {
        auto g = random_invertible(rng, 2);
        CHECK(jc_map(g * shear * inverse(g)) == Mat<Rat>::identity(2, Rat()));
    }
    for (int t = 0; t < 25; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.int_in(2, 4));
        Mat<Rat> a(n, n, Rat());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = Rat(rng.int_in(-2, 2));
        auto g = random_invertible(rng, n);
        CHECK(jc_map(g * a * inverse(g)) == g * jc_map(a) * inverse(g));
    }
    // semisimple input is a fixed point
    auto d = qmat({{3, 0, 0}, {0, 5, 0}, {0, 0, 5}});
    CHECK(jc_map(d) == d);
    // the fibration map reads only the operator component of a point
    auto pt = make_point(qmat({{1, 1}, {0, -1}}), Vec<Rat>::unit(2, 0, Rat()),
                         Covec<Rat>::unit(2, 1, Rat()));
    CHECK(jc_map(pt) == jc_map(pt.A));
}

TEST_CASE("min_poly basics") {
    auto j4 = jordan_matrix(std::vector<std::size_t>{4}, Rat());
    auto m = min_poly(j4);
    CHECK(m.degree() == 4);
    CHECK(m == Poly<Rat>::from_coeffs({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)}, Rat()));
    auto d = qmat({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    // (x-1)(x-2) = x^2 - 3x + 2
    CHECK(min_poly(d) == Poly<Rat>::from_coeffs({Rat(2), Rat(-3), Rat(1)}, Rat()));
    CHECK(is_semisimple(d));
    CHECK_FALSE(is_semisimple(j4));
}

TEST_CASE("Levi structure of semisimple centralizers") {
    // x^2 + 1 irreducible over Q: centralizer is a copy of GL_1(Q(i))
    Poly<Rat> x2p1 = Poly<Rat>::from_coeffs({Rat(1), Rat(0), Rat(1)}, Rat());
    auto c = companion(x2p1);
    CHECK(char_poly(c) == x2p1);
    CHECK(centralizer(c).dim() == levi_dimension({LeviFactor{1, 2}}));

    // (x^2+1)^2 (x-3): GL_2(Q(i)) x GL_1(Q), dimension 4*2 + 1 = 9
    Poly<Rat> lin = Poly<Rat>::from_coeffs({Rat(-3), Rat(1)}, Rat());
    auto a = build_semisimple({{x2p1, 2}, {lin, 1}});
    CHECK(a.rows() == 5);
    CHECK(is_semisimple(a));
    CHECK(centralizer(a).dim() == levi_dimension({LeviFactor{2, 2}, LeviFactor{1, 1}}));
    CHECK(centralizer(a).dim() == 9);

    // (x-1)(x-2): split torus
    Poly<Rat> l1 = Poly<Rat>::from_coeffs({Rat(-1), Rat(1)}, Rat());
    Poly<Rat> l2 = Poly<Rat>::from_coeffs({Rat(-2), Rat(1)}, Rat());
    auto t = build_semisimple({{l1, 1}, {l2, 1}});
    CHECK(centralizer(t).dim() == 2);

    // repeated factors must be rejected when they break semisimplicity
    CHECK_THROWS_AS(build_semisimple({{Poly<Rat>::from_coeffs({Rat(0), Rat(1)}, Rat()), 1},
                                      {Poly<Rat>::from_coeffs({Rat(0), Rat(0), Rat(1)}, Rat()), 1}}),
                    std::invalid_argument);
}

TEST_CASE("trace_slice") {
    Rng rng(31);
    auto a = qmat({{0, 2}, {1, 0}});
    CHECK(trace_slice(a) == a);  // already traceless
    CHECK(trace_slice(Mat<Rat>::identity(4, Rat())).is_zero());
    for (int t = 0; t < 30; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.int_in(1, 5));
        Mat<Rat> m(n, n, Rat());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.rat();
        auto s = trace_slice(m);
        CHECK(s.trace().is_zero());
        // bijection on a fixed-trace slice: recover m from s and tr(m)
        Mat<Rat> back = s;
        Rat shift = m.trace() / Rat(static_cast<long long>(n));
        for (std::size_t i = 0; i < n; ++i) back(i, i) = back(i, i) + shift;
        CHECK(back == m);
        // commutes with conjugation and transposition
        auto g = random_invertible(rng, n);
        CHECK(trace_slice(g * m * inverse(g)) == g * trace_slice(m) * inverse(g));
        CHECK(trace_slice(m.transpose()) == trace_slice(m).transpose());
    }
}

TEST_CASE("block_slice frozen example and round trip") {
    auto b0 = Mat<Rat>::zero(3, 3, Rat());
    auto p0 = block_slice(b0);
    CHECK(p0.A.is_zero());
    CHECK(p0.v.is_zero());
    CHECK(p0.phi.is_zero());

    auto b = qmat({{0, 0, 1}, {0, -2, 0}, {1, 0, 2}});
    auto p = block_slice(b);
    CHECK(p.A == qmat({{1, 0}, {0, -1}}));
    CHECK(p.v == Vec<Rat>(std::vector<Rat>{Rat(1), Rat(0)}));
    CHECK(p.phi == Covec<Rat>(std::vector<Rat>{Rat(1), Rat(0)}));
    CHECK(block_unslice(p, Rat(2)) == b);

    Rng rng(77);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
        Mat<Rat> m(n + 1, n + 1, Rat());
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j) m(i, j) = rng.rat(4);
        m = trace_slice(m);  // land in sl_{n+1}
        auto pt = block_slice(m);
        CHECK(pt.A.trace().is_zero());
        CHECK(block_unslice(pt, m(n, n)) == m);
        CHECK(block_slice(block_unslice(pt, m(n, n))) == pt);
    }
}
