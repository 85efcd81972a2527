#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xact/gtilde.hpp"
#include "xact/rng.hpp"
#include "xact/sets_x.hpp"

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

PointX<Rat> random_point(Rng& rng, std::size_t n) {
    Mat<Rat> a(n, n, Rat());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.rat(4);
    // force trace zero
    Rat t = a.trace();
    a(n - 1, n - 1) = a(n - 1, n - 1) - t;
    std::vector<Rat> v, phi;
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(rng.rat(4));
        phi.push_back(rng.rat(4));
    }
    return make_point(std::move(a), Vec<Rat>(std::move(v)), Covec<Rat>(std::move(phi)));
}

std::vector<Gtilde<Ffq>> enumerate_gtilde_gf(std::uint32_t p, std::size_t n) {
    auto F = FqCtx::make(p);
    Ffq z(F, 0);
    std::vector<Gtilde<Ffq>> out;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n * n; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
        Mat<Ffq> m(n, n, z);
        std::uint64_t c = code;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = Ffq(F, static_cast<long long>(c % p));
                c /= p;
            }
        if (!is_invertible(m)) continue;
        out.push_back(Gtilde<Ffq>::aut(m));
        out.push_back(Gtilde<Ffq>::iso(m));
    }
    return out;
}

std::vector<PointX<Ffq>> enumerate_points_gf2_n2() {
    auto F = FqCtx::make(2);
    Ffq z(F, 0);
    std::vector<PointX<Ffq>> pts;
    for (int code = 0; code < 128; ++code) {
        int c = code;
        auto bit = [&]() {
            int b = c & 1;
            c >>= 1;
            return Ffq(FqCtx::make(2), b);
        };
        Mat<Ffq> a(2, 2, z);
        a(0, 0) = bit();
        a(0, 1) = bit();
        a(1, 0) = bit();
        a(1, 1) = a(0, 0);  // traceless in char 2 means equal diagonal
        Vec<Ffq> v(std::vector<Ffq>{bit(), bit()});
        Covec<Ffq> phi(std::vector<Ffq>{bit(), bit()});
        pts.push_back(make_point(std::move(a), std::move(v), std::move(phi)));
    }
    return pts;
}

}  // namespace

TEST_CASE("Gtilde over GF(2), n = 2: 12 elements, full group axioms") {
    auto els = enumerate_gtilde_gf(2, 2);
    REQUIRE(els.size() == 12);
    auto id = Gtilde<Ffq>::identity(2, Ffq(FqCtx::make(2), 0));
    for (const auto& x : els) {
        CHECK(x * id == x);
        CHECK(id * x == x);
        CHECK(x * x.inverse_el() == id);
        CHECK(x.inverse_el() * x == id);
    }
    for (const auto& x : els)
        for (const auto& y : els) {
            auto xy = x * y;
            // parity landing rules and the character
            CHECK(xy.is_aut() == (x.is_aut() == y.is_aut()));
            CHECK(xy.chi() == x.chi() * y.chi());
            for (const auto& w : els) CHECK((x * y) * w == x * (y * w));
        }
}

TEST_CASE("action axiom over GF(2), n = 2, exhaustive") {
    auto els = enumerate_gtilde_gf(2, 2);
    auto pts = enumerate_points_gf2_n2();
    REQUIRE(pts.size() == 128);
    // act(xy, p) = act(x, act(y, p)) for all 12 x 12 x 128 triples
    for (const auto& x : els)
        for (const auto& y : els) {
            auto xy = x * y;
            for (const auto& p : pts) CHECK(act(xy, p) == act(x, act(y, p)));
        }
}

TEST_CASE("action axiom over Q, randomized, n <= 4") {
    Rng rng(42);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
        auto p = random_point(rng, n);
        auto gx = random_invertible(rng, n);
        auto hy = random_invertible(rng, n);
        std::vector<Gtilde<Rat>> xs{Gtilde<Rat>::aut(gx), Gtilde<Rat>::iso(gx)};
        std::vector<Gtilde<Rat>> ys{Gtilde<Rat>::aut(hy), Gtilde<Rat>::iso(hy)};
        for (const auto& x : xs)
            for (const auto& y : ys) {
                CHECK(act(x * y, p) == act(x, act(y, p)));
                auto [v2, phi2] = act_pair(x, p.v, p.phi);
                auto moved = act(x, p);
                CHECK(moved.v == v2);
                CHECK(moved.phi == phi2);
            }
    }
}

TEST_CASE("coordinate T equals the Iso action of the identity form") {
    // frozen n=2 example: (A, e1, e2*) -> (tA, e2, e1*)
    auto a = qmat({{1, 2}, {3, -1}});
    auto pt = make_point(a, Vec<Rat>::unit(2, 0, Rat()), Covec<Rat>::unit(2, 1, Rat()));
    auto moved = coordinate_T_act(pt);
    CHECK(moved.A == a.transpose());
    CHECK(moved.v == Vec<Rat>::unit(2, 1, Rat()));
    CHECK(moved.phi == Covec<Rat>::unit(2, 0, Rat()));

    Rng rng(4242);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
        auto p = random_point(rng, n);
        auto T = Gtilde<Rat>::transposition(n, Rat());
        CHECK(coordinate_T_act(p) == act(T, p));
        CHECK(act(T, act(T, p)) == p);  // T is an involution on X
    }
}

TEST_CASE("symmetric forms square to the identity in Gtilde") {
    for (std::size_t n = 1; n <= 4; ++n) {
        auto T = Gtilde<Rat>::antidiag_form(n, Rat());
        CHECK(T * T == Gtilde<Rat>::identity(n, Rat()));
        auto Tc = Gtilde<Rat>::transposition(n, Rat());
        CHECK(Tc * Tc == Gtilde<Rat>::identity(n, Rat()));
    }
}

TEST_CASE("the antidiagonal form centralizes the Jordan block") {
    // (T A T^{-1})* = A for the standard block, so T lies in the stabilizer
    for (std::size_t r = 1; r <= 6; ++r) {
        auto a = jordan_matrix(std::vector<std::size_t>{r}, Rat());
        auto pt = make_point(a, Vec<Rat>::zero(r, Rat()), Covec<Rat>::zero(r, Rat()));
        auto T = Gtilde<Rat>::antidiag_form(r, Rat());
        CHECK(act(T, pt).A == a);
    }
}

TEST_CASE("nu laws") {
    Rng rng(7);
    // frozen: nu(1, (0, e1, e2*)) = (E12, e1, e2*)
    auto pt0 = make_point(Mat<Rat>::zero(2, 2, Rat()), Vec<Rat>::unit(2, 0, Rat()),
                          Covec<Rat>::unit(2, 1, Rat()));
    auto moved = nu(Rat(1), pt0);
    CHECK(moved.A == qmat({{0, 1}, {0, 0}}));
    CHECK(moved.v == pt0.v);
    CHECK(moved.phi == pt0.phi);

    for (int t = 0; t < 40; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
        auto p = random_point(rng, n);
        Rat lam = rng.rat(3), mu = rng.rat(3);
        CHECK(nu(Rat(0), p) == p);
        CHECK(nu(lam, nu(mu, p)) == nu(lam + mu, p));
        CHECK(nu(-lam, nu(lam, p)) == p);
        CHECK(nu(lam, p).A.trace().is_zero());
        // commutes with the full Gtilde action
        auto g = random_invertible(rng, n);
        for (auto x : {Gtilde<Rat>::aut(g), Gtilde<Rat>::iso(g)})
            CHECK(nu(lam, act(x, p)) == act(x, nu(lam, p)));
    }
}

TEST_CASE("nu needs the characteristic coprime to n off Y") {
    auto F = FqCtx::make(2);
    Ffq z(F, 0), o(F, 1);
    Mat<Ffq> a = Mat<Ffq>::zero(2, 2, z);
    // <phi, v> = 1 over GF(2) with n = 2: the trace correction cannot exist
    auto bad = make_point(a, Vec<Ffq>::unit(2, 0, z), Covec<Ffq>::unit(2, 0, z));
    CHECK_THROWS_AS(nu(o, bad), std::domain_error);
    // on Y the correction vanishes and nu works in any characteristic
    auto good = make_point(a, Vec<Ffq>::unit(2, 0, z), Covec<Ffq>::unit(2, 1, z));
    auto moved = nu(o, good);
    CHECK(moved.A(0, 1) == o);
}

TEST_CASE("in_Y basics") {
    CHECK(in_Y(Vec<Rat>::zero(3, Rat()), Covec<Rat>::unit(3, 1, Rat())));
    CHECK(in_Y(Vec<Rat>::unit(2, 0, Rat()), Covec<Rat>::unit(2, 1, Rat())));
    CHECK_FALSE(in_Y(Vec<Rat>::unit(2, 0, Rat()), Covec<Rat>::unit(2, 0, Rat())));
}

TEST_CASE("Q_A membership on the frozen examples") {
    auto j2 = jordan_matrix(std::vector<std::size_t>{2}, Rat());
    QaTester<Rat> qa(j2);
    CHECK(qa.contains(Vec<Rat>::zero(2, Rat()), Covec<Rat>::unit(2, 0, Rat())));
    CHECK(qa.contains(Vec<Rat>::unit(2, 0, Rat()), Covec<Rat>::unit(2, 1, Rat())));
    CHECK_FALSE(qa.contains(Vec<Rat>::unit(2, 1, Rat()), Covec<Rat>::unit(2, 0, Rat())));
    CHECK_THROWS_AS(QaTester<Rat>(qmat({{1, 0}, {0, -1}})), std::invalid_argument);
}

TEST_CASE("Q_A is contained in Y, exhaustive over GF(2) and GF(3), n <= 4") {
    for (std::uint32_t p : {2u, 3u}) {
        auto F = FqCtx::make(p);
        Ffq z(F, 0);
        for (std::size_t n = 2; n <= 4; ++n) {
            for (const auto& part : partitions_of(n)) {
                QaTester<Ffq> qa(jordan_matrix(part, z));
                std::uint64_t total = 1;
                for (std::size_t i = 0; i < 2 * n; ++i) total *= p;
                long long members = 0;
                for (std::uint64_t code = 0; code < total; ++code) {
                    std::uint64_t c = code;
                    std::vector<Ffq> ve, fe;
                    for (std::size_t i = 0; i < n; ++i) {
                        ve.push_back(Ffq::from_index(F, c % p));
                        c /= p;
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        fe.push_back(Ffq::from_index(F, c % p));
                        c /= p;
                    }
                    Vec<Ffq> v(ve);
                    Covec<Ffq> phi(fe);
                    if (qa.contains(v, phi)) {
                        ++members;
                        CHECK(in_Y(v, phi));
                    }
                }
                CHECK(members > 0);  // the containment is not vacuous
            }
        }
    }
}

TEST_CASE("flag spaces of the Jordan block") {
    auto flags = flag_spaces(2, Rat());
    CHECK(flags.F[0].dim() == 0);
    CHECK(flags.F[2] == Subspace<Rat>::full_space(2, Rat()));
    CHECK(flags.F[1] == Subspace<Rat>::span_of({{Rat(1), Rat(0)}}, 2, Rat()));
    CHECK(flags.L[1] == Subspace<Rat>::span_of({{Rat(0), Rat(1)}}, 2, Rat()));
    for (std::size_t r = 1; r <= 5; ++r) {
        auto fl = flag_spaces(r, Rat());
        for (std::size_t i = 0; i <= r; ++i) {
            CHECK(fl.F[i].dim() == i);
            CHECK(fl.L[i].dim() == i);
            if (i > 0) {
                CHECK(fl.F[i].contains_subspace(fl.F[i - 1]));
                CHECK(fl.L[i].contains_subspace(fl.L[i - 1]));
            }
        }
    }
}

TEST_CASE("in_Z on the frozen examples") {
    auto flags = flag_spaces(2, Rat());
    CHECK(in_Z(Vec<Rat>::zero(2, Rat()), Covec<Rat>::zero(2, Rat()), flags));
    CHECK(in_Z(Vec<Rat>::unit(2, 0, Rat()), Covec<Rat>::unit(2, 1, Rat()), flags));
    CHECK_FALSE(in_Z(Vec<Rat>::unit(2, 1, Rat()), Covec<Rat>::unit(2, 0, Rat()), flags));
}

TEST_CASE("Q(A) inside Z for the Jordan block (small exhaustive)") {
    for (std::uint32_t p : {2u, 3u}) {
        auto F = FqCtx::make(p);
        Ffq z(F, 0);
        for (std::size_t r = 2; r <= 3; ++r) {
            QaTester<Ffq> qa(jordan_matrix(std::vector<std::size_t>{r}, z));
            auto flags = flag_spaces(r, z);
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < 2 * r; ++i) total *= p;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::uint64_t c = code;
                std::vector<Ffq> ve, fe;
                for (std::size_t i = 0; i < r; ++i) {
                    ve.push_back(Ffq::from_index(F, c % p));
                    c /= p;
                }
                for (std::size_t i = 0; i < r; ++i) {
                    fe.push_back(Ffq::from_index(F, c % p));
                    c /= p;
                }
                Vec<Ffq> v(ve);
                Covec<Ffq> phi(fe);
                if (qa.contains(v, phi)) CHECK(in_Z(v, phi, flags));
            }
        }
    }
}

TEST_CASE("rho preserves the pairing and Z") {
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
        std::vector<Rat> ve, fe;
        for (std::size_t i = 0; i < n; ++i) {
            ve.push_back(rng.rat());
            fe.push_back(rng.rat());
        }
        Vec<Rat> v(ve);
        Covec<Rat> phi(fe);
        Rat lam = Rat(rng.int_in(1, 5), rng.int_in(1, 3));
        auto [v2, phi2] = rho(lam, v, phi);
        CHECK(pairing(phi2, v2) == pairing(phi, v));
    }
    CHECK_THROWS_AS(rho(Rat(0), Vec<Rat>::zero(2, Rat()), Covec<Rat>::zero(2, Rat())),
                    std::invalid_argument);
    // exhaustive over GF(3), r = 2: Z is rho-invariant
    auto F = FqCtx::make(3);
    Ffq z(F, 0);
    auto flags = flag_spaces(2, z);
    for (std::uint64_t code = 0; code < 81; ++code) {
        std::uint64_t c = code;
        std::vector<Ffq> ve, fe;
        for (int i = 0; i < 2; ++i) {
            ve.push_back(Ffq::from_index(F, c % 3));
            c /= 3;
        }
        for (int i = 0; i < 2; ++i) {
            fe.push_back(Ffq::from_index(F, c % 3));
            c /= 3;
        }
        Vec<Ffq> v(ve);
        Covec<Ffq> phi(fe);
        for (std::uint64_t li = 1; li < 3; ++li) {
            Ffq lam = Ffq::from_index(F, li);
            auto [v2, phi2] = rho(lam, v, phi);
            CHECK(in_Z(v, phi, flags) == in_Z(v2, phi2, flags));
        }
    }
}

TEST_CASE("sampled Otilde membership") {
    auto j2 = jordan_matrix(std::vector<std::size_t>{2}, Rat());
    auto samples = default_lambda_samples(Rat());
    // phi = 0: nu fixes A entirely
    auto p1 = make_point(j2, Vec<Rat>::unit(2, 0, Rat()), Covec<Rat>::zero(2, Rat()));
    CHECK(in_Otilde_sampled(p1, 2, samples));
    // (J2, e1, e2*): J2 + lambda E12 stays a single Jordan block or zero
    auto p2 = make_point(j2, Vec<Rat>::unit(2, 0, Rat()), Covec<Rat>::unit(2, 1, Rat()));
    CHECK(in_Otilde_sampled(p2, 2, samples));
    // a point outside Y fails the first conjunct
    auto p3 = make_point(j2, Vec<Rat>::unit(2, 0, Rat()), Covec<Rat>::unit(2, 0, Rat()));
    CHECK_FALSE(in_Otilde_sampled(p3, 2, samples));
    // the orbit-dimension precondition is enforced
    CHECK_THROWS_AS(in_Otilde_sampled(p2, 1, samples), std::invalid_argument);
    CHECK_THROWS_AS(
        in_Otilde_sampled(make_point(qmat({{1, 0}, {0, -1}}), p2.v, p2.phi), 2, samples),
        std::invalid_argument);
}

TEST_CASE("R_A inside Q_A through the sampled Otilde, exact over GF(2)") {
    // over a finite field the sample set is the whole field, so the
    // intersection defining Otilde is computed exactly
    auto F = FqCtx::make(2);
    Ffq z(F, 0);
    auto samples = default_lambda_samples(z);
    CHECK(samples.size() == 2);
    for (std::size_t n = 2; n <= 3; ++n) {
        for (const auto& part : partitions_of(n)) {
            auto a = jordan_matrix(part, z);
            long long dim = nilpotent_profile(a).orbit_dim;
            QaTester<Ffq> qa(a);
            std::uint64_t total = 1;
            for (std::size_t i = 0; i < 2 * n; ++i) total *= 2;
            long long members = 0;
            for (std::uint64_t code = 0; code < total; ++code) {
                std::uint64_t c = code;
                std::vector<Ffq> ve, fe;
                for (std::size_t i = 0; i < n; ++i) {
                    ve.push_back(Ffq::from_index(F, c % 2));
                    c /= 2;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    fe.push_back(Ffq::from_index(F, c % 2));
                    c /= 2;
                }
                Vec<Ffq> v(ve);
                Covec<Ffq> phi(fe);
                auto pt = make_point(a, v, phi);
                if (in_Otilde_sampled(pt, dim, samples)) {
                    ++members;
                    CHECK(qa.contains(v, phi));
                }
            }
            CHECK(members > 0);
        }
    }
}

TEST_CASE("tangent pencil stays in the stratum (Q-samples)") {
    Rng rng(23);
    auto samples = default_lambda_samples(Rat());
    int tested = 0;
    for (int t = 0; t < 4000 && tested < 60; ++t) {
        std::size_t n = static_cast<std::size_t>(rng.int_in(2, 4));
        auto parts = partitions_of(n);
        auto a = jordan_matrix(parts[rng.below(parts.size())], Rat());
        long long dim = nilpotent_profile(a).orbit_dim;
        QaTester<Rat> qa(a);
        // sparse entries: membership in Q_A is rare for dense random pairs
        std::vector<Rat> ve, fe;
        for (std::size_t i = 0; i < n; ++i) {
            ve.push_back(rng.coin() ? Rat(0) : Rat(rng.int_in(-2, 2)));
            fe.push_back(rng.coin() ? Rat(0) : Rat(rng.int_in(-2, 2)));
        }
        Vec<Rat> v(ve);
        Covec<Rat> phi(fe);
        if (!in_Y(v, phi) || !qa.contains(v, phi)) continue;
        ++tested;
        for (const auto& lam : samples) {
            Mat<Rat> pencil = a + lam * rank_one(v, phi);
            CHECK(is_nilpotent(pencil));
            CHECK(in_stratum(pencil, dim));
        }
    }
    CHECK(tested >= 30);
}

TEST_CASE("stabilizer of z0") {
    Rat lam(3);
    // identity stabilizes
    auto id = Gtilde<Rat>::identity(3, Rat());
    CHECK(stabilizer_check_z0(id, lam).stabilizes);
    // diag(g', 1) stabilizes and the corner block comes back
    auto gp = qmat({{1, 2}, {0, 1}});
    Mat<Rat> g = Mat<Rat>::identity(3, Rat());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) g(i, j) = gp(i, j);
    auto rep = stabilizer_check_z0(Gtilde<Rat>::aut(g), lam);
    CHECK(rep.stabilizes);
    CHECK(rep.aut_branch);
    CHECK(rep.last_col_is_en);
    CHECK(rep.last_row_is_en_star);
    REQUIRE(rep.corner_block.has_value());
    CHECK(*rep.corner_block == gp);
    // the swap e1 <-> e3 moves z0
    Mat<Rat> perm = Mat<Rat>::zero(3, 3, Rat());
    perm(0, 2) = Rat(1);
    perm(1, 1) = Rat(1);
    perm(2, 0) = Rat(1);
    auto rep2 = stabilizer_check_z0(Gtilde<Rat>::aut(perm), lam);
    CHECK_FALSE(rep2.stabilizes);
    CHECK_FALSE(rep2.last_col_is_en);
    // an Iso with last column lambda e_n and last row lambda e_n^* stabilizes
    Mat<Rat> h = Mat<Rat>::identity(3, Rat());
    h(2, 2) = lam;
    auto rep3 = stabilizer_check_z0(Gtilde<Rat>::iso(h), lam);
    CHECK(rep3.stabilizes);
    CHECK_FALSE(rep3.aut_branch);
}
