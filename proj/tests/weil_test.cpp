#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xact/rng.hpp"
#include "xact/weil.hpp"

using namespace xact;

namespace {

SL2 random_sl2(Rng& rng) {
    // random word in the generators: always determinant 1, exact entries
    SL2 g = sl2_identity();
    int len = static_cast<int>(rng.int_in(1, 5));
    for (int i = 0; i < len; ++i) {
        switch (rng.below(3)) {
            case 0: g = g * sl2_n(rng.rat(4)); break;
            case 1: g = g * sl2_nbar(rng.rat(4)); break;
            default: {
                Rat t(rng.int_in(1, 5), rng.int_in(1, 3));
                g = g * sl2_a(t);
            }
        }
    }
    return g;
}

}  // namespace

TEST_CASE("sl2 generators and decomposition") {
    CHECK(sl2_decompose(sl2_identity()).empty());
    auto w = sl2_decompose(sl2_n(Rat(5)));
    REQUIRE(w.size() == 1);
    CHECK(w[0].kind == GenTok::Kind::N);
    CHECK(sl2_of_word(w) == sl2_n(Rat(5)));
    // J = nbar_1 n_{-1} nbar_1, multiplied out
    CHECK(sl2_nbar(Rat(1)) * sl2_n(Rat(-1)) * sl2_nbar(Rat(1)) == sl2_j());
    auto wj = sl2_decompose(sl2_j());
    CHECK(wj.size() <= 4);
    CHECK(sl2_of_word(wj) == sl2_j());
    CHECK_THROWS_AS(SL2(Mat<Rat>::identity(2, Rat()) + Mat<Rat>::identity(2, Rat())),
                    std::invalid_argument);
}

TEST_CASE("sl2_decompose on 1000 seeded samples") {
    Rng rng(161803);
    for (int t = 0; t < 1000; ++t) {
        SL2 g = random_sl2(rng);
        auto word = sl2_decompose(g);
        CHECK(word.size() <= 4);
        for (const auto& tok : word)
            CHECK((tok.kind == GenTok::Kind::N || tok.kind == GenTok::Kind::NBar));
        CHECK(sl2_of_word(word) == g);
    }
}

TEST_CASE("weil_nbar is diagonal, unimodular, additive") {
    for (std::uint32_t p : {2u, 3u}) {
        CosetSpace sp(p, 2, Level{1, 1});
        auto b = BilinearFormB::hyperbolic(1);
        auto id = WeilOp(sp, sp, Mat<Cyclo>::identity(sp.size(), Cyclo()));
        CHECK(weil_nbar(Rat(0), b, sp) == id);
        auto n1 = weil_nbar(Rat(1), b, sp);
        auto n2 = weil_nbar(Rat(2), b, sp);
        auto n3 = weil_nbar(Rat(3), b, sp);
        CHECK(n1.compose(n2) == n3);
        CHECK(n1.compose(weil_nbar(Rat(-1), b, sp)) == id);
        for (std::size_t i = 0; i < sp.size(); ++i) {
            CHECK(n1.matrix()(i, i).is_unimodular());
            // isotropic axis cosets have multiplier exactly 1
            if (sp.coords(i)[1] == 0) CHECK(n1.matrix()(i, i) == Cyclo::one());
        }
    }
    // insufficient level: t with a deep pole must be rejected
    CosetSpace sp2(3, 2, Level{1, 1});
    CHECK_THROWS_AS(weil_nbar(Rat(1, 27), BilinearFormB::hyperbolic(1), sp2),
                    std::domain_error);
    // pi(nbar_t) commutes with any diagonal multiplier, e.g. one constant on
    // the valuation strata of Q(v)
    {
        CosetSpace sp(3, 2, Level{1, 1});
        auto b = BilinearFormB::hyperbolic(1);
        Mat<Cyclo> diag = Mat<Cyclo>::zero(sp.size(), sp.size(), Cyclo());
        for (std::size_t i = 0; i < sp.size(); ++i) {
            Rat q = b.quad(sp.point(i));
            long long v = q.is_zero() ? 99 : val_p(q, 3);
            diag(i, i) = Cyclo::from_int(v + 100);
        }
        WeilOp mult(sp, sp, std::move(diag));
        auto n1 = weil_nbar(Rat(1), b, sp);
        CHECK(n1.compose(mult) == mult.compose(n1));
    }
}

TEST_CASE("weil_a dilation operators") {
    std::uint32_t p = 3;
    // matrices are size p^{(m+k)d} squared: keep the level-walk test at d = 1
    CosetSpace sp(p, 1, Level{2, 2});
    auto b = BilinearFormB::diagonal({Rat(1)});
    auto id = WeilOp(sp, sp, Mat<Cyclo>::identity(sp.size(), Cyclo()));
    CHECK(weil_a(Rat(1), b, sp) == id);
    // units compose on one level
    auto a2 = weil_a(Rat(2), b, sp);
    auto a4 = weil_a(Rat(4), b, sp);
    CHECK(a2.compose(a2) == a4);
    // d = 2, t = p: scale factor is p with half-power exponent exactly 2
    CosetSpace sp2(p, 2, Level{1, 1});
    auto ap = weil_a(Rat(static_cast<long long>(p)), BilinearFormB::hyperbolic(1), sp2);
    bool found = false;
    for (std::size_t i = 0; i < ap.matrix().rows() && !found; ++i)
        for (std::size_t j = 0; j < ap.matrix().cols() && !found; ++j)
            if (!ap.matrix()(i, j).is_zero()) {
                CHECK(ap.matrix()(i, j).half_pow_p() == 2);
                CHECK(ap.matrix()(i, j) == Cyclo::from_int(3));
                found = true;
            }
    CHECK(found);
    // p-power dilations chain across levels: a_p then a_p equals a_{p^2}
    auto ap1 = weil_a(Rat(static_cast<long long>(p)), b, sp);
    auto ap_next = weil_a(Rat(static_cast<long long>(p)), b, ap1.out_space());
    CHECK(ap_next.compose(ap1) == weil_a(Rat(static_cast<long long>(p * p)), b, sp));
    // leaving the window is an error
    CHECK_THROWS_AS(weil_a(Rat(243), b, sp), std::domain_error);
    // and f(t^{-1} v) semantics: the indicator of a coset moves to t * coset
    CosetSpace line(p, 1, Level{1, 1});
    auto bl = BilinearFormB::diagonal({Rat(1)});
    auto a_unit = weil_a(Rat(2), bl, line);
    auto f = LevelledFunction::indicator(line, line.index({1}));
    auto g = a_unit.apply(f);
    for (std::size_t i = 0; i < line.size(); ++i)
        CHECK(g.value(i) == (line.coords(i)[0] == 2 ? Cyclo::one() : Cyclo()));
}

TEST_CASE("weil_J is the Fourier transform and has order four") {
    for (std::uint32_t p : {2u, 3u}) {
        CosetSpace sp(p, 2, Level{1, 1});
        auto b = BilinearFormB::hyperbolic(1);
        auto j = weil_j(b, sp);
        CHECK(j.out_space() == sp);
        // matches the transform of basis functions
        for (std::size_t i = 0; i < sp.size(); i += 7) {
            auto f = LevelledFunction::indicator(sp, i);
            CHECK(j.apply(f) == fourier(f, b));
        }
        // J^2 = reflection, J^4 = identity, exactly
        auto j2 = j.compose(j);
        for (std::size_t i = 0; i < sp.size(); ++i)
            for (std::size_t k = 0; k < sp.size(); ++k)
                CHECK(j2.matrix()(i, k) ==
                      (sp.negate(i) == k ? Cyclo::one() : Cyclo()));
        CHECK(j2.compose(j2) == WeilOp(sp, sp, Mat<Cyclo>::identity(sp.size(), Cyclo())));
    }
    // d=1, B=(1), level (0,0): the self-dual indicator is fixed
    CosetSpace unit(2, 1, Level{0, 0});
    auto j1 = weil_j(BilinearFormB::diagonal({Rat(1)}), unit);
    CHECK(j1.matrix()(0, 0) == Cyclo::one());
    // pi(a_{-1}) is the reflection, which is exactly pi(J)^2
    {
        CosetSpace sp(3, 2, Level{1, 1});
        auto b = BilinearFormB::hyperbolic(1);
        auto j = weil_j(b, sp);
        CHECK(weil_a(Rat(-1), b, sp) == j.compose(j));
    }
}

TEST_CASE("projective relations hold with unimodular ratios") {
    for (std::uint32_t p : {2u, 3u}) {
        CosetSpace sp(p, 2, Level{1, 1});
        auto b = BilinearFormB::hyperbolic(1);
        // identical words: ratio 1
        std::vector<GenTok> w{GenTok::nbar(Rat(1)), GenTok::j()};
        auto v0 = projective_check(w, w, b, sp);
        CHECK(v0.holds());
        CHECK(v0.ratio == Cyclo::one());
        // J^{-1} nbar_t J against n_{-t} through sl2_decompose
        for (Rat t : {Rat(1), Rat(2)}) {
            std::vector<GenTok> lhs{GenTok::j_inv(), GenTok::nbar(t), GenTok::j()};
            auto rhs = sl2_decompose(sl2_n(-t));
            auto v = projective_check(lhs, rhs, b, sp);
            CHECK(v.same_sl2);
            CHECK(v.proportional);
            CHECK(v.unimodular);
        }
        // (nbar_1 n_{-1} nbar_1)^4 = J^4 = identity
        std::vector<GenTok> j4;
        for (int r = 0; r < 4; ++r) {
            j4.push_back(GenTok::nbar(Rat(1)));
            j4.push_back(GenTok::n(Rat(-1)));
            j4.push_back(GenTok::nbar(Rat(1)));
        }
        auto vj4 = projective_check(j4, {}, b, sp);
        CHECK(vj4.holds());
        // braid: J itself against nbar_1 n_{-1} nbar_1
        auto vb = projective_check({GenTok::j()},
                                   {GenTok::nbar(Rat(1)), GenTok::n(Rat(-1)),
                                    GenTok::nbar(Rat(1))},
                                   b, sp);
        CHECK(vb.holds());
        // mismatched words are rejected
        auto bad = projective_check({GenTok::nbar(Rat(1))}, {GenTok::nbar(Rat(2))}, b, sp);
        CHECK_FALSE(bad.same_sl2);
    }
}

TEST_CASE("projective relation on random split words") {
    Rng rng(2718);
    std::uint32_t p = 2;
    CosetSpace sp(p, 2, Level{1, 1});
    auto b = BilinearFormB::hyperbolic(1);
    int verified = 0;
    for (int t = 0; t < 40 && verified < 6; ++t) {
        // realize g two ways: direct decomposition vs decomposition through g h, h^{-1}
        SL2 g = random_sl2(rng);
        SL2 h = random_sl2(rng);
        auto w1 = sl2_decompose(g);
        auto w2 = sl2_decompose(g * h);
        auto wh = sl2_decompose(SL2(inverse(h.m)));
        w2.insert(w2.end(), wh.begin(), wh.end());
        try {
            auto v = projective_check(w1, w2, b, sp);
            CHECK(v.same_sl2);
            CHECK(v.proportional);
            CHECK(v.unimodular);
            ++verified;
        } catch (const std::domain_error&) {
            // a letter needs psi at a level beyond this window; skip the sample
        }
    }
    CHECK(verified == 6);
}

TEST_CASE("metaplectic test: isotropic axis haar passes with degree dim W / 2") {
    for (std::uint32_t p : {2u, 3u}) {
        CosetSpace sp(p, 2, Level{1, 1});
        auto b = BilinearFormB::hyperbolic(1);
        auto axis = FiniteDistribution::haar_on(
            sp, [&](std::size_t i) { return sp.coords(i)[1] == 0; });
        auto v = metaplectic_test(axis, b);
        CHECK(v.preconditions);
        CHECK(v.nbar_fixes);
        CHECK(v.conj_unipotent_unimodular);
        CHECK(v.degree.is_degree(Rat(1)));
        CHECK(v.degree_matches);
        CHECK(v.holds());
        // the dual axis {(0, phi)} works as well
        auto dual_axis = FiniteDistribution::haar_on(
            sp, [&](std::size_t i) { return sp.coords(i)[0] == 0; });
        CHECK(metaplectic_test(dual_axis, b).holds());
    }
}

TEST_CASE("metaplectic test rejects the delta/haar pair at the precondition") {
    for (std::uint32_t p : {2u, 3u}) {
        CosetSpace sp(p, 2, Level{1, 1});
        auto b = BilinearFormB::hyperbolic(1);
        auto delta = FiniteDistribution::delta_at(sp, 0);
        auto v = metaplectic_test(delta, b);
        CHECK_FALSE(v.preconditions);
        CHECK(v.reason == "F_B(xi) is not supported in Z(B)");
        // and the zero distribution passes vacuously
        CHECK(metaplectic_test(FiniteDistribution(sp), b).holds());
    }
}
