#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "xact/bigint.hpp"
#include "xact/cyclo.hpp"
#include "xact/gf.hpp"
#include "xact/rat.hpp"
#include "xact/rng.hpp"
#include "xact/valuation.hpp"

using namespace xact;

TEST_CASE("BigInt arithmetic round trips") {
    CHECK(BigInt::from_string("0").to_string() == "0");
    CHECK(BigInt::from_string("-12345678901234567890123456789").to_string() ==
          "-12345678901234567890123456789");
    BigInt a = BigInt::from_string("123456789123456789123456789");
    BigInt b = BigInt::from_string("-987654321987654321");
    auto [q, r] = BigInt::divmod(a, b);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
    CHECK((a * b) / b == a);
    CHECK(BigInt(2).pow(100).to_string() == "1267650600228229401496703205376");
}

TEST_CASE("BigInt divmod sign convention and gcd") {
    // truncated toward zero, remainder keeps the dividend's sign
    auto dm = BigInt::divmod(BigInt(-7), BigInt(2));
    CHECK(dm.first == BigInt(-3));
    CHECK(dm.second == BigInt(-1));
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(-5)) == BigInt(5));
    CHECK(BigInt::lcm(BigInt(4), BigInt(6)) == BigInt(12));

    Rng rng(12345);
    for (int i = 0; i < 200; ++i) {
        BigInt x(rng.int_in(-1000000, 1000000));
        BigInt y(rng.int_in(1, 100000));
        auto [qq, rr] = BigInt::divmod(x, y);
        CHECK(qq * y + rr == x);
        CHECK(rr.abs() < y.abs());
    }
}

TEST_CASE("BigInt valuation") {
    CHECK(BigInt(12).valuation(2) == 2);
    CHECK(BigInt(12).valuation(3) == 1);
    CHECK(BigInt(1).valuation(7) == 0);
    CHECK(BigInt::from_string("59049").valuation(3) == 10);
}

TEST_CASE("Rat stays in lowest terms") {
    Rat x(6, -4);
    CHECK(x.numerator() == BigInt(-3));
    CHECK(x.denominator() == BigInt(2));
    CHECK(Rat::from_string("-10/15") == Rat(-2, 3));
    CHECK(Rat::from_string("7") == Rat(7));
    CHECK((Rat(1, 2) + Rat(1, 3)) == Rat(5, 6));
    CHECK((Rat(3, 7) * Rat(7, 3)).is_one());
    CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rat(1).inverse() / Rat(0), std::domain_error);
}

TEST_CASE("padic_norm on known values") {
    CHECK(padic_norm(Rat(1), 5).v == 0);
    CHECK(padic_norm(Rat(5), 5).v == 1);
    CHECK(padic_norm(Rat(12), 2).v == 2);  // 12 = 4*3
    CHECK(padic_norm(Rat(12), 2).unit == Rat(3));
    CHECK(padic_norm(Rat(0), 3).infinite);
    CHECK(padic_norm(Rat(9, 2), 3).v == 2);
}

TEST_CASE("padic_norm is multiplicative and ultrametric") {
    Rng rng(777);
    for (int i = 0; i < 300; ++i) {
        Rat x = rng.rat(20), y = rng.rat(20);
        for (std::uint32_t p : {2u, 3u, 5u}) {
            Valued vx = padic_norm(x, p), vy = padic_norm(y, p);
            Valued vxy = padic_norm(x * y, p);
            if (vx.infinite || vy.infinite) {
                CHECK(vxy.infinite);
            } else {
                CHECK(vxy.v == vx.v + vy.v);
            }
            // |x+y| <= max(|x|, |y|): v(x+y) >= min(v(x), v(y))
            Valued vs = padic_norm(x + y, p);
            if (!vs.infinite) {
                long long lo = vx.infinite ? vy.v : (vy.infinite ? vx.v : std::min(vx.v, vy.v));
                if (!(vx.infinite && vy.infinite)) CHECK(vs.v >= lo);
            }
        }
    }
}

TEST_CASE("GF(p) field axioms, exhaustive") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto F = FqCtx::make(p);
        Ffq one(F, 1);
        for (std::uint64_t i = 0; i < p; ++i) {
            Ffq a = Ffq::from_index(F, i);
            CHECK(Ffq(F, 0) - a == -a);
            if (!a.is_zero()) {
                CHECK((a * a.inverse()).is_one());
                CHECK((one / (one / a)) == a);
            }
            for (std::uint64_t j = 0; j < p; ++j) {
                Ffq b = Ffq::from_index(F, j);
                CHECK(a * b == b * a);
                CHECK(a + b == b + a);
                for (std::uint64_t k = 0; k < p; ++k) {
                    Ffq c = Ffq::from_index(F, k);
                    CHECK(a * c + b * c == (a + b) * c);
                    CHECK((a + b) + c == a + (b + c));
                }
            }
        }
    }
}

TEST_CASE("GF(p^m) extension fields") {
    auto F4 = FqCtx::make(2, 2);
    CHECK(F4->q() == 4);
    // every nonzero element has order dividing 3
    for (std::uint64_t i = 1; i < 4; ++i) {
        Ffq a = Ffq::from_index(F4, i);
        CHECK((a * a * a).is_one());
        CHECK((a * a.inverse()).is_one());
    }
    auto F9 = FqCtx::make(3, 2);
    CHECK(F9->q() == 9);
    int order_counts = 0;
    for (std::uint64_t i = 1; i < 9; ++i) {
        Ffq a = Ffq::from_index(F9, i);
        Ffq acc = a;
        int ord = 1;
        while (!acc.is_one()) {
            acc *= a;
            ++ord;
        }
        CHECK(8 % ord == 0);
        if (ord == 8) ++order_counts;
    }
    CHECK(order_counts == 4);  // phi(8) generators of the cyclic group

    // independently built contexts of the same field interoperate
    auto F4b = FqCtx::make(2, 2);
    CHECK(Ffq(F4, 1) + Ffq(F4b, 1) == Ffq(F4, 0));

    auto F5 = FqCtx::make(5);
    CHECK_THROWS_AS(Ffq(F4, 1) + Ffq(F5, 1), std::invalid_argument);
    CHECK_THROWS_AS(FqCtx::make(4), std::invalid_argument);
}

TEST_CASE("psi is the expected character") {
    CHECK(psi_eval(Rat(0), 3, 1) == Cyclo::one());
    CHECK(psi_eval(Rat(7), 3, 1) == Cyclo::one());  // integers land in the conductor
    // p=3, N=1: psi(1/3) is the primitive cube root zeta_3
    Cyclo z = psi_eval(Rat(1, 3), 3, 1);
    CHECK(z == Cyclo::zeta_pow(3, 1, 1));
    CHECK(z.coeffs().size() == 2);
    CHECK(z.coeffs()[0].is_zero());
    CHECK(z.coeffs()[1].is_one());
    CHECK_THROWS_AS(psi_eval(Rat(1, 9), 3, 1), std::domain_error);
}

TEST_CASE("psi is a homomorphism (exact)") {
    Rng rng(20240612);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int trial = 0; trial < 60; ++trial) {
            // representable p-adic fractions a/p^s
            long long a = rng.int_in(-40, 40), b = rng.int_in(-40, 40);
            long long s1 = rng.int_in(0, 2), s2 = rng.int_in(0, 2);
            Rat x(a, BigInt(static_cast<long long>(p)).pow(s1).to_longlong());
            Rat y(b, BigInt(static_cast<long long>(p)).pow(s2).to_longlong());
            std::uint32_t N = 3;
            CHECK(psi_eval(x + y, p, N) == psi_eval(x, p, N) * psi_eval(y, p, N));
            CHECK(psi_eval(x, p, N) * psi_eval(-x, p, N) == Cyclo::one());
        }
    }
}

TEST_CASE("full character sum vanishes") {
    for (auto [p, N] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {2, 2}, {3, 1}, {3, 2}, {5, 1}}) {
        Cyclo sum;
        long long P = 1;
        for (std::uint32_t i = 0; i < N; ++i) P *= p;
        for (long long a = 0; a < P; ++a) sum += Cyclo::zeta_pow(p, N, a);
        CHECK(sum.is_zero());
    }
}

TEST_CASE("cyclo_abs_sq basics") {
    CHECK(cyclo_abs_sq(Cyclo::one()) == Cyclo::one());
    for (long long a = 0; a < 9; ++a)
        CHECK(cyclo_abs_sq(Cyclo::zeta_pow(3, 2, a)) == Cyclo::one());
    // 1 + zeta_3 = -zeta_3^2 is unimodular
    Cyclo w = Cyclo::one() + Cyclo::zeta_pow(3, 1, 1);
    CHECK(cyclo_abs_sq(w) == Cyclo::one());
    CHECK(w.is_unimodular());
    // 1 + zeta_4 = 1 + i has |.|^2 = 2
    Cyclo u = Cyclo::one() + Cyclo::zeta_pow(2, 2, 1);
    CHECK(cyclo_abs_sq(u) == Cyclo::from_int(2));
}

TEST_CASE("conjugation involution and abs_sq multiplicativity") {
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        std::uint32_t p = trial % 2 ? 3 : 2;
        std::uint32_t N = 2;
        Cyclo z, w;
        for (int k = 0; k < 3; ++k) {
            z += Cyclo::from_rat(rng.rat(5)) * Cyclo::zeta_pow(p, N, rng.int_in(0, 8));
            w += Cyclo::from_rat(rng.rat(5)) * Cyclo::zeta_pow(p, N, rng.int_in(0, 8));
        }
        CHECK(z.conj().conj() == z);
        CHECK(cyclo_abs_sq(z * w) == cyclo_abs_sq(z) * cyclo_abs_sq(w));
        if (!z.is_zero()) CHECK(z * z.inverse() == Cyclo::one());
    }
}

TEST_CASE("half powers of p") {
    Cyclo root3 = Cyclo::p_half_power(3, 1);
    CHECK(root3.half_pow_p() == 1);
    CHECK(root3 * root3 == Cyclo::from_int(3));
    CHECK(Cyclo::p_half_power(3, 2) == Cyclo::from_int(3));
    CHECK(Cyclo::p_half_power(3, -2) == Cyclo::from_rat(Rat(1, 3)));
    CHECK(root3.inverse() * root3 == Cyclo::one());
    CHECK(cyclo_abs_sq(root3) == Cyclo::from_int(3));
    // 1 + sqrt(3) is not representable in this tower
    CHECK_THROWS_AS(Cyclo::one() + root3, std::domain_error);
    // but adding across even powers is fine
    CHECK(Cyclo::one() + Cyclo::p_half_power(3, 2) == Cyclo::from_int(4));
    long long e = 0;
    CHECK(Cyclo::p_half_power(3, 4).as_p_power(3, e));
    CHECK(e == 2);
    CHECK_FALSE(Cyclo::from_int(6).as_p_power(3, e));
}
