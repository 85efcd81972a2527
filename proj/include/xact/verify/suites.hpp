#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xact/gtilde.hpp"
#include "xact/jordan.hpp"
#include "xact/json_io.hpp"
#include "xact/orbits.hpp"
#include "xact/sets_x.hpp"
#include "xact/slices.hpp"
#include "xact/subspace.hpp"
#include "xact/verify/report.hpp"
#include "xact/verify/runner.hpp"
#include "xact/weil.hpp"

namespace xact::verify {

/// Bad arguments or desk-scale cap violations: exit code 2 at the CLI.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::shared_ptr<const FqCtx> field_ctx(const std::string& field) {
    if (field.rfind("gf", 0) != 0) throw UsageError("field must be Q or gf<q>");
    std::uint64_t q = std::stoull(field.substr(2));
    auto [p, m] = split_prime_power(q);
    return FqCtx::make(p, m);
}

inline bool field_is_q(const std::string& field) { return field == "Q" || field == "q"; }

namespace detail {

inline void check_exhaustive_cap(std::uint64_t q, std::size_t n) {
    if (n > 8) throw UsageError("exhaustive suites cap at n <= 8");
    double total = 1;
    for (std::size_t i = 0; i < 2 * n; ++i) total *= static_cast<double>(q);
    if (total > 4e6) throw UsageError("exhaustive suite would enumerate more than 4e6 pairs");
}

inline Mat<Rat> random_qmat(Rng& rng, std::size_t n, long long bound = 9) {
    Mat<Rat> m(n, n, Rat());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.rat(bound);
    return m;
}

inline Mat<Rat> random_invertible(Rng& rng, std::size_t n) {
    Mat<Rat> l = Mat<Rat>::identity(n, Rat());
    Mat<Rat> u = Mat<Rat>::identity(n, Rat());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = Rat(rng.int_in(-3, 3));
            u(j, i) = Rat(rng.int_in(-3, 3));
        }
    return l * u;
}

inline PointX<Rat> random_point(Rng& rng, std::size_t n) {
    Mat<Rat> a = random_qmat(rng, n, 4);
    Rat t = a.trace();
    a(n - 1, n - 1) = a(n - 1, n - 1) - t;
    std::vector<Rat> v, phi;
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(rng.rat(4));
        phi.push_back(rng.rat(4));
    }
    return make_point(std::move(a), Vec<Rat>(std::move(v)), Covec<Rat>(std::move(phi)));
}

/// Enumerates every (v, phi) pair over GF(q)^n x (GF(q)^n)^*.
template <class F>
void for_each_pair(const std::shared_ptr<const FqCtx>& ctx, std::size_t n, F&& fn) {
    std::uint64_t q = ctx->q();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < 2 * n; ++i) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::vector<Ffq> ve, fe;
        ve.reserve(n);
        fe.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            ve.push_back(Ffq::from_index(ctx, c % q));
            c /= q;
        }
        for (std::size_t i = 0; i < n; ++i) {
            fe.push_back(Ffq::from_index(ctx, c % q));
            c /= q;
        }
        if (!fn(Vec<Ffq>(std::move(ve)), Covec<Ffq>(std::move(fe)))) return;
    }
}

template <class K>
Json pair_witness(const std::string& field, const Vec<K>& v, const Covec<K>& phi) {
    Json j;
    j["field"] = field;
    Json vv = Json::array(), ff = Json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if constexpr (std::is_same_v<K, Rat>) {
            vv.push_back(v[i].to_string());
            ff.push_back(phi[i].to_string());
        } else {
            vv.push_back(v[i].index());
            ff.push_back(phi[i].index());
        }
    }
    j["v"] = vv;
    j["phi"] = ff;
    return j;
}

inline std::string partition_name(const std::vector<std::size_t>& part) {
    std::string s;
    for (auto p : part) s += (s.empty() ? "" : "+") + std::to_string(p);
    return s;
}

inline std::vector<Rat> lambda_samples_from_config(const SuiteConfig& cfg) {
    if (cfg.lambda_samples.empty()) return default_lambda_samples(Rat());
    std::vector<Rat> out;
    for (const auto& s : cfg.lambda_samples) out.push_back(Rat::from_string(s));
    return out;
}

}  // namespace detail

// ---- suite: Q(A) ⊆ Z for Jordan blocks -------------------

inline Check check_q_in_z(const std::string& field, std::size_t r) {
    return Check{
        "q-in-z/" + field + "/r" + std::to_string(r), [field, r](Rng&) -> CheckResult {
            auto ctx = field_ctx(field);
            detail::check_exhaustive_cap(ctx->q(), r);
            Ffq zero(ctx, 0);
            QaTester<Ffq> qa(jordan_matrix(std::vector<std::size_t>{r}, zero));
            auto flags = flag_spaces(r, zero);
            std::optional<Json> witness;
            long long members = 0;
            detail::for_each_pair(ctx, r, [&](Vec<Ffq> v, Covec<Ffq> phi) {
                if (!qa.contains(v, phi)) return true;
                ++members;
                if (!in_Z(v, phi, flags)) {
                    witness = detail::pair_witness(field, v, phi);
                    return false;
                }
                return true;
            });
            if (witness) return CheckResult::fail("", *witness);
            if (members == 0)
                return CheckResult::fail("", Json{{"error", "no Q_A members found"}});
            return CheckResult::pass("");
        }};
}

inline std::vector<Check> suite_linalg_lemma(const SuiteConfig&) {
    std::vector<Check> checks;
    for (const std::string field : {"gf2", "gf3"})
        for (std::size_t r : {2u, 3u, 4u}) checks.push_back(check_q_in_z(field, r));
    return checks;
}

// ---- suite: Q_{A1+A2} ⊆ Q_{A1} x Q_{A2} -------------------

inline Check check_qdirectsum(const std::string& field, std::vector<std::size_t> p1,
                              std::vector<std::size_t> p2) {
    std::string id = "q-direct-sum/" + field + "/" + detail::partition_name(p1) + "|" +
                     detail::partition_name(p2);
    return Check{id, [field, p1, p2](Rng&) -> CheckResult {
                     auto ctx = field_ctx(field);
                     std::size_t k = 0, l = 0;
                     for (auto x : p1) k += x;
                     for (auto x : p2) l += x;
                     detail::check_exhaustive_cap(ctx->q(), k + l);
                     Ffq zero(ctx, 0);
                     Mat<Ffq> a1 = jordan_matrix(p1, zero);
                     Mat<Ffq> a2 = jordan_matrix(p2, zero);
                     QaTester<Ffq> qa(direct_sum(a1, a2));
                     QaTester<Ffq> qa1(a1), qa2(a2);
                     std::optional<Json> witness;
                     detail::for_each_pair(ctx, k + l, [&](Vec<Ffq> v, Covec<Ffq> phi) {
                         if (!qa.contains(v, phi)) return true;
                         auto [v1, v2] = split_vec(v, k);
                         auto [f1, f2] = split_covec(phi, k);
                         if (!qa1.contains(v1, f1) || !qa2.contains(v2, f2)) {
                             witness = detail::pair_witness(field, v, phi);
                             return false;
                         }
                         return true;
                     });
                     if (witness) return CheckResult::fail("", *witness);
                     return CheckResult::pass("");
                 }};
}

inline std::vector<Check> suite_qdirectsum(const SuiteConfig&) {
    std::vector<Check> checks;
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::size_t l = 1; k + l <= 4; ++l)
            for (const auto& p1 : partitions_of(k))
                for (const auto& p2 : partitions_of(l))
                    checks.push_back(check_qdirectsum("gf2", p1, p2));
    return checks;
}

// ---- suite: trace identity --------------------------------

inline std::vector<Check> suite_trace_identity(const SuiteConfig&) {
    std::vector<Check> checks;
    for (int chunk = 0; chunk < 20; ++chunk) {
        checks.push_back(Check{
            "trace-identity/chunk" + std::to_string(chunk), [](Rng& rng) -> CheckResult {
                for (int t = 0; t < 50; ++t) {
                    std::size_t n = static_cast<std::size_t>(rng.int_in(1, 5));
                    Mat<Rat> a = detail::random_qmat(rng, n);
                    Mat<Rat> b = detail::random_qmat(rng, n);
                    Mat<Rat> c = commutator(a, b);
                    Mat<Rat> apow = Mat<Rat>::identity(n, Rat());
                    for (std::size_t i = 0; i <= n; ++i) {
                        if (!(apow * c).trace().is_zero() ||
                            !(apow * commutator(a, apow * b)).trace().is_zero())
                            return CheckResult::fail(
                                "", Json{{"A", mat_to_json(a)},
                                         {"B", mat_to_json(b)},
                                         {"i", i}});
                        apow = apow * a;
                    }
                }
                return CheckResult::pass("");
            }});
    }
    return checks;
}

// ---- suite: Jordan-Chevalley ------------------------------

inline std::vector<Check> suite_jordan_chevalley(const SuiteConfig&) {
    std::vector<Check> checks;
    for (int chunk = 0; chunk < 20; ++chunk) {
        checks.push_back(Check{
            "jordan-chevalley/invariants" + std::to_string(chunk), [](Rng& rng) -> CheckResult {
                for (int t = 0; t < 10; ++t) {
                    std::size_t n = static_cast<std::size_t>(rng.int_in(1, 5));
                    Mat<Rat> a = detail::random_qmat(rng, n, 4);
                    JCDecomp dec = jordan_chevalley(a);
                    Json wit{{"A", mat_to_json(a)}};
                    if (!(dec.semisimple + dec.nilpotent == a))
                        return CheckResult::fail("", Json{{"broken", "sum"}, {"input", wit}});
                    if (!commutator(dec.semisimple, dec.nilpotent).is_zero())
                        return CheckResult::fail("", Json{{"broken", "commute"}, {"input", wit}});
                    if (!mat_pow(dec.nilpotent, n).is_zero())
                        return CheckResult::fail("", Json{{"broken", "nilpotent"}, {"input", wit}});
                    if (!min_poly(dec.semisimple).is_squarefree())
                        return CheckResult::fail("",
                                                 Json{{"broken", "squarefree"}, {"input", wit}});
                }
                return CheckResult::pass("");
            }});
    }
    for (int chunk = 0; chunk < 10; ++chunk) {
        checks.push_back(Check{
            "jordan-chevalley/equivariance" + std::to_string(chunk),
            [](Rng& rng) -> CheckResult {
                for (int t = 0; t < 10; ++t) {
                    std::size_t n = static_cast<std::size_t>(rng.int_in(2, 5));
                    Mat<Rat> a = detail::random_qmat(rng, n, 3);
                    Mat<Rat> g = detail::random_invertible(rng, n);
                    Mat<Rat> gi = inverse(g);
                    if (!(jc_map(g * a * gi) == g * jc_map(a) * gi))
                        return CheckResult::fail(
                            "", Json{{"A", mat_to_json(a)}, {"g", mat_to_json(g)}});
                }
                return CheckResult::pass("");
            }});
    }
    return checks;
}

// ---- suite: orbit dimensions ------------------------------

inline std::vector<Check> suite_orbit_dimension(const SuiteConfig&) {
    std::vector<Check> checks;
    for (std::size_t n = 1; n <= 5; ++n) {
        checks.push_back(Check{
            "orbit-dimension/n" + std::to_string(n), [n](Rng&) -> CheckResult {
                for (const auto& part : partitions_of(n)) {
                    Mat<Rat> a = jordan_matrix(part, Rat());
                    auto prof = nilpotent_profile(a);
                    long long tangent = static_cast<long long>(ad_image(a).dim());
                    if (prof.partition != part || prof.orbit_dim != tangent ||
                        prof.orbit_dim % 2 != 0)
                        return CheckResult::fail(
                            "", Json{{"partition", part},
                                     {"formula", prof.orbit_dim},
                                     {"ad_image_dim", tangent}});
                }
                return CheckResult::pass("");
            }});
    }
    return checks;
}

// ---- suite: Gtilde group and action ------------------------

namespace detail {

inline std::vector<Gtilde<Ffq>> all_gtilde_gf2_n2() {
    auto ctx = FqCtx::make(2);
    Ffq zero(ctx, 0);
    std::vector<Gtilde<Ffq>> out;
    for (int code = 0; code < 16; ++code) {
        Mat<Ffq> m(2, 2, zero);
        int c = code;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                m(i, j) = Ffq(ctx, c & 1);
                c >>= 1;
            }
        if (!is_invertible(m)) continue;
        out.push_back(Gtilde<Ffq>::aut(m));
        out.push_back(Gtilde<Ffq>::iso(m));
    }
    return out;
}

inline std::vector<PointX<Ffq>> all_points_gf2_n2() {
    auto ctx = FqCtx::make(2);
    Ffq zero(ctx, 0);
    std::vector<PointX<Ffq>> pts;
    for (int code = 0; code < 128; ++code) {
        int c = code;
        auto bit = [&]() {
            Ffq b(ctx, c & 1);
            c >>= 1;
            return b;
        };
        Mat<Ffq> a(2, 2, zero);
        a(0, 0) = bit();
        a(0, 1) = bit();
        a(1, 0) = bit();
        a(1, 1) = a(0, 0);
        Vec<Ffq> v(std::vector<Ffq>{bit(), bit()});
        Covec<Ffq> phi(std::vector<Ffq>{bit(), bit()});
        pts.push_back(make_point(std::move(a), std::move(v), std::move(phi)));
    }
    return pts;
}

}  // namespace detail

inline std::vector<Check> suite_gtilde_axioms(const SuiteConfig&) {
    std::vector<Check> checks;
    checks.push_back(Check{"gtilde/group-axioms-gf2-n2", [](Rng&) -> CheckResult {
        auto els = detail::all_gtilde_gf2_n2();
        if (els.size() != 12)
            return CheckResult::fail("", Json{{"expected", 12}, {"got", els.size()}});
        auto id = Gtilde<Ffq>::identity(2, Ffq(FqCtx::make(2), 0));
        for (std::size_t x = 0; x < els.size(); ++x) {
            if (!(els[x] * els[x].inverse_el() == id))
                return CheckResult::fail("", Json{{"broken", "inverse"}, {"x", x}});
            for (std::size_t y = 0; y < els.size(); ++y) {
                auto xy = els[x] * els[y];
                if (xy.chi() != els[x].chi() * els[y].chi())
                    return CheckResult::fail("", Json{{"broken", "chi"}, {"x", x}, {"y", y}});
                for (std::size_t w = 0; w < els.size(); ++w)
                    if (!((els[x] * els[y]) * els[w] == els[x] * (els[y] * els[w])))
                        return CheckResult::fail(
                            "", Json{{"broken", "assoc"}, {"x", x}, {"y", y}, {"w", w}});
            }
        }
        return CheckResult::pass("");
    }});
    checks.push_back(Check{"gtilde/action-axiom-gf2-n2", [](Rng&) -> CheckResult {
        auto els = detail::all_gtilde_gf2_n2();
        auto pts = detail::all_points_gf2_n2();
        for (std::size_t x = 0; x < els.size(); ++x)
            for (std::size_t y = 0; y < els.size(); ++y) {
                auto xy = els[x] * els[y];
                for (std::size_t pi = 0; pi < pts.size(); ++pi)
                    if (!(act(xy, pts[pi]) == act(els[x], act(els[y], pts[pi]))))
                        return CheckResult::fail(
                            "", Json{{"broken", "action"}, {"x", x}, {"y", y}, {"pt", pi}});
            }
        return CheckResult::pass("");
    }});
    checks.push_back(Check{"gtilde/action-axiom-q-randomized", [](Rng& rng) -> CheckResult {
        for (int t = 0; t < 40; ++t) {
            std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
            auto p = detail::random_point(rng, n);
            auto gx = detail::random_invertible(rng, n);
            auto hy = detail::random_invertible(rng, n);
            for (auto x : {Gtilde<Rat>::aut(gx), Gtilde<Rat>::iso(gx)})
                for (auto y : {Gtilde<Rat>::aut(hy), Gtilde<Rat>::iso(hy)})
                    if (!(act(x * y, p) == act(x, act(y, p))))
                        return CheckResult::fail("", Json{{"g", mat_to_json(gx)},
                                                          {"h", mat_to_json(hy)},
                                                          {"pt", point_to_json(p)}});
        }
        return CheckResult::pass("");
    }});
    checks.push_back(Check{"gtilde/coordinate-T-matches-iso", [](Rng& rng) -> CheckResult {
        for (const auto& p : detail::all_points_gf2_n2()) {
            auto T = Gtilde<Ffq>::transposition(2, p.A.exemplar());
            if (!(coordinate_T_act(p) == act(T, p)))
                return CheckResult::fail("", Json{{"field", "gf2"}});
        }
        for (int t = 0; t < 30; ++t) {
            std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
            auto p = detail::random_point(rng, n);
            auto T = Gtilde<Rat>::transposition(n, Rat());
            if (!(coordinate_T_act(p) == act(T, p)) || !(act(T, act(T, p)) == p))
                return CheckResult::fail("", Json{{"pt", point_to_json(p)}});
        }
        return CheckResult::pass("");
    }});
    return checks;
}

// ---- suite: nu laws ----------------------------------------

inline std::vector<Check> suite_nu_laws(const SuiteConfig& cfg) {
    auto samples = detail::lambda_samples_from_config(cfg);
    std::vector<Check> checks;
    checks.push_back(Check{"nu/group-law", [samples](Rng& rng) -> CheckResult {
        for (int t = 0; t < 40; ++t) {
            std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
            auto p = detail::random_point(rng, n);
            if (!(nu(Rat(0), p) == p))
                return CheckResult::fail("", Json{{"broken", "identity"}});
            for (const Rat& lam : samples)
                for (const Rat& mu : samples) {
                    if (!(nu(lam, nu(mu, p)) == nu(lam + mu, p)))
                        return CheckResult::fail(
                            "", Json{{"broken", "additivity"},
                                     {"lambda", lam.to_string()},
                                     {"mu", mu.to_string()},
                                     {"pt", point_to_json(p)}});
                    if (!nu(lam, p).A.trace().is_zero())
                        return CheckResult::fail("", Json{{"broken", "traceless"}});
                }
        }
        return CheckResult::pass("");
    }});
    checks.push_back(Check{"nu/commutes-with-action", [samples](Rng& rng) -> CheckResult {
        for (int t = 0; t < 30; ++t) {
            std::size_t n = static_cast<std::size_t>(rng.int_in(1, 4));
            auto p = detail::random_point(rng, n);
            auto g = detail::random_invertible(rng, n);
            for (auto x : {Gtilde<Rat>::aut(g), Gtilde<Rat>::iso(g)})
                for (const Rat& lam : samples)
                    if (!(nu(lam, act(x, p)) == act(x, nu(lam, p))))
                        return CheckResult::fail("", Json{{"lambda", lam.to_string()},
                                                          {"g", mat_to_json(g)},
                                                          {"iso", !x.is_aut()},
                                                          {"pt", point_to_json(p)}});
        }
        return CheckResult::pass("");
    }});
    return checks;
}

// ---- suite: Fourier exactness ------------------------------

inline std::vector<Check> suite_fourier_exact(const SuiteConfig&) {
    std::vector<Check> checks;
    for (std::uint32_t p : {2u, 3u}) {
        for (int d = 1; d <= 2; ++d) {
            std::string tag = "/p" + std::to_string(p) + "/d" + std::to_string(d);
            checks.push_back(Check{"fourier/reflection" + tag, [p, d](Rng&) -> CheckResult {
                CosetSpace sp(p, d, Level{1, 1});
                BilinearFormB b = d == 1 ? BilinearFormB::diagonal({Rat(1)})
                                         : BilinearFormB::hyperbolic(1);
                for (std::size_t i = 0; i < sp.size(); ++i) {
                    auto f = LevelledFunction::indicator(sp, i);
                    if (!(fourier(fourier(f, b), b) == f.reflect()))
                        return CheckResult::fail("", Json{{"basis_index", i}});
                }
                return CheckResult::pass("");
            }});
            checks.push_back(Check{"fourier/parseval" + tag, [p, d](Rng& rng) -> CheckResult {
                CosetSpace sp(p, d, Level{1, 1});
                BilinearFormB b = d == 1 ? BilinearFormB::diagonal({Rat(1)})
                                         : BilinearFormB::hyperbolic(1);
                Rat vol_in(1, BigInt(static_cast<long long>(p))
                                  .pow(static_cast<unsigned long long>(sp.level().k * d)));
                for (int t = 0; t < 5; ++t) {
                    LevelledFunction f(sp);
                    for (std::size_t i = 0; i < sp.size(); ++i) {
                        Cyclo c = Cyclo::from_rat(rng.rat(3));
                        if (rng.coin())
                            c += Cyclo::from_rat(rng.rat(2)) *
                                 Cyclo::zeta_pow(p, 1, rng.int_in(0, 2));
                        f.set_value(i, c);
                    }
                    auto ff = fourier(f, b);
                    Cyclo lhs, rhs;
                    for (std::size_t i = 0; i < sp.size(); ++i) {
                        lhs += f.value(i).abs_sq();
                        rhs += ff.value(i).abs_sq();
                    }
                    if (!(lhs * Cyclo::from_rat(vol_in) == rhs * Cyclo::from_rat(vol_in)))
                        return CheckResult::fail("", Json{{"trial", t}});
                }
                return CheckResult::pass("");
            }});
        }
        checks.push_back(Check{
            "fourier/partial-factorization/p" + std::to_string(p), [p](Rng&) -> CheckResult {
                CosetSpace sp(p, 2, Level{1, 1});
                auto b1 = BilinearFormB::diagonal({Rat(1)});
                auto bfull = BilinearFormB::diagonal({Rat(1), Rat(1)});
                for (std::size_t i = 0; i < sp.size(); ++i) {
                    auto f = LevelledFunction::indicator(sp, i);
                    auto composed =
                        partial_fourier(partial_fourier(f, 1, b1, false), 1, b1, true);
                    if (!composed.equal_as_functions(fourier(f, bfull)))
                        return CheckResult::fail("", Json{{"basis_index", i}});
                }
                return CheckResult::pass("");
            }});
    }
    return checks;
}

// ---- suite: abs-homogeneity calibration --------------------

inline std::vector<Check> suite_abs_homogeneity(const SuiteConfig&) {
    std::vector<Check> checks;
    for (std::uint32_t p : {2u, 3u})
        for (int d = 1; d <= 2; ++d) {
            std::string tag = "/p" + std::to_string(p) + "/d" + std::to_string(d);
            checks.push_back(Check{"abs-homogeneity/haar" + tag, [p, d](Rng&) -> CheckResult {
                CosetSpace sp(p, d, Level{1, 1});
                auto v = abs_homogeneity_degree(FiniteDistribution::haar(sp), {1, 2});
                if (!v.is_degree(Rat(d)))
                    return CheckResult::fail("", Json{{"expected", d}, {"witness", v.witness}});
                return CheckResult::pass("");
            }});
            checks.push_back(Check{"abs-homogeneity/delta" + tag, [p, d](Rng&) -> CheckResult {
                CosetSpace sp(p, d, Level{1, 1});
                auto v = abs_homogeneity_degree(FiniteDistribution::delta_at(sp, 0), {1, 2});
                if (!v.is_degree(Rat(0)))
                    return CheckResult::fail("", Json{{"expected", 0}, {"witness", v.witness}});
                return CheckResult::pass("");
            }});
        }
    return checks;
}

// ---- suite: metaplectic instance --------------------------

inline std::vector<Check> suite_metaplectic(const SuiteConfig&) {
    std::vector<Check> checks;
    for (std::uint32_t p : {2u, 3u}) {
        std::string tag = "/p" + std::to_string(p);
        checks.push_back(Check{"metaplectic/axis-haar" + tag, [p](Rng&) -> CheckResult {
            CosetSpace sp(p, 2, Level{1, 1});
            auto b = BilinearFormB::hyperbolic(1);
            auto axis = FiniteDistribution::haar_on(
                sp, [&](std::size_t i) { return sp.coords(i)[1] == 0; });
            auto v = metaplectic_test(axis, b);
            if (!v.holds() || !v.degree.is_degree(Rat(1)))
                return CheckResult::fail(
                    "", Json{{"preconditions", v.preconditions},
                             {"nbar_fixes", v.nbar_fixes},
                             {"conj_unipotent", v.conj_unipotent_unimodular},
                             {"degree_matches", v.degree_matches}});
            return CheckResult::pass("");
        }});
        checks.push_back(Check{"metaplectic/delta-rejected" + tag, [p](Rng&) -> CheckResult {
            CosetSpace sp(p, 2, Level{1, 1});
            auto b = BilinearFormB::hyperbolic(1);
            auto v = metaplectic_test(FiniteDistribution::delta_at(sp, 0), b);
            if (v.preconditions)
                return CheckResult::fail(
                    "", Json{{"error", "delta/haar pair should fail the support precondition"}});
            return CheckResult::pass("");
        }});
    }
    return checks;
}

// ---- suite: Weil projective relations ---------------------

inline std::vector<Check> suite_weil_relations(const SuiteConfig&) {
    std::vector<Check> checks;
    for (std::uint32_t p : {2u, 3u}) {
        std::string tag = "/p" + std::to_string(p);
        checks.push_back(Check{"weil/nbar-additivity" + tag, [p](Rng&) -> CheckResult {
            CosetSpace sp(p, 2, Level{1, 1});
            auto b = BilinearFormB::hyperbolic(1);
            for (long long t = -2; t <= 2; ++t)
                for (long long s = -2; s <= 2; ++s)
                    if (!(weil_nbar(Rat(t), b, sp).compose(weil_nbar(Rat(s), b, sp)) ==
                          weil_nbar(Rat(t + s), b, sp)))
                        return CheckResult::fail("", Json{{"t", t}, {"s", s}});
            return CheckResult::pass("");
        }});
        for (long long t : {1ll, 2ll}) {
            checks.push_back(Check{
                "weil/conj-unipotent" + tag + "/t" + std::to_string(t),
                [p, t](Rng&) -> CheckResult {
                    CosetSpace sp(p, 2, Level{1, 1});
                    auto b = BilinearFormB::hyperbolic(1);
                    std::vector<GenTok> lhs{GenTok::j_inv(), GenTok::nbar(Rat(t)), GenTok::j()};
                    auto rhs = sl2_decompose(sl2_n(Rat(-t)));
                    auto v = projective_check(lhs, rhs, b, sp);
                    if (!v.holds())
                        return CheckResult::fail("", Json{{"witness", v.witness},
                                                          {"ratio", cyclo_to_json(v.ratio)}});
                    return CheckResult::pass("");
                }});
        }
        checks.push_back(Check{"weil/j4-braid" + tag, [p](Rng&) -> CheckResult {
            CosetSpace sp(p, 2, Level{1, 1});
            auto b = BilinearFormB::hyperbolic(1);
            std::vector<GenTok> j4;
            for (int r = 0; r < 4; ++r) {
                j4.push_back(GenTok::nbar(Rat(1)));
                j4.push_back(GenTok::n(Rat(-1)));
                j4.push_back(GenTok::nbar(Rat(1)));
            }
            auto v = projective_check(j4, {}, b, sp);
            if (!v.holds())
                return CheckResult::fail(
                    "", Json{{"witness", v.witness}, {"ratio", cyclo_to_json(v.ratio)}});
            return CheckResult::pass("");
        }});
        checks.push_back(Check{"weil/braid-is-J" + tag, [p](Rng&) -> CheckResult {
            CosetSpace sp(p, 2, Level{1, 1});
            auto b = BilinearFormB::hyperbolic(1);
            auto v = projective_check(
                {GenTok::j()},
                {GenTok::nbar(Rat(1)), GenTok::n(Rat(-1)), GenTok::nbar(Rat(1))}, b, sp);
            if (!v.holds())
                return CheckResult::fail(
                    "", Json{{"witness", v.witness}, {"ratio", cyclo_to_json(v.ratio)}});
            return CheckResult::pass("");
        }});
    }
    return checks;
}

// ---- suite: orthocomplement identity ----------------------

inline std::vector<Check> suite_orthocomplement(const SuiteConfig&) {
    std::vector<Check> checks;
    for (std::size_t r : {2u, 3u, 4u}) {
        checks.push_back(Check{
            "orthocomplement/r" + std::to_string(r), [r](Rng&) -> CheckResult {
                auto flags = flag_spaces(r, Rat());
                auto embed_pair = [&](const Subspace<Rat>& fv, const Subspace<Rat>& lphi) {
                    std::vector<std::vector<Rat>> rows;
                    for (std::size_t i = 0; i < fv.dim(); ++i) {
                        std::vector<Rat> row(2 * r, Rat());
                        for (std::size_t j = 0; j < r; ++j) row[j] = fv.basis()(i, j);
                        rows.push_back(std::move(row));
                    }
                    for (std::size_t i = 0; i < lphi.dim(); ++i) {
                        std::vector<Rat> row(2 * r, Rat());
                        for (std::size_t j = 0; j < r; ++j) row[r + j] = lphi.basis()(i, j);
                        rows.push_back(std::move(row));
                    }
                    return Subspace<Rat>::span_of(rows, 2 * r, Rat());
                };
                auto s = embed_pair(flags.F[r - 1], flags.L[r - 1]);
                auto expected = embed_pair(flags.F[1], flags.L[1]);
                if (!(orthocomplement(s) == expected))
                    return CheckResult::fail(
                        "", Json{{"r", r},
                                 {"got_dim", orthocomplement(s).dim()},
                                 {"expected_dim", expected.dim()}});
                return CheckResult::pass("");
            }});
    }
    return checks;
}

// ---- suite registry ----------------------------------------------------------

std::vector<Check> build_suite(const SuiteConfig& cfg);
Report run_suite(SuiteConfig cfg);

// ---- suite: determinism ------------------------------------

inline std::vector<Check> suite_determinism(const SuiteConfig& cfg) {
    std::vector<Check> checks;
    checks.push_back(Check{"determinism/byte-identical-bodies", [cfg](Rng&) -> CheckResult {
        SuiteConfig sub;
        sub.suite = "trace-identity";
        sub.seed = cfg.seed ^ 0x5eedull;
        sub.workers = 1;
        Report r1 = run_suite(sub);
        sub.workers = 4;
        Report r4 = run_suite(sub);
        sub.workers = 1;
        Report r1b = run_suite(sub);
        if (r1.body_dump() != r4.body_dump())
            return CheckResult::fail("", Json{{"broken", "worker count changed the body"}});
        if (r1.body_dump() != r1b.body_dump())
            return CheckResult::fail("", Json{{"broken", "rerun changed the body"}});
        return CheckResult::pass("");
    }});
    return checks;
}

// ---- sets lemmas (CLI `sets` subcommand) --------------------------------------

/// Lemma checks parametrized over the field: exhaustive over GF(q), seeded
/// sparse sampling over Q (membership in Q_A is thin for dense random pairs).
inline Check sets_lemma_check(const SuiteConfig& cfg) {
    std::string lemma = cfg.suite;
    std::size_t n = cfg.n > 0 ? static_cast<std::size_t>(cfg.n) : 3;
    std::string id = "sets/" + lemma + "/" + cfg.field + "/n" + std::to_string(n);
    if (lemma == "linalg") {
        if (field_is_q(cfg.field))
            throw UsageError("lemma linalg enumerates Q_A pairs; use a finite field");
        return check_q_in_z(cfg.field, n);
    }
    if (lemma == "qdirectsum") {
        if (field_is_q(cfg.field))
            throw UsageError("lemma qdirectsum enumerates Q_A pairs; use a finite field");
        if (n < 2) throw UsageError("qdirectsum needs n >= 2");
        return Check{id, [cfg, n](Rng& rng) -> CheckResult {
                         for (std::size_t k = 1; k < n; ++k)
                             for (const auto& p1 : partitions_of(k))
                                 for (const auto& p2 : partitions_of(n - k)) {
                                     auto c = check_qdirectsum(cfg.field, p1, p2);
                                     auto r = c.run(rng);
                                     if (r.status == CheckResult::Status::Fail) {
                                         r.id = c.id;
                                         return r;
                                     }
                                 }
                         return CheckResult::pass("");
                     }};
    }
    if (lemma == "raqa") {
        return Check{id, [cfg, n](Rng& rng) -> CheckResult {
            if (field_is_q(cfg.field)) {
                auto samples = detail::lambda_samples_from_config(cfg);
                int tested = 0;
                for (int t = 0; t < 20000 && tested < 200; ++t) {
                    auto parts = partitions_of(n);
                    auto a = jordan_matrix(parts[rng.below(parts.size())], Rat());
                    long long dim = nilpotent_profile(a).orbit_dim;
                    QaTester<Rat> qa(a);
                    std::vector<Rat> ve, fe;
                    for (std::size_t i = 0; i < n; ++i) {
                        ve.push_back(rng.coin() ? Rat(0) : Rat(rng.int_in(-2, 2)));
                        fe.push_back(rng.coin() ? Rat(0) : Rat(rng.int_in(-2, 2)));
                    }
                    Vec<Rat> v(ve);
                    Covec<Rat> phi(fe);
                    if (!in_Y(v, phi)) continue;
                    auto pt = make_point(a, v, phi);
                    if (!in_Otilde_sampled(pt, dim, samples)) continue;
                    ++tested;
                    if (!qa.contains(v, phi))
                        return CheckResult::fail("", detail::pair_witness("Q", v, phi));
                }
                if (tested == 0)
                    return CheckResult::fail("", Json{{"error", "no Otilde points sampled"}});
                return CheckResult::pass("");
            }
            auto ctx = field_ctx(cfg.field);
            detail::check_exhaustive_cap(ctx->q(), n);
            Ffq zero(ctx, 0);
            auto samples = default_lambda_samples(zero);
            for (const auto& part : partitions_of(n)) {
                Mat<Ffq> a = jordan_matrix(part, zero);
                long long dim = nilpotent_profile(a).orbit_dim;
                QaTester<Ffq> qa(a);
                std::optional<Json> witness;
                detail::for_each_pair(ctx, n, [&](Vec<Ffq> v, Covec<Ffq> phi) {
                    if (!in_Y(v, phi)) return true;
                    auto pt = make_point(a, v, phi);
                    if (!in_Otilde_sampled(pt, dim, samples)) return true;
                    if (!qa.contains(v, phi)) {
                        witness = detail::pair_witness(cfg.field, v, phi);
                        return false;
                    }
                    return true;
                });
                if (witness) return CheckResult::fail("", *witness);
            }
            return CheckResult::pass("");
        }};
    }
    if (lemma == "tangent") {
        return Check{id, [cfg, n](Rng& rng) -> CheckResult {
            if (field_is_q(cfg.field)) {
                auto samples = detail::lambda_samples_from_config(cfg);
                int tested = 0;
                for (int t = 0; t < 20000 && tested < 200; ++t) {
                    auto parts = partitions_of(n);
                    auto a = jordan_matrix(parts[rng.below(parts.size())], Rat());
                    long long dim = nilpotent_profile(a).orbit_dim;
                    QaTester<Rat> qa(a);
                    std::vector<Rat> ve, fe;
                    for (std::size_t i = 0; i < n; ++i) {
                        ve.push_back(rng.coin() ? Rat(0) : Rat(rng.int_in(-2, 2)));
                        fe.push_back(rng.coin() ? Rat(0) : Rat(rng.int_in(-2, 2)));
                    }
                    Vec<Rat> v(ve);
                    Covec<Rat> phi(fe);
                    if (!in_Y(v, phi) || !qa.contains(v, phi)) continue;
                    ++tested;
                    for (const Rat& lam : samples) {
                        Mat<Rat> pencil = a + lam * rank_one(v, phi);
                        if (!is_nilpotent(pencil) || !in_stratum(pencil, dim))
                            return CheckResult::fail(
                                "", Json{{"lambda", lam.to_string()},
                                         {"pair", detail::pair_witness("Q", v, phi)}});
                    }
                }
                if (tested == 0)
                    return CheckResult::fail("", Json{{"error", "no Q_A pairs sampled"}});
                return CheckResult::pass("");
            }
            auto ctx = field_ctx(cfg.field);
            detail::check_exhaustive_cap(ctx->q(), n);
            Ffq zero(ctx, 0);
            auto samples = default_lambda_samples(zero);
            for (const auto& part : partitions_of(n)) {
                Mat<Ffq> a = jordan_matrix(part, zero);
                long long dim = nilpotent_profile(a).orbit_dim;
                QaTester<Ffq> qa(a);
                std::optional<Json> witness;
                detail::for_each_pair(ctx, n, [&](Vec<Ffq> v, Covec<Ffq> phi) {
                    if (!in_Y(v, phi) || !qa.contains(v, phi)) return true;
                    for (const Ffq& lam : samples) {
                        Mat<Ffq> pencil = a + lam * rank_one(v, phi);
                        if (!is_nilpotent(pencil) || !in_stratum(pencil, dim)) {
                            witness = detail::pair_witness(cfg.field, v, phi);
                            return false;
                        }
                    }
                    return true;
                });
                if (witness) return CheckResult::fail("", *witness);
            }
            return CheckResult::pass("");
        }};
    }
    throw UsageError("unknown lemma: " + lemma);
}

inline std::vector<Check> build_suite(const SuiteConfig& cfg) {
    const std::string& s = cfg.suite;
    if (s == "linalg-lemma") return suite_linalg_lemma(cfg);
    if (s == "qdirectsum") return suite_qdirectsum(cfg);
    if (s == "trace-identity") return suite_trace_identity(cfg);
    if (s == "jordan-chevalley") return suite_jordan_chevalley(cfg);
    if (s == "orbit-dimension") return suite_orbit_dimension(cfg);
    if (s == "gtilde-axioms") return suite_gtilde_axioms(cfg);
    if (s == "nu-laws") return suite_nu_laws(cfg);
    if (s == "fourier-exact") return suite_fourier_exact(cfg);
    if (s == "abs-homogeneity") return suite_abs_homogeneity(cfg);
    if (s == "metaplectic") return suite_metaplectic(cfg);
    if (s == "weil-relations") return suite_weil_relations(cfg);
    if (s == "orthocomplement") return suite_orthocomplement(cfg);
    if (s == "determinism") return suite_determinism(cfg);
    if (s == "all") {
        std::vector<Check> all;
        for (const char* name :
             {"linalg-lemma", "qdirectsum", "trace-identity", "jordan-chevalley",
              "orbit-dimension", "gtilde-axioms", "nu-laws", "fourier-exact",
              "abs-homogeneity", "metaplectic", "weil-relations", "orthocomplement",
              "determinism"}) {
            SuiteConfig sub = cfg;
            sub.suite = name;
            auto chunk = build_suite(sub);
            all.insert(all.end(), chunk.begin(), chunk.end());
        }
        return all;
    }
    throw UsageError("unknown suite: " + s);
}

inline Report run_suite(SuiteConfig cfg) {
    if (cfg.n < 0 || cfg.n > 16) throw UsageError("n must lie in [0, 16]");
    auto checks = build_suite(cfg);
    return run_checks(cfg, checks);
}

}  // namespace xact::verify
