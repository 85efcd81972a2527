#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "xact/distribution.hpp"
#include "xact/fourier.hpp"
#include "xact/matrix.hpp"
#include "xact/padic_level.hpp"

namespace xact {

/// Element of SL(2, Q).
struct SL2 {
    Mat<Rat> m;

    explicit SL2(Mat<Rat> mm) : m(std::move(mm)) {
        if (m.rows() != 2 || m.cols() != 2) throw std::invalid_argument("SL2: need 2x2");
        Rat det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        if (!det.is_one()) throw std::invalid_argument("SL2: determinant must be 1");
    }

    friend SL2 operator*(const SL2& a, const SL2& b) { return SL2(a.m * b.m); }
    friend bool operator==(const SL2& a, const SL2& b) { return a.m == b.m; }
    friend bool operator!=(const SL2& a, const SL2& b) { return !(a == b); }
};

inline SL2 sl2_identity() { return SL2(Mat<Rat>::identity(2, Rat())); }
inline SL2 sl2_n(const Rat& t) {
    auto m = Mat<Rat>::identity(2, Rat());
    m(0, 1) = t;
    return SL2(std::move(m));
}
inline SL2 sl2_nbar(const Rat& t) {
    auto m = Mat<Rat>::identity(2, Rat());
    m(1, 0) = t;
    return SL2(std::move(m));
}
inline SL2 sl2_a(const Rat& t) {
    if (t.is_zero()) throw std::invalid_argument("sl2_a: t must be nonzero");
    auto m = Mat<Rat>::zero(2, 2, Rat());
    m(0, 0) = t;
    m(1, 1) = t.inverse();
    return SL2(std::move(m));
}
inline SL2 sl2_j() {
    auto m = Mat<Rat>::zero(2, 2, Rat());
    m(0, 1) = Rat(-1);
    m(1, 0) = Rat(1);
    return SL2(std::move(m));
}

/// Generator token of a word acting through the Weil representation. J and
/// its inverse are primitive tokens; an upper unipotent N(t) is realized via
/// the conjugation identity n_t = J^{-1} nbar_{-t} J.
struct GenTok {
    enum class Kind { NBar, N, A, J, JInv };
    Kind kind = Kind::J;
    Rat t;

    static GenTok nbar(const Rat& t) { return GenTok{Kind::NBar, t}; }
    static GenTok n(const Rat& t) { return GenTok{Kind::N, t}; }
    static GenTok a(const Rat& t) { return GenTok{Kind::A, t}; }
    static GenTok j() { return GenTok{Kind::J, Rat()}; }
    static GenTok j_inv() { return GenTok{Kind::JInv, Rat()}; }
};

inline SL2 sl2_of_token(const GenTok& tok) {
    switch (tok.kind) {
        case GenTok::Kind::NBar: return sl2_nbar(tok.t);
        case GenTok::Kind::N: return sl2_n(tok.t);
        case GenTok::Kind::A: return sl2_a(tok.t);
        case GenTok::Kind::J: return sl2_j();
        case GenTok::Kind::JInv: return SL2(inverse(sl2_j().m));
    }
    throw std::logic_error("sl2_of_token: bad token");
}

inline SL2 sl2_of_word(const std::vector<GenTok>& word) {
    SL2 acc = sl2_identity();
    for (const auto& tok : word) acc = acc * sl2_of_token(tok);
    return acc;
}

/// Gauss-elimination decomposition into lower/upper unipotents; at most four
/// letters. The returned product equals g exactly.
inline std::vector<GenTok> sl2_decompose(const SL2& g) {
    const Rat& a = g.m(0, 0);
    const Rat& c = g.m(1, 0);
    const Rat& dd = g.m(1, 1);
    std::vector<GenTok> word;
    auto push_n = [&](const Rat& t) {
        if (!t.is_zero()) word.push_back(GenTok::n(t));
    };
    auto push_nbar = [&](const Rat& t) {
        if (!t.is_zero()) word.push_back(GenTok::nbar(t));
    };
    if (!c.is_zero()) {
        // g = n_x nbar_c n_y with x = (a-1)/c, y = (d-1)/c
        push_n((a - Rat(1)) / c);
        push_nbar(c);
        push_n((dd - Rat(1)) / c);
        return word;
    }
    if (a.is_one()) {
        push_n(g.m(0, 1));
        return word;
    }
    // c = 0, a != 1: g nbar_1 has lower-left entry 1/a != 0
    SL2 gn = g * sl2_nbar(Rat(1));
    push_n((gn.m(0, 0) - Rat(1)) * gn.m(1, 0).inverse());
    push_nbar(gn.m(1, 0));
    push_n((gn.m(1, 1) - Rat(1)) * gn.m(1, 0).inverse());
    push_nbar(Rat(-1));
    return word;
}

/// Exact matrix of a word of Weil-representation generators on a finite
/// level of S(W). Tracks input and output windows so compositions that move
/// levels are checked.
class WeilOp {
public:
    WeilOp(CosetSpace in, CosetSpace out, Mat<Cyclo> m)
        : in_(std::move(in)), out_(std::move(out)), m_(std::move(m)) {
        if (m_.rows() != out_.size() || m_.cols() != in_.size())
            throw std::invalid_argument("WeilOp: matrix shape mismatch");
    }

    const CosetSpace& in_space() const { return in_; }
    const CosetSpace& out_space() const { return out_; }
    const Mat<Cyclo>& matrix() const { return m_; }

    LevelledFunction apply(const LevelledFunction& f) const {
        if (f.space() != in_) throw std::invalid_argument("WeilOp: input level mismatch");
        LevelledFunction out(out_);
        for (std::size_t i = 0; i < out_.size(); ++i) {
            Cyclo acc;
            for (std::size_t j = 0; j < in_.size(); ++j) {
                if (m_(i, j).is_zero() || f.value(j).is_zero()) continue;
                acc += m_(i, j) * f.value(j);
            }
            out.set_value(i, acc);
        }
        return out;
    }

    /// this after other: (this o other)(f) = this(other(f)).
    WeilOp compose(const WeilOp& other) const {
        if (other.out_ != in_)
            throw std::invalid_argument("WeilOp: level chain mismatch in composition");
        return WeilOp(other.in_, out_, m_ * other.m_);
    }

    friend bool operator==(const WeilOp& a, const WeilOp& b) {
        return a.in_ == b.in_ && a.out_ == b.out_ && a.m_ == b.m_;
    }
    friend bool operator!=(const WeilOp& a, const WeilOp& b) { return !(a == b); }

private:
    CosetSpace in_, out_;
    Mat<Cyclo> m_;
};

/// pi(nbar_t) f (v) = psi(t B(v,v)) f(v): diagonal, unimodular entries.
inline WeilOp weil_nbar(const Rat& t, const BilinearFormB& b, const CosetSpace& sp) {
    if (b.d() != static_cast<std::size_t>(sp.d()))
        throw std::invalid_argument("weil_nbar: dimension mismatch");
    std::uint32_t p = sp.p();
    int m = sp.level().m, k = sp.level().k;
    if (!t.is_zero()) {
        // psi(t Q(v)) must be constant on p^k-cosets across the window
        long long vB = b.min_entry_valuation(p);
        long long val2 = (p == 2) ? 1 : 0;
        long long t_min = std::min(vB - m + k, vB + 2ll * k - val2);
        if (val_p(t, p) + t_min < 0)
            throw std::domain_error("weil_nbar: insufficient level for psi(t B(v,v))");
    }
    Mat<Cyclo> mat = Mat<Cyclo>::zero(sp.size(), sp.size(), Cyclo());
    for (std::size_t i = 0; i < sp.size(); ++i)
        mat(i, i) = t.is_zero() ? Cyclo::one() : psi_eval_auto(t * b.quad(sp.point(i)), p);
    return WeilOp(sp, sp, std::move(mat));
}

/// pi(a_t) f (v) = |t|^{-d/2} f(t^{-1} v): a coset permutation scaled by an
/// exact half power of p.
inline WeilOp weil_a(const Rat& t, const BilinearFormB& b, const CosetSpace& sp) {
    if (b.d() != static_cast<std::size_t>(sp.d()))
        throw std::invalid_argument("weil_a: dimension mismatch");
    if (t.is_zero()) throw std::invalid_argument("weil_a: t must be nonzero");
    std::uint32_t p = sp.p();
    int d = sp.d();
    long long v = val_p(t, p);
    Level in = sp.level();
    Level out{in.m - static_cast<int>(v), in.k + static_cast<int>(v)};
    if (out.m < 0 || out.k < 0)
        throw std::domain_error("weil_a: dilation leaves the level window");
    CosetSpace out_sp(p, d, out);
    // unit part acts by multiplication on coordinates, modulo p^{m+k}
    Rat unit = t * Rat(BigInt(static_cast<long long>(p))).pow(-v);
    long long modulus = sp.coord_modulus();
    BigInt num = ((unit.numerator() % BigInt(modulus)) + BigInt(modulus)) % BigInt(modulus);
    BigInt den = ((unit.denominator() % BigInt(modulus)) + BigInt(modulus)) % BigInt(modulus);
    // inverse of den mod p^{m+k} (denominator is prime to p)
    auto mod_inv = [&](BigInt x) {
        BigInt t0(0), t1(1), r0(modulus), r1 = x % BigInt(modulus);
        while (!r1.is_zero()) {
            BigInt q = r0 / r1;
            BigInt tmp = t0 - q * t1;
            t0 = t1;
            t1 = tmp;
            tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
        }
        return ((t0 % BigInt(modulus)) + BigInt(modulus)) % BigInt(modulus);
    };
    BigInt unit_inv_big = (mod_inv(num) * den) % BigInt(modulus);
    long long unit_inv = unit_inv_big.to_longlong();
    Cyclo scale = Cyclo::p_half_power(p, v * d);  // |t|^{-d/2} = p^{vd/2}
    Mat<Cyclo> mat = Mat<Cyclo>::zero(out_sp.size(), sp.size(), Cyclo());
    for (std::size_t yi = 0; yi < out_sp.size(); ++yi) {
        // t^{-1} y has input coordinates u^{-1} a_j (the p-power moves the level)
        auto ya = out_sp.coords(yi);
        std::vector<long long> xa(ya.size());
        for (std::size_t j = 0; j < ya.size(); ++j) xa[j] = (ya[j] * unit_inv) % modulus;
        mat(yi, sp.index(xa)) = scale;
    }
    return WeilOp(sp, out_sp, std::move(mat));
}

/// pi(J) = F_B as an exact matrix.
inline WeilOp weil_j(const BilinearFormB& b, const CosetSpace& sp) {
    if (b.d() != static_cast<std::size_t>(sp.d()))
        throw std::invalid_argument("weil_j: dimension mismatch");
    std::uint32_t p = sp.p();
    long long smax = b.s_max(p);
    Level out = fourier_detail::output_level(sp.level(), smax);
    CosetSpace out_sp(p, sp.d(), out);
    Mat<Cyclo> mat = Mat<Cyclo>::zero(out_sp.size(), sp.size(), Cyclo());
    for (std::size_t ci = 0; ci < sp.size(); ++ci) {
        LevelledFunction col = fourier(LevelledFunction::indicator(sp, ci), b);
        if (col.space() != out_sp) throw std::logic_error("weil_j: window mismatch");
        for (std::size_t yi = 0; yi < out_sp.size(); ++yi) mat(yi, ci) = col.value(yi);
    }
    return WeilOp(sp, out_sp, std::move(mat));
}

/// R o op, the reflection f(x) -> f(-x) composed after op: a row permutation.
/// Used for pi(J)^{-1} = pi(J)^3 = R o pi(J); the identity pi(J)^2 = R is
/// asserted exactly by the operator tests, this just skips two dense products.
inline WeilOp reflect_after(const WeilOp& op) {
    const CosetSpace& out = op.out_space();
    Mat<Cyclo> m(out.size(), op.in_space().size(), Cyclo());
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t src = out.negate(i);
        for (std::size_t j = 0; j < op.in_space().size(); ++j) m(i, j) = op.matrix()(src, j);
    }
    return WeilOp(op.in_space(), out, std::move(m));
}

/// Realize one generator token at the given level. N(t) is the conjugate
/// J^{-1} nbar_{-t} J.
inline WeilOp realize_token(const GenTok& tok, const BilinearFormB& b, const CosetSpace& sp) {
    switch (tok.kind) {
        case GenTok::Kind::NBar: return weil_nbar(tok.t, b, sp);
        case GenTok::Kind::A: return weil_a(tok.t, b, sp);
        case GenTok::Kind::J: return weil_j(b, sp);
        case GenTok::Kind::JInv: return reflect_after(weil_j(b, sp));
        case GenTok::Kind::N: {
            WeilOp j = weil_j(b, sp);
            return reflect_after(j).compose(weil_nbar(-tok.t, b, sp).compose(j));
        }
    }
    throw std::logic_error("realize_token: bad token");
}

/// Product of token realizations, rightmost applied first. The Fourier
/// operator is built once and shared across tokens.
inline WeilOp realize_word(const std::vector<GenTok>& word, const BilinearFormB& b,
                           const CosetSpace& sp) {
    std::optional<WeilOp> j;
    auto fourier_op = [&]() -> const WeilOp& {
        if (!j) j = weil_j(b, sp);
        return *j;
    };
    std::optional<WeilOp> acc;
    auto push = [&](WeilOp op) { acc = acc ? op.compose(*acc) : std::move(op); };
    for (std::size_t i = word.size(); i-- > 0;) {
        const GenTok& tok = word[i];
        switch (tok.kind) {
            case GenTok::Kind::NBar: push(weil_nbar(tok.t, b, sp)); break;
            case GenTok::Kind::A: push(weil_a(tok.t, b, sp)); break;
            case GenTok::Kind::J: push(fourier_op()); break;
            case GenTok::Kind::JInv: push(reflect_after(fourier_op())); break;
            case GenTok::Kind::N:
                push(reflect_after(fourier_op())
                         .compose(weil_nbar(-tok.t, b, sp).compose(fourier_op())));
                break;
        }
    }
    if (!acc) return WeilOp(sp, sp, Mat<Cyclo>::identity(sp.size(), Cyclo()));
    return *acc;
}

struct ProjectiveVerdict {
    bool same_sl2 = false;
    bool proportional = false;
    bool unimodular = false;
    Cyclo ratio;
    std::string witness;

    bool holds() const { return same_sl2 && proportional && unimodular; }
};

/// Projectivity check: both words realize the same SL2 element; their
/// operator products must agree up to an exactly unimodular scalar.
inline ProjectiveVerdict projective_check(const std::vector<GenTok>& word1,
                                          const std::vector<GenTok>& word2,
                                          const BilinearFormB& b, const CosetSpace& sp) {
    ProjectiveVerdict v;
    v.same_sl2 = sl2_of_word(word1) == sl2_of_word(word2);
    if (!v.same_sl2) {
        v.witness = "words multiply to different SL2 elements";
        return v;
    }
    WeilOp p1 = realize_word(word1, b, sp);
    WeilOp p2 = realize_word(word2, b, sp);
    if (p1.in_space() != p2.in_space() || p1.out_space() != p2.out_space()) {
        v.witness = "realized operators live on different windows";
        return v;
    }
    const Mat<Cyclo>& m1 = p1.matrix();
    const Mat<Cyclo>& m2 = p2.matrix();
    // locate a nonzero reference entry of m2
    std::size_t ri = 0, rj = 0;
    bool found = false;
    for (std::size_t i = 0; i < m2.rows() && !found; ++i)
        for (std::size_t j = 0; j < m2.cols() && !found; ++j)
            if (!m2(i, j).is_zero()) {
                ri = i;
                rj = j;
                found = true;
            }
    if (!found) {
        v.witness = "second operator is zero";
        return v;
    }
    v.ratio = m1(ri, rj) / m2(ri, rj);
    for (std::size_t i = 0; i < m2.rows(); ++i)
        for (std::size_t j = 0; j < m2.cols(); ++j)
            if (!(m1(i, j) == v.ratio * m2(i, j))) {
                v.witness = "entry (" + std::to_string(i) + "," + std::to_string(j) +
                            ") breaks proportionality";
                return v;
            }
    v.proportional = true;
    v.unimodular = v.ratio.is_unimodular();
    if (!v.unimodular) v.witness = "ratio " + v.ratio.to_string() + " is not unimodular";
    return v;
}

/// xi composed with an endomorphism of its own level: new weights are the
/// transpose action.
inline FiniteDistribution pullback(const FiniteDistribution& xi, const WeilOp& op) {
    if (op.in_space() != xi.space() || op.out_space() != xi.space())
        throw std::invalid_argument("pullback: operator must preserve the distribution level");
    FiniteDistribution out(xi.space());
    const Mat<Cyclo>& m = op.matrix();
    for (std::size_t d = 0; d < xi.space().size(); ++d) {
        Cyclo acc;
        for (std::size_t c = 0; c < xi.space().size(); ++c) {
            if (xi.weight(c).is_zero() || m(c, d).is_zero()) continue;
            acc += xi.weight(c) * m(c, d);
        }
        out.set_weight(d, acc);
    }
    return out;
}

struct MetaplecticVerdict {
    bool preconditions = false;
    std::string reason;
    bool nbar_fixes = false;
    bool conj_unipotent_unimodular = false;
    HomogeneityVerdict degree;
    bool degree_matches = false;

    bool holds() const {
        return preconditions && nbar_fixes && conj_unipotent_unimodular && degree_matches;
    }
};

/// Operational replay of the metaplectic support argument: a distribution
/// with xi and F_B(xi) supported on the isotropic cone is fixed by the lower
/// unipotents, fixed up to a unimodular scalar by the conjugated upper
/// unipotents, and abs-homogeneous of degree dim W / 2.
inline MetaplecticVerdict metaplectic_test(const FiniteDistribution& xi,
                                           const BilinearFormB& b) {
    MetaplecticVerdict v;
    CellSet cone = CellSet::isotropic_cone();
    if (!supported_in(xi, cone, b)) {
        v.reason = "xi is not supported in Z(B)";
        return v;
    }
    FiniteDistribution dual = distribution_fourier(xi, b);
    if (dual.space() != xi.space() || !supported_in(dual, cone, b)) {
        v.reason = "F_B(xi) is not supported in Z(B)";
        return v;
    }
    v.preconditions = true;
    if (xi.is_zero()) {  // vacuous: all operators fix zero, any degree
        v.nbar_fixes = true;
        v.conj_unipotent_unimodular = true;
        v.degree = abs_homogeneity_degree(xi, {1});
        v.degree_matches = v.degree.kind == HomogeneityVerdict::Kind::AnyDegree;
        return v;
    }
    const CosetSpace& sp = xi.space();
    std::vector<Rat> ts{Rat(1), Rat(-1), Rat(2)};
    v.nbar_fixes = true;
    for (const Rat& t : ts)
        if (pullback(xi, weil_nbar(t, b, sp)) != xi) v.nbar_fixes = false;
    v.conj_unipotent_unimodular = true;
    WeilOp j = weil_j(b, sp);
    WeilOp jinv = reflect_after(j);
    for (const Rat& t : ts) {
        WeilOp conj = jinv.compose(weil_nbar(t, b, sp)).compose(j);
        FiniteDistribution moved = pullback(xi, conj);
        // moved must be a unimodular multiple of xi
        std::size_t ref = xi.support().front();
        if (moved.weight(ref).is_zero()) {
            v.conj_unipotent_unimodular = false;
            continue;
        }
        Cyclo u = moved.weight(ref) / xi.weight(ref);
        bool prop = u.is_unimodular();
        for (std::size_t i = 0; i < sp.size() && prop; ++i)
            if (!(moved.weight(i) == u * xi.weight(i))) prop = false;
        if (!prop) v.conj_unipotent_unimodular = false;
    }
    int window = sp.level().m + sp.level().k;
    std::vector<int> exps{1};
    if (window >= 2) exps.push_back(2);
    v.degree = abs_homogeneity_degree(xi, exps);
    v.degree_matches = v.degree.is_degree(Rat(sp.d(), 2));
    return v;
}

}  // namespace xact
