#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "xact/cyclo.hpp"
#include "xact/distribution.hpp"
#include "xact/gf.hpp"
#include "xact/matrix.hpp"
#include "xact/orbits.hpp"
#include "xact/padic_level.hpp"
#include "xact/point_x.hpp"
#include "xact/rat.hpp"

namespace xact {

using Json = nlohmann::ordered_json;

// ---- scalars --------------------------------------------------------------

inline Json rat_to_json(const Rat& r) { return Json(r.to_string()); }

inline Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return Rat::from_string(j.get<std::string>());
    throw std::invalid_argument("json: expected a rational as \"num/den\" string or integer");
}

inline Json cyclo_to_json(const Cyclo& z) {
    Json j;
    j["p"] = z.p();
    j["N"] = z.level();
    Json coeffs = Json::array();
    for (const auto& c : z.coeffs()) coeffs.push_back(rat_to_json(c));
    j["coeffs"] = coeffs;
    j["halfPowP"] = z.half_pow_p();
    return j;
}

inline Cyclo cyclo_from_json(const Json& j) {
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    std::uint32_t level = j.at("N").get<std::uint32_t>();
    long long half = j.value("halfPowP", 0ll);
    Cyclo z;
    if (p != 0) {
        const auto& coeffs = j.at("coeffs");
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            Rat c = rat_from_json(coeffs[i]);
            if (!c.is_zero())
                z += Cyclo::from_rat(c) * Cyclo::zeta_pow(p, level, static_cast<long long>(i));
        }
        if (half != 0) z *= Cyclo::p_half_power(p, half);
        return z;
    }
    return Cyclo::from_rat(rat_from_json(j.at("coeffs").at(0)));
}

// ---- field tags and matrices ----------------------------------------------

struct FieldTag {
    bool is_q = true;
    std::uint64_t q = 0;  // prime power when !is_q

    static FieldTag rational() { return FieldTag{}; }
    static FieldTag gf(std::uint64_t q) { return FieldTag{false, q}; }
};

inline Json field_to_json(const FieldTag& f) {
    if (f.is_q) return Json("Q");
    Json j;
    j["gf"] = f.q;
    return j;
}

inline FieldTag field_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "Q") return FieldTag::rational();
    if (j.is_object() && j.contains("gf")) return FieldTag::gf(j["gf"].get<std::uint64_t>());
    throw std::invalid_argument("json: field must be \"Q\" or {\"gf\": q}");
}

/// Splits a prime power q into (p, m); errors on non-prime-powers.
inline std::pair<std::uint32_t, std::uint32_t> split_prime_power(std::uint64_t q) {
    if (q < 2) throw std::invalid_argument("gf: q must be >= 2");
    for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= q || p <= q; ++p) {
        if (q % p != 0) continue;
        std::uint32_t m = 0;
        std::uint64_t rest = q;
        while (rest % p == 0) {
            rest /= p;
            ++m;
        }
        if (rest != 1) throw std::invalid_argument("gf: q is not a prime power");
        return {p, m};
    }
    throw std::invalid_argument("gf: q is not a prime power");
}

inline Json mat_to_json(const Mat<Rat>& m) {
    Json j;
    j["field"] = field_to_json(FieldTag::rational());
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rat_to_json(m(i, c)));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

inline Json mat_to_json(const Mat<Ffq>& m) {
    Json j;
    j["field"] = field_to_json(FieldTag::gf(m.empty() ? 0 : m.exemplar().ctx()->q()));
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(i, c).index());
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

inline Mat<Rat> qmat_from_json(const Json& j) {
    FieldTag f = field_from_json(j.at("field"));
    if (!f.is_q) throw std::invalid_argument("json: expected a rational matrix");
    const auto& rows = j.at("entries");
    std::vector<std::vector<Rat>> data;
    for (const auto& row : rows) {
        std::vector<Rat> r;
        for (const auto& e : row) r.push_back(rat_from_json(e));
        data.push_back(std::move(r));
    }
    return Mat<Rat>::from_rows(data);
}

inline Mat<Ffq> gfmat_from_json(const Json& j) {
    FieldTag f = field_from_json(j.at("field"));
    if (f.is_q) throw std::invalid_argument("json: expected a finite-field matrix");
    auto [p, m] = split_prime_power(f.q);
    auto ctx = FqCtx::make(p, m);
    const auto& rows = j.at("entries");
    std::size_t nr = rows.size();
    std::size_t nc = nr ? rows[0].size() : 0;
    Mat<Ffq> out(nr, nc, Ffq(ctx, 0));
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t c = 0; c < nc; ++c)
            out(i, c) = Ffq::from_index(ctx, rows[i][c].get<std::uint64_t>());
    return out;
}

template <class K>
Json vec_to_json(const Vec<K>& v, const Json& field) {
    Json j;
    j["field"] = field;
    Json es = Json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if constexpr (std::is_same_v<K, Rat>)
            es.push_back(rat_to_json(v[i]));
        else
            es.push_back(v[i].index());
    }
    j["entries"] = es;
    return j;
}

template <class K>
Json covec_to_json(const Covec<K>& v, const Json& field) {
    Json j;
    j["field"] = field;
    Json es = Json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if constexpr (std::is_same_v<K, Rat>)
            es.push_back(rat_to_json(v[i]));
        else
            es.push_back(v[i].index());
    }
    j["entries"] = es;
    return j;
}

template <class K>
Json point_to_json(const PointX<K>& pt) {
    Json field = mat_to_json(pt.A)["field"];
    Json j;
    j["A"] = mat_to_json(pt.A);
    j["v"] = vec_to_json(pt.v, field);
    j["phi"] = covec_to_json(pt.phi, field);
    return j;
}

inline PointX<Rat> qpoint_from_json(const Json& j) {
    Mat<Rat> a = qmat_from_json(j.at("A"));
    std::vector<Rat> v, phi;
    for (const auto& e : j.at("v").at("entries")) v.push_back(rat_from_json(e));
    for (const auto& e : j.at("phi").at("entries")) phi.push_back(rat_from_json(e));
    return make_point(std::move(a), Vec<Rat>(std::move(v)), Covec<Rat>(std::move(phi)));
}

// ---- levels, functions, distributions --------------------------------------

/// Coset coordinate as a base-p digit string, most significant digit first
/// (digits 0-9 then a-z); the integer a encodes the point a * p^{-m}.
inline std::string coset_digit_string(long long a, std::uint32_t p, int m_plus_k) {
    static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyz";
    if (p > 36) throw std::invalid_argument("json: digit strings support p <= 36");
    std::string s;
    for (int i = 0; i < m_plus_k; ++i) {
        s.insert(s.begin(), digits[a % p]);
        a /= p;
    }
    return s.empty() ? "0" : s;
}

inline long long coset_digit_parse(const std::string& s, std::uint32_t p) {
    static const std::string digits = "0123456789abcdefghijklmnopqrstuvwxyz";
    long long a = 0;
    for (char c : s) {
        auto pos = digits.find(c);
        if (pos == std::string::npos || pos >= p)
            throw std::invalid_argument("json: bad base-p digit in coset string");
        a = a * p + static_cast<long long>(pos);
    }
    return a;
}

inline Json levelled_function_to_json(const LevelledFunction& f) {
    Json j;
    j["p"] = f.p();
    j["d"] = f.d();
    j["level"] = Json{{"m", f.level().m}, {"k", f.level().k}};
    Json entries = Json::array();
    int width = f.level().m + f.level().k;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.value(i).is_zero()) continue;
        Json e;
        Json coset = Json::array();
        for (long long a : f.space().coords(i))
            coset.push_back(coset_digit_string(a, f.p(), width));
        e["coset"] = coset;
        e["value"] = cyclo_to_json(f.value(i));
        entries.push_back(e);
    }
    j["entries"] = entries;
    return j;
}

inline LevelledFunction levelled_function_from_json(const Json& j) {
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    int d = j.at("d").get<int>();
    Level level{j.at("level").at("m").get<int>(), j.at("level").at("k").get<int>()};
    CosetSpace sp(p, d, level);
    LevelledFunction f(sp);
    for (const auto& e : j.at("entries")) {
        std::vector<long long> coords;
        for (const auto& c : e.at("coset"))
            coords.push_back(coset_digit_parse(c.get<std::string>(), p));
        f.set_value(sp.index(coords), cyclo_from_json(e.at("value")));
    }
    return f;
}

inline Json distribution_to_json(const FiniteDistribution& xi) {
    Json j;
    j["p"] = xi.p();
    j["d"] = xi.d();
    j["level"] = Json{{"m", xi.level().m}, {"k", xi.level().k}};
    Json entries = Json::array();
    int width = xi.level().m + xi.level().k;
    for (std::size_t i = 0; i < xi.space().size(); ++i) {
        if (xi.weight(i).is_zero()) continue;
        Json e;
        Json coset = Json::array();
        for (long long a : xi.space().coords(i))
            coset.push_back(coset_digit_string(a, xi.p(), width));
        e["coset"] = coset;
        e["value"] = cyclo_to_json(xi.weight(i));
        entries.push_back(e);
    }
    j["entries"] = entries;
    return j;
}

inline FiniteDistribution distribution_from_json(const Json& j) {
    std::uint32_t p = j.at("p").get<std::uint32_t>();
    int d = j.at("d").get<int>();
    Level level{j.at("level").at("m").get<int>(), j.at("level").at("k").get<int>()};
    CosetSpace sp(p, d, level);
    FiniteDistribution xi(sp);
    for (const auto& e : j.at("entries")) {
        std::vector<long long> coords;
        for (const auto& c : e.at("coset"))
            coords.push_back(coset_digit_parse(c.get<std::string>(), p));
        xi.set_weight(sp.index(coords), cyclo_from_json(e.at("value")));
    }
    return xi;
}

// ---- valuation cells --------------------------------------------------------

inline Json valcond_to_json(const ValCond& c) {
    Json j;
    j["min_val"] = c.is_infinite ? Json("inf") : Json(c.min_val);
    return j;
}

inline ValCond valcond_from_json(const Json& j) {
    const auto& v = j.at("min_val");
    if (v.is_string() && v.get<std::string>() == "inf") return ValCond::infinite();
    return ValCond::at_least(v.get<long long>());
}

inline Json cellset_to_json(const CellSet& z) {
    Json cells = Json::array();
    for (const auto& cell : z.cells) {
        Json c;
        Json coords = Json::array();
        for (const auto& [idx, cond] : cell.coord) {
            Json cc = valcond_to_json(cond);
            cc["index"] = idx;
            coords.push_back(cc);
        }
        c["coords"] = coords;
        c["quad"] = cell.quad ? valcond_to_json(*cell.quad) : Json(nullptr);
        cells.push_back(c);
    }
    Json j;
    j["cells"] = cells;
    return j;
}

inline CellSet cellset_from_json(const Json& j) {
    CellSet z;
    for (const auto& c : j.at("cells")) {
        Cell cell;
        for (const auto& cc : c.at("coords"))
            cell.coord[cc.at("index").get<std::size_t>()] = valcond_from_json(cc);
        if (c.contains("quad") && !c.at("quad").is_null())
            cell.quad = valcond_from_json(c.at("quad"));
        z.cells.push_back(std::move(cell));
    }
    return z;
}

// ---- profiles ---------------------------------------------------------------

inline Json profile_to_json(const NilpotentProfile& prof) {
    Json j;
    j["partition"] = prof.partition;
    j["rank_seq"] = prof.rank_seq;
    j["orbit_dim"] = prof.orbit_dim;
    return j;
}

}  // namespace xact
