#pragma once

// Structural predicates: ACM, complete intersection type, and the
// characterizations of the Cayley-Bacharach property for (*)-sets.

#include <bigraded/bipoly.hpp>
#include <bigraded/errors.hpp>
#include <bigraded/exactlin.hpp>
#include <bigraded/hilbert.hpp>
#include <bigraded/idealgen.hpp>
#include <bigraded/kdiff.hpp>
#include <bigraded/pointset.hpp>
#include <bigraded/separators.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace bigraded {

/// Upper corner of the box on which the y0-torsion of R_X / x0 R_X is searched.
inline Bidegree acm_box(const PointSet& X) {
    const int s1 = static_cast<int>(X.s1()), s2 = static_cast<int>(X.s2());
    return {s1, s2 + s1 * s2};
}

/// Multiplication by y0 on A = R_X / x0 R_X, tested in Q^s: A_{i,j} -> A_{i,j+1} is
/// injective iff dim(D_y U_{i,j} ∩ D_x U_{i-1,j+1}) = dim U_{i-1,j}, where U_d is the
/// image of S_d in Q^s and D_x, D_y are the diagonal matrices of x0, y0 values.
/// Returns the first bidegree where injectivity fails.
inline std::optional<Bidegree> first_y0_torsion_degree(const PointSet& X) {
    const PointSet Xr = with_regular_coordinates(X);
    CoordinateRingImage img(Xr);
    const auto& x0 = img.x_values()[0];
    const auto& y0 = img.y_values()[0];
    auto scaled = [](const QMatrix& U, const std::vector<Rational>& w) {
        QMatrix out(0, U.cols());
        for (std::size_t r = 0; r < U.rows(); ++r) out.append_row(hadamard(U.row(r), w));
        return out;
    };
    const Bidegree box = acm_box(X);
    for (int i = 1; i <= box.i; ++i)
        for (int j = 0; j <= box.j; ++j) {
            const QMatrix a = scaled(img.component({i, j}), y0);
            const QMatrix b = scaled(img.component({i - 1, j + 1}), x0);
            if (subspace_intersect(a, b).rows() != img.hf({i - 1, j})) return Bidegree{i, j};
        }
    return std::nullopt;
}

/// ACM test with its independent sanity checks: (*)-sets and products are ACM, and an
/// ACM set has a single minimal separator degree at every point.
inline bool is_acm(const PointSet& X, const std::vector<DegreeSet>* degrees = nullptr) {
    const bool acm = !first_y0_torsion_degree(X).has_value();
    if (!acm && (has_star_property(X) || is_product(X)))
        throw InternalError("ACM test rejected a set with the (*)-property");
    std::vector<DegreeSet> own;
    if (!degrees) {
        own = all_point_degrees(X);
        degrees = &own;
    }
    if (acm)
        for (const auto& d : *degrees)
            if (d.mins.size() > 1)
                throw InternalError("ACM test accepted a set with a point of several minimal separator degrees");
    return acm;
}

/// The same y0-injectivity test done literally in monomial coordinates: A_d is
/// S_d modulo the component of <I_X generators, x0>. Only practical for small sets.
inline bool is_acm_reference(const PointSet& X) {
    const PointSet Xr = with_regular_coordinates(X);
    SpanSet J = vanishing_ideal_min_gens(Xr);
    J.add(BiPoly::x(Xr.m(), Xr.n(), 0));
    IdealComponents comp(J);
    auto basis = [&](Bidegree d) {
        std::vector<BiPoly> rows;
        for (const auto& [lm, f] : comp.echelon(d).rows()) rows.push_back(f);
        return coefficient_matrix(rows, Xr.m(), Xr.n(), d);
    };
    const Bidegree box = acm_box(X);
    const Monomial y0 = Monomial::var_y(Xr.m(), Xr.n(), 0);
    for (int i = 0; i <= box.i; ++i)
        for (int j = 0; j <= box.j; ++j) {
            const Bidegree d{i, j}, up{i, j + 1};
            std::vector<BiPoly> shifted;
            for (const auto& f : monomial_basis(Xr.m(), Xr.n(), d)) shifted.push_back(f.times_monomial(y0));
            const QMatrix image = coefficient_matrix(shifted, Xr.m(), Xr.n(), up);
            const QMatrix W = basis(d);
            const QMatrix Wup = basis(up);
            if (subspace_intersect(image, Wup).rows() != rank(W)) return false;
        }
    return true;
}

// ----------------------------------------------------------- CI detection

struct CiType {
    std::vector<int> d;   // degrees of the generators of I_{X1}, ascending
    std::vector<int> dp;  // degrees of the generators of I_{X2}, ascending
    friend bool operator==(const CiType&, const CiType&) = default;
};

inline std::string to_string(const CiType& t) {
    std::string s = "CI(";
    for (std::size_t k = 0; k < t.d.size(); ++k) s += (k ? "," : "") + std::to_string(t.d[k]);
    s += ";";
    for (std::size_t k = 0; k < t.dp.size(); ++k) s += (k ? "," : "") + std::to_string(t.dp[k]);
    return s + ")";
}

namespace detail {
inline std::vector<int> ci_degrees(const ProjPoints& q, int expected_count, int regularity) {
    auto degs = proj_vanishing_ideal(q).degrees;
    std::sort(degs.begin(), degs.end());
    if (static_cast<int>(degs.size()) != expected_count)
        throw InternalError("a projection of a complete intersection needs " + std::to_string(expected_count) +
                            " generators, found " + std::to_string(degs.size()));
    const int sum = std::accumulate(degs.begin(), degs.end(), 0);
    if (regularity != sum - expected_count)
        throw InternalError("regularity index " + std::to_string(regularity) +
                            " does not match the generator degrees of a complete intersection");
    return degs;
}

inline std::size_t theta_at(const PointSet& X, Bidegree d) {
    const PointSet Xr = with_regular_coordinates(X);
    KahlerDifferent kd(Xr, vanishing_ideal_min_gens(Xr));
    return kd.hf(d);
}
}  // namespace detail

/// CI type when X is a product with the Cayley-Bacharach property and
/// HF_theta(r_{X1}, r_{X2}) != 0; nullopt otherwise.
inline std::optional<CiType> detect_ci(const PointSet& X, const std::vector<DegreeSet>* degrees = nullptr) {
    if (!is_product(X)) return std::nullopt;
    const bool cb = degrees ? has_cayley_bacharach(*degrees) : has_cayley_bacharach(X);
    if (!cb) return std::nullopt;
    const int r1 = hf_projection(X.x1()).regularity, r2 = hf_projection(X.x2()).regularity;
    if (detail::theta_at(X, {r1, r2}) == 0) return std::nullopt;
    return CiType{detail::ci_degrees(X.x1(), X.m(), r1), detail::ci_degrees(X.x2(), X.n(), r2)};
}

// ------------------------------------------------------------- (*)-sets

struct StarCbEvidence {
    bool holds = false;
    bool condition_a = false;  // all V_j are CB schemes with equal regularity index
    bool condition_b = false;  // all W_i are CB schemes with equal regularity index
    std::vector<int> r_v, r_w;
    std::vector<bool> cb_v, cb_w;
};

inline StarCbEvidence star_cb_characterization(const PointSet& X) {
    if (!has_star_property(X)) throw PreconditionError("the set does not have the (*)-property");
    StarCbEvidence e;
    for (std::size_t j = 0; j < X.s2(); ++j) {
        const auto V = X.v_fiber(j);
        e.r_v.push_back(hf_projection(V).regularity);
        e.cb_v.push_back(is_cayley_bacharach_scheme(V));
    }
    for (std::size_t i = 0; i < X.s1(); ++i) {
        const auto W = X.w_fiber(i);
        e.r_w.push_back(hf_projection(W).regularity);
        e.cb_w.push_back(is_cayley_bacharach_scheme(W));
    }
    auto all_true = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
    auto all_equal = [](const std::vector<int>& v) { return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end(); };
    e.condition_a = all_true(e.cb_v) && all_equal(e.r_v);
    e.condition_b = all_true(e.cb_w) && all_equal(e.r_w);
    e.holds = e.condition_a && e.condition_b;
    return e;
}

/// CI test for (*)-sets in P^1 x P^n: CB and HF_theta(d1 - 1, r_{X2}) != 0 with d1 = s1.
inline std::optional<CiType> p1pn_ci_check(const PointSet& X, const std::vector<DegreeSet>* degrees = nullptr) {
    if (X.m() != 1) throw PreconditionError("the P^1 x P^n criterion needs m = 1");
    if (!has_star_property(X)) throw PreconditionError("the set does not have the (*)-property");
    const bool cb = degrees ? has_cayley_bacharach(*degrees) : has_cayley_bacharach(X);
    std::optional<CiType> out;
    if (cb) {
        if (!is_product(X)) throw InternalError("a CB (*)-set in P^1 x P^n is not a product");
        const int d1 = static_cast<int>(X.s1());
        const int r2 = hf_projection(X.x2()).regularity;
        if (detail::theta_at(X, {d1 - 1, r2}) != 0) out = CiType{{d1}, detail::ci_degrees(X.x2(), X.n(), r2)};
    }
    if (out != detect_ci(X, degrees)) throw InternalError("P^1 x P^n criterion disagrees with detect_ci");
    return out;
}

/// For a product: a point index and a bidegree strictly below (m r1, n r2) where
/// theta_X contains a separator of that point, if one exists.
struct SeparatorWitness {
    std::size_t point;
    Bidegree degree;
};

inline std::optional<SeparatorWitness> theta_separator_witness(const PointSet& X) {
    if (!is_product(X)) throw PreconditionError("the separator criterion needs a product set");
    const PointSet Xr = with_regular_coordinates(X);
    KahlerDifferent kd(Xr, vanishing_ideal_min_gens(Xr));
    const int r1 = hf_projection(X.x1()).regularity, r2 = hf_projection(X.x2()).regularity;
    const Bidegree top{X.m() * r1, X.n() * r2};
    // separators persist under multiplication by x0 and y0, so the two maximal
    // bidegrees below `top` decide the question
    std::vector<Bidegree> candidates;
    for (const Bidegree d : {Bidegree{top.i - 1, top.j}, Bidegree{top.i, top.j - 1}})
        if (d.nonnegative()) candidates.push_back(d);
    for (std::size_t p = 0; p < Xr.size(); ++p)
        for (const auto& d : candidates)
            if (kd.contains_separator(p, d)) return SeparatorWitness{p, d};
    return std::nullopt;
}

// --------------------------------------------------------- classification

struct Classification {
    bool is_acm = false;
    std::string acm_method = "y0-injectivity on R_X/x0R_X via evaluation images";
    bool is_product = false;
    bool has_star = false;
    bool cb = false;
    std::optional<CiType> ci;
    nlohmann::json evidence = nlohmann::json::object();
};

inline nlohmann::json to_json(const Bidegree& d) { return nlohmann::json::array({d.i, d.j}); }

inline Classification classify(const PointSet& X) {
    Classification c;
    c.is_product = is_product(X);
    c.has_star = has_star_property(X);
    const auto degrees = all_point_degrees(X);
    c.cb = has_cayley_bacharach(degrees);
    c.is_acm = is_acm(X, &degrees);

    auto& ev = c.evidence;
    const auto h1 = hf_projection(X.x1()), h2 = hf_projection(X.x2());
    ev["s"] = X.size();
    ev["s1"] = X.s1();
    ev["s2"] = X.s2();
    ev["reg_pair"] = nlohmann::json::array({h1.regularity, h2.regularity});
    nlohmann::json degs = nlohmann::json::array();
    for (const auto& d : degrees) {
        nlohmann::json mins = nlohmann::json::array();
        for (const auto& e : d.mins) mins.push_back(to_json(e));
        degs.push_back(mins);
    }
    ev["point_degrees"] = degs;
    ev["x1_cb"] = is_cayley_bacharach_scheme(X.x1());
    ev["x2_cb"] = is_cayley_bacharach_scheme(X.x2());

    if (c.has_star) {
        const auto star = star_cb_characterization(X);
        if (star.holds != c.cb) throw InternalError("fiber characterization disagrees with the CB test");
        ev["star_cb"] = {{"holds", star.holds},       {"a", star.condition_a}, {"b", star.condition_b},
                         {"r_V", star.r_v},           {"r_W", star.r_w},       {"cb_V", star.cb_v},
                         {"cb_W", star.cb_w}};
    }
    if (c.is_product && c.cb) {
        ev["theta_at_reg_pair"] = detail::theta_at(X, {h1.regularity, h2.regularity});
    }
    c.ci = detect_ci(X, &degrees);
    if (c.ci && !(c.is_product && c.cb && c.is_acm)) throw InternalError("CI verdict without product, CB and ACM");
    if (X.m() == 1 && c.has_star) {
        const auto p1 = p1pn_ci_check(X, &degrees);
        ev["p1pn_ci"] = p1.has_value();
    }
    return c;
}

inline nlohmann::json to_json(const Classification& c) {
    nlohmann::json j;
    j["acm"] = c.is_acm;
    j["acm_method"] = c.acm_method;
    j["product"] = c.is_product;
    j["star"] = c.has_star;
    j["cb"] = c.cb;
    j["ci"] = c.ci ? nlohmann::json::array({c.ci->d, c.ci->dp}) : nlohmann::json(nullptr);
    j["evidence"] = c.evidence;
    return j;
}

}  // namespace bigraded
