#pragma once

// The Kahler different of an ACM point set: the ideal of R_X generated by the
// (m+n)-minors of the Jacobian of generators of I_X with respect to
// x_1..x_m, y_1..y_n. All dimension counts use evaluation vectors in Q^s.

#include <bigraded/bipoly.hpp>
#include <bigraded/errors.hpp>
#include <bigraded/exactlin.hpp>
#include <bigraded/hilbert.hpp>
#include <bigraded/idealgen.hpp>
#include <bigraded/pointset.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bigraded {

struct Minor {
    std::vector<std::size_t> rows;  // indices into the generator list, ascending
    BiPoly poly;
    Bidegree degree;
};

namespace detail {
inline std::vector<Variable> jacobian_variables(int m, int n) {
    std::vector<Variable> vars;
    for (int k = 1; k <= m; ++k) vars.push_back({true, k});
    for (int k = 1; k <= n; ++k) vars.push_back({false, k});
    return vars;
}

// calls f(rows) for every k-subset of {0..r-1} in lexicographic order
template <class F>
void for_each_subset(std::size_t r, std::size_t k, F&& f) {
    if (k > r) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t t = 0; t < k; ++t) idx[t] = t;
    while (true) {
        f(idx);
        std::size_t t = k;
        while (t > 0 && idx[t - 1] == r - k + t - 1) --t;
        if (t == 0) return;
        ++idx[t - 1];
        for (std::size_t u = t; u < k; ++u) idx[u] = idx[u - 1] + 1;
    }
}

inline Bidegree minor_degree(const SpanSet& gens, const std::vector<std::size_t>& rows, int m, int n) {
    Bidegree d{-m, -n};
    for (auto r : rows) d = d + gens.generators[r].degree;
    return d;
}
}  // namespace detail

/// Jacobian of the generators with respect to x_1..x_m, y_1..y_n.
inline std::vector<std::vector<BiPoly>> jacobian(const SpanSet& gens) {
    const auto vars = detail::jacobian_variables(gens.m, gens.n);
    std::vector<std::vector<BiPoly>> J;
    for (const auto& g : gens.generators) {
        std::vector<BiPoly> row;
        for (const auto& v : vars) row.push_back(diff(g.poly, v));
        J.push_back(std::move(row));
    }
    return J;
}

/// All nonzero (m+n)-minors, by row tuples in lexicographic order.
inline std::vector<Minor> jacobian_minors(const SpanSet& gens) {
    const std::size_t k = static_cast<std::size_t>(gens.m + gens.n);
    if (gens.generators.size() < k)
        throw std::invalid_argument("need at least m+n generators, got " + std::to_string(gens.generators.size()));
    const auto J = jacobian(gens);
    std::vector<Minor> out;
    detail::for_each_subset(J.size(), k, [&](const std::vector<std::size_t>& rows) {
        std::vector<std::vector<BiPoly>> sub;
        for (auto r : rows) sub.push_back(J[r]);
        BiPoly det = poly_det(sub, gens.m, gens.n);
        if (det.is_zero()) return;
        const Bidegree d = *det.bidegree();
        out.push_back({rows, std::move(det), d});
    });
    return out;
}

/// The Kahler different of X (X0, Y0 assumed nonvanishing on X) from any
/// generating set of I_X. Minors are evaluated numerically point by point;
/// only the selected minimal generators are expanded symbolically.
class KahlerDifferent {
public:
    KahlerDifferent(const PointSet& X, SpanSet ideal_gens)
        : X_(X), gens_(std::move(ideal_gens)), img_(X), s_(X.size()) {
        const std::size_t k = static_cast<std::size_t>(X.m() + X.n());
        if (gens_.generators.size() < k)
            throw std::invalid_argument("need at least m+n generators of I_X");
        for (const auto& p : X.points())
            if (p.a[0] == 0 || p.b[0] == 0)
                throw PreconditionError("x0 and y0 must not vanish at any point; change coordinates first");
        evaluate_minors();
        select_generators();
    }

    const PointSet& points() const noexcept { return X_; }
    const SpanSet& source_generators() const noexcept { return gens_; }

    /// Minimal generators of the different, as symbolic minors.
    const std::vector<Minor>& minimal_generators() const noexcept { return selected_; }

    /// Number of nonzero minors in R_X.
    std::size_t nonzero_minor_count() const noexcept { return minor_values_.size(); }

    /// Basis of (theta_X)_d inside Q^s.
    const QMatrix& component(Bidegree d) {
        if (!d.nonnegative()) return empty_ = QMatrix(0, s_);
        const auto key = std::pair{d.i, d.j};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const QMatrix& left = component({d.i - 1, d.j});
        const QMatrix& down = component({d.i, d.j - 1});
        QMatrix basis;
        if (left.rows() == s_ || down.rows() == s_) {
            // x0 and y0 are units on Q^s
            basis = QMatrix::identity(s_);
        } else {
            QMatrix rows(0, s_);
            for (const auto& w : img_.x_values())
                for (std::size_t r = 0; r < left.rows(); ++r) rows.append_row(hadamard(left.row(r), w));
            for (const auto& w : img_.y_values())
                for (std::size_t r = 0; r < down.rows(); ++r) rows.append_row(hadamard(down.row(r), w));
            for (std::size_t t = 0; t < selected_values_.size(); ++t)
                if (selected_[t].degree == d) rows.append_row(selected_values_[t]);
            basis = row_basis(rows);
        }
        return memo_.emplace(key, std::move(basis)).first->second;
    }

    std::size_t hf(Bidegree d) { return d.nonnegative() ? component(d).rows() : 0; }

    /// True iff some element of (theta_X)_d is a separator of the point with index p.
    bool contains_separator(std::size_t p, Bidegree d) {
        if (p >= s_) throw std::out_of_range("point index out of range");
        QMatrix line(1, s_);
        line(0, p) = 1;
        return subspace_intersect(component(d), line).rows() == 1;
    }

    /// Evaluation vectors of all nonzero minors with their degrees (row-tuple order).
    const std::vector<std::pair<Bidegree, std::vector<Rational>>>& minor_values() const noexcept {
        return minor_values_;
    }

private:
    void evaluate_minors() {
        const auto vars = detail::jacobian_variables(X_.m(), X_.n());
        const auto J = jacobian(gens_);
        const std::size_t r = J.size(), k = vars.size();
        // numeric Jacobians, one per point
        std::vector<QMatrix> at_point;
        for (const auto& p : X_.points()) {
            QMatrix M(r, k);
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < k; ++b) M(a, b) = J[a][b].eval(p.a, p.b);
            at_point.push_back(std::move(M));
        }
        detail::for_each_subset(r, k, [&](const std::vector<std::size_t>& rows) {
            std::vector<Rational> v(s_);
            bool nonzero = false;
            for (std::size_t p = 0; p < s_; ++p) {
                QMatrix sub(k, k);
                for (std::size_t a = 0; a < k; ++a)
                    for (std::size_t b = 0; b < k; ++b) sub(a, b) = at_point[p](rows[a], b);
                v[p] = det(sub);
                if (v[p] != 0) nonzero = true;
            }
            if (!nonzero) return;
            const Bidegree d = detail::minor_degree(gens_, rows, X_.m(), X_.n());
            if (!d.nonnegative()) throw InternalError("nonzero minor of negative bidegree");
            minor_values_.push_back({d, std::move(v)});
            minor_rows_.push_back(rows);
        });
        if (minor_values_.empty()) throw InternalError("all Jacobian minors vanish on X");
    }

    void select_generators() {
        std::vector<std::size_t> order(minor_values_.size());
        for (std::size_t t = 0; t < order.size(); ++t) order[t] = t;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return minor_values_[a].first < minor_values_[b].first; });
        const auto J = jacobian(gens_);
        std::size_t t = 0;
        while (t < order.size()) {
            const Bidegree d = minor_values_[order[t]].first;
            IncrementalSpan span(s_);
            // part generated by previously selected generators
            for (std::size_t g = 0; g < selected_.size(); ++g) {
                const Bidegree rest = d - selected_[g].degree;
                if (!rest.nonnegative()) continue;
                const QMatrix& U = img_.component(rest);
                for (std::size_t r = 0; r < U.rows() && !span.full(); ++r)
                    span.insert(hadamard(U.row(r), selected_values_[g]));
            }
            for (; t < order.size() && minor_values_[order[t]].first == d; ++t) {
                const auto& [deg, v] = minor_values_[order[t]];
                if (!span.insert(v)) continue;
                const auto& rows = minor_rows_[order[t]];
                std::vector<std::vector<BiPoly>> sub;
                for (auto r : rows) sub.push_back(J[r]);
                BiPoly poly = poly_det(sub, X_.m(), X_.n());
                if (eval_vector(X_, poly) != v) throw InternalError("symbolic and numeric minor disagree");
                selected_.push_back({rows, std::move(poly), deg});
                selected_values_.push_back(v);
            }
        }
    }

    PointSet X_;
    SpanSet gens_;
    CoordinateRingImage img_;
    std::size_t s_;
    std::vector<std::pair<Bidegree, std::vector<Rational>>> minor_values_;
    std::vector<std::vector<std::size_t>> minor_rows_;
    std::vector<Minor> selected_;
    std::vector<std::vector<Rational>> selected_values_;
    std::map<std::pair<int, int>, QMatrix> memo_;
    QMatrix empty_;
};

struct KDiff {
    PointSet points;                  // coordinates in which x0, y0 are regular
    SpanSet source_gens;              // generators of I_X used
    SpanSet minors;                   // ideal of R_X, minimal generating subset of the minors
    HFTable hf_table;                 // border and border_pair also stored in hf_table
    std::vector<Bidegree> min_gen_degrees;
    int i_min = 0, i_max = 0, j_min = 0, j_max = 0;
    Bidegree border_pair;
    Border border;
};

/// Table box: covers stabilization and the lines i_max + s, j_max + s used for the border pair.
inline Bidegree kdiff_box(const PointSet& X, int i_max, int j_max) {
    const int s = static_cast<int>(X.size());
    const int a = (static_cast<int>(X.s1()) - 1) * (X.m() + 2);
    const int b = (static_cast<int>(X.s2()) - 1) * (X.n() + 2);
    return {std::max(a, i_max + s), std::max(b, j_max + s)};
}

inline KDiff build_kdiff(KahlerDifferent& kd, std::optional<Bidegree> min_box = std::nullopt) {
    KDiff out;
    out.points = kd.points();
    out.source_gens = kd.source_generators();
    out.minors.m = out.points.m();
    out.minors.n = out.points.n();
    out.minors.kind = SpanKind::ideal_in_RX;
    out.minors.points = std::make_shared<const PointSet>(out.points);
    for (const auto& g : kd.minimal_generators()) {
        out.minors.generators.push_back({g.poly, g.degree});
        out.min_gen_degrees.push_back(g.degree);
    }
    const auto& degs = out.min_gen_degrees;
    auto by_i = [](Bidegree a, Bidegree b) { return a.i < b.i; };
    auto by_j = [](Bidegree a, Bidegree b) { return a.j < b.j; };
    out.i_min = std::min_element(degs.begin(), degs.end(), by_i)->i;
    out.i_max = std::max_element(degs.begin(), degs.end(), by_i)->i;
    out.j_min = std::min_element(degs.begin(), degs.end(), by_j)->j;
    out.j_max = std::max_element(degs.begin(), degs.end(), by_j)->j;
    Bidegree box = kdiff_box(out.points, out.i_max, out.j_max);
    if (min_box) box = {std::max(box.i, min_box->i), std::max(box.j, min_box->j)};
    HFTable& t = out.hf_table;
    t.box = box;
    t.values = tabulate(box, [&](Bidegree d) { return kd.hf(d); });
    const int s = static_cast<int>(out.points.size());
    int nu = 0, rho = 0;
    for (int k = out.j_min; k <= out.j_max; ++k) {
        const auto target = t.at(out.i_max + s, k);
        int i = 0;
        while (t.at(i, k) != target) ++i;
        nu = std::max(nu, i);
    }
    for (int l = out.i_min; l <= out.i_max; ++l) {
        const auto target = t.at(l, out.j_max + s);
        int j = 0;
        while (t.at(l, j) != target) ++j;
        rho = std::max(rho, j);
    }
    out.border_pair = {nu, rho};
    out.border = border_along(out.border_pair, [&](Bidegree d) { return t.at(d); });
    t.reg_pair = out.border_pair;
    t.border = out.border;
    return out;
}

/// Kahler different of an ACM set; pass the verdict of is_acm.
inline KDiff hf_kdiff(const PointSet& X, bool x_is_acm, std::optional<Bidegree> min_box = std::nullopt) {
    if (!x_is_acm)
        throw PreconditionError("the Kahler different is only defined for ACM point sets (depth of R_X is not 2)");
    const PointSet Xr = with_regular_coordinates(X);
    KahlerDifferent kd(Xr, vanishing_ideal_min_gens(Xr));
    return build_kdiff(kd, min_box);
}

struct ProjKDiff {
    std::vector<std::size_t> values;  // HF of the different of the points, degrees 0..
    bool principal = false;
    std::vector<int> generator_degrees;
};

/// Kahler different of points in one projective space over K[x0].
inline ProjKDiff proj_kdiff(const ProjPoints& q, int through = 0) {
    const PointSet Xr = as_first_factor(with_regular_coordinates(q));
    KahlerDifferent kd(Xr, vanishing_ideal_min_gens(Xr));
    ProjKDiff out;
    int i_max = 0;
    for (const auto& g : kd.minimal_generators()) {
        out.generator_degrees.push_back(g.degree.i);
        i_max = std::max(i_max, g.degree.i);
    }
    out.principal = kd.minimal_generators().size() == 1;
    const int s = static_cast<int>(q.size());
    const int last = std::max({(s - 1) * (q.dim + 2), i_max + s, through});
    for (int d = 0; d <= last; ++d) out.values.push_back(kd.hf({d, 0}));
    return out;
}

/// True iff the image of J_d in Q^s contains a separator of p.
inline bool contains_separator_in(const SpanSet& J, const PointSet& X, const Point& p, Bidegree d) {
    if (J.kind != SpanKind::ideal_in_RX) throw std::invalid_argument("contains_separator_in needs an ideal of R_X");
    const std::ptrdiff_t k = X.index_of(p);
    if (k < 0) throw std::invalid_argument("point " + to_string(p) + " is not in X");
    SpanSet JX = J;
    JX.points = std::make_shared<const PointSet>(X);
    QMatrix line(1, X.size());
    line(0, static_cast<std::size_t>(k)) = 1;
    return subspace_intersect(component_basis(JX, d), line).rows() == 1;
}

}  // namespace bigraded
