#pragma once

// Separators, degrees of points and the Cayley-Bacharach property.

#include <bigraded/bipoly.hpp>
#include <bigraded/errors.hpp>
#include <bigraded/exactlin.hpp>
#include <bigraded/hilbert.hpp>
#include <bigraded/pointset.hpp>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bigraded {

/// deg_X(p): the minimal bidegrees of separators of p.
struct DegreeSet {
    std::vector<Bidegree> mins;  // antichain, sorted by (i+j, i)
    Point point;

    /// True iff some separator of p has bidegree d.
    bool admits(Bidegree d) const {
        return std::any_of(mins.begin(), mins.end(), [&](const Bidegree& e) { return preceq(e, d); });
    }
};

inline std::vector<Bidegree> minimal_elements(std::vector<Bidegree> ds) {
    std::vector<Bidegree> out;
    for (const auto& d : ds) {
        bool minimal = true;
        for (const auto& e : ds)
            if (precneq(e, d)) minimal = false;
        if (minimal && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {
inline std::size_t require_member(const PointSet& X, const Point& p) {
    const std::ptrdiff_t k = X.index_of(p);
    if (k < 0) throw std::invalid_argument("point " + to_string(p) + " is not in X");
    return static_cast<std::size_t>(k);
}

inline std::vector<std::vector<std::size_t>> difference_grid(const PointSet& X, std::size_t k, Bidegree box) {
    CoordinateRingImage all(X);
    std::optional<CoordinateRingImage> rest;
    if (X.size() > 1) rest.emplace(X.without(k));
    return tabulate(box, [&](Bidegree d) { return all.hf(d) - (rest ? rest->hf(d) : 0); });
}
}  // namespace detail

/// Indicator HF_X(d) - HF_{X minus p}(d) on the box (s1-1, s2-1); both Hilbert
/// functions are constant along rows and columns beyond it.
inline std::vector<std::vector<std::size_t>> separator_indicator(const PointSet& X, const Point& p) {
    const std::size_t k = detail::require_member(X, p);
    const Bidegree box{static_cast<int>(X.s1()) - 1, static_cast<int>(X.s2()) - 1};
    return detail::difference_grid(X, k, box);
}

inline DegreeSet point_degree(const PointSet& X, const Point& p) {
    const auto grid = separator_indicator(X, p);
    std::vector<Bidegree> hits;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid[i].size(); ++j) {
            if (grid[i][j] > 1) throw InternalError("removing one point dropped the Hilbert function by more than one");
            if (grid[i][j] == 1) hits.push_back({static_cast<int>(i), static_cast<int>(j)});
        }
    return {minimal_elements(std::move(hits)), X[detail::require_member(X, p)]};
}

/// Polynomial of bidegree d with value 1 at p and 0 at the other points: the
/// solution of E c = e_p with all free coefficients zero. Nullopt if none exists.
inline std::optional<BiPoly> separator_of_degree(const PointSet& X, const Point& p, Bidegree d) {
    const std::size_t k = detail::require_member(X, p);
    const auto mons = monomials_of_degree(X.m(), X.n(), d);
    const QMatrix E = evaluation_matrix(X, d);
    QMatrix aug(E.rows(), E.cols() + 1);
    for (std::size_t r = 0; r < E.rows(); ++r) {
        for (std::size_t c = 0; c < E.cols(); ++c) aug(r, c) = E(r, c);
        aug(r, E.cols()) = r == k ? 1 : 0;
    }
    const auto R = rref(aug);
    if (!R.pivots.empty() && R.pivots.back() == E.cols()) return std::nullopt;
    BiPoly f(X.m(), X.n());
    for (std::size_t r = 0; r < R.rank; ++r) f.add_term(mons[R.pivots[r]], R.reduced(r, E.cols()));
    return f;
}

/// One separator per minimal degree of p.
inline std::vector<BiPoly> minimal_separators(const PointSet& X, const Point& p) {
    std::vector<BiPoly> out;
    for (const auto& d : point_degree(X, p).mins) {
        auto f = separator_of_degree(X, p, d);
        if (!f) throw InternalError("no separator in a degree of the point");
        out.push_back(std::move(*f));
    }
    return out;
}

inline std::vector<DegreeSet> all_point_degrees(const PointSet& X) {
    std::vector<DegreeSet> out;
    for (const auto& p : X.points()) out.push_back(point_degree(X, p));
    return out;
}

/// All points have the same degree set.
inline bool has_cayley_bacharach(const std::vector<DegreeSet>& degrees) {
    for (const auto& d : degrees)
        if (d.mins != degrees.front().mins) return false;
    return true;
}

inline bool has_cayley_bacharach(const PointSet& X) { return has_cayley_bacharach(all_point_degrees(X)); }

/// Degree of q in a set of points of one projective space: least d with
/// HF_{Q minus q}(d) = HF_Q(d) - 1.
inline int proj_point_degree(const ProjPoints& Q, const Coords& q) {
    const std::ptrdiff_t k = Q.index_of(normalize_projective(q));
    if (k < 0) throw std::invalid_argument("point " + to_string(q) + " is not in the set");
    if (Q.size() == 1) return 0;
    ProjPoints rest{Q.dim, {}};
    for (std::size_t t = 0; t < Q.size(); ++t)
        if (static_cast<std::ptrdiff_t>(t) != k) rest.points.push_back(Q.points[t]);
    CoordinateRingImage all(as_first_factor(Q)), less(as_first_factor(rest));
    for (int d = 0;; ++d)
        if (less.hf({d, 0}) + 1 == all.hf({d, 0})) return d;
}

/// Cayley-Bacharach scheme in one projective space: every point has degree r_Q.
inline bool is_cayley_bacharach_scheme(const ProjPoints& Q) {
    const int r = hf_projection(Q).regularity;
    return std::all_of(Q.points.begin(), Q.points.end(), [&](const Coords& q) { return proj_point_degree(Q, q) == r; });
}

}  // namespace bigraded
