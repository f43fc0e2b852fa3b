#pragma once

// Finite point sets in P^m x P^n: parsing, canonical representatives,
// projections, fibers, the (*)-property and regular linear forms.

#include <bigraded/bipoly.hpp>
#include <bigraded/errors.hpp>
#include <bigraded/exactlin.hpp>
#include <bigraded/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bigraded {

using Coords = std::vector<Rational>;

/// Scales v so that its first nonzero entry is 1. Throws on the zero vector.
inline Coords normalize_projective(Coords v) {
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
    if (it == v.end()) throw std::invalid_argument("zero coordinate vector is not a projective point");
    const Rational inv = 1 / *it;
    for (auto& q : v) q *= inv;
    return v;
}

inline std::string to_string(const Coords& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ':';
        s += v[k].get_str();
    }
    return s + ")";
}

struct Point {
    Coords a;
    Coords b;
    friend bool operator==(const Point&, const Point&) = default;
    friend bool operator<(const Point& p, const Point& q) {
        if (p.a != q.a) return p.a < q.a;
        return p.b < q.b;
    }
};

inline std::string to_string(const Point& p) { return to_string(p.a) + "x" + to_string(p.b); }

/// Points of one projective space P^dim, canonical and pairwise distinct.
struct ProjPoints {
    int dim = 0;
    std::vector<Coords> points;

    std::size_t size() const { return points.size(); }
    std::ptrdiff_t index_of(const Coords& q) const {
        auto it = std::find(points.begin(), points.end(), q);
        return it == points.end() ? -1 : it - points.begin();
    }
};

class PointSet {
public:
    PointSet() = default;

    /// Normalizes every point and builds projections and fibers. Throws on
    /// wrong lengths, zero vectors, duplicates or an empty list.
    PointSet(int m, int n, std::vector<Point> pts) : m_(m), n_(n) {
        if (m < 0 || n < 0) throw std::invalid_argument("negative ambient dimension");
        if (pts.empty()) throw std::invalid_argument("a point set needs at least one point");
        std::set<Point> seen;
        for (auto& p : pts) {
            if (p.a.size() != static_cast<std::size_t>(m + 1) || p.b.size() != static_cast<std::size_t>(n + 1))
                throw DimensionMismatch("point " + to_string(p) + " does not lie in P^" + std::to_string(m) +
                                        " x P^" + std::to_string(n));
            p.a = normalize_projective(std::move(p.a));
            p.b = normalize_projective(std::move(p.b));
            if (!seen.insert(p).second) throw std::invalid_argument("duplicate point " + to_string(p));
        }
        points_ = std::move(pts);
        members_ = std::move(seen);
        build_fibers();
    }

    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<Point>& points() const noexcept { return points_; }
    const Point& operator[](std::size_t k) const { return points_[k]; }

    bool contains(const Point& p) const { return members_.count(p) > 0; }
    std::ptrdiff_t index_of(const Point& p) const {
        auto it = std::find(points_.begin(), points_.end(), p);
        return it == points_.end() ? -1 : it - points_.begin();
    }

    /// Projection to P^m, ordered by decreasing |W_i| then coordinates.
    const ProjPoints& x1() const noexcept { return x1_; }
    /// Projection to P^n, ordered by decreasing |V_j| then coordinates.
    const ProjPoints& x2() const noexcept { return x2_; }
    std::size_t s1() const noexcept { return x1_.size(); }
    std::size_t s2() const noexcept { return x2_.size(); }

    /// V_j as indices into x1(), for j indexing x2(); each list ascending.
    const std::vector<std::vector<std::size_t>>& v_fibers() const noexcept { return v_; }
    /// W_i as indices into x2(), for i indexing x1().
    const std::vector<std::vector<std::size_t>>& w_fibers() const noexcept { return w_; }

    ProjPoints v_fiber(std::size_t j) const { return subset(x1_, v_.at(j)); }
    ProjPoints w_fiber(std::size_t i) const { return subset(x2_, w_.at(i)); }

    /// X minus the point at index k (requires size() > 1).
    PointSet without(std::size_t k) const {
        std::vector<Point> rest;
        for (std::size_t t = 0; t < points_.size(); ++t)
            if (t != k) rest.push_back(points_[t]);
        return PointSet(m_, n_, std::move(rest));
    }

private:
    static ProjPoints subset(const ProjPoints& all, const std::vector<std::size_t>& idx) {
        ProjPoints out{all.dim, {}};
        for (auto k : idx) out.points.push_back(all.points[k]);
        return out;
    }

    void build_fibers() {
        std::map<Coords, std::set<Coords>> w_raw, v_raw;  // q -> second coords, q' -> first coords
        for (const auto& p : points_) {
            w_raw[p.a].insert(p.b);
            v_raw[p.b].insert(p.a);
        }
        auto order = [](const std::map<Coords, std::set<Coords>>& raw) {
            std::vector<Coords> keys;
            for (const auto& [k, fib] : raw) keys.push_back(k);
            std::stable_sort(keys.begin(), keys.end(), [&](const Coords& p, const Coords& q) {
                const auto sp = raw.at(p).size(), sq = raw.at(q).size();
                if (sp != sq) return sp > sq;
                return p < q;
            });
            return keys;
        };
        x1_ = {m_, order(w_raw)};
        x2_ = {n_, order(v_raw)};
        std::map<Coords, std::size_t> pos1, pos2;
        for (std::size_t k = 0; k < x1_.size(); ++k) pos1[x1_.points[k]] = k;
        for (std::size_t k = 0; k < x2_.size(); ++k) pos2[x2_.points[k]] = k;
        w_.assign(x1_.size(), {});
        v_.assign(x2_.size(), {});
        for (const auto& p : points_) {
            w_[pos1[p.a]].push_back(pos2[p.b]);
            v_[pos2[p.b]].push_back(pos1[p.a]);
        }
        for (auto& f : w_) std::sort(f.begin(), f.end());
        for (auto& f : v_) std::sort(f.begin(), f.end());
    }

    int m_ = 0;
    int n_ = 0;
    std::vector<Point> points_;
    std::set<Point> members_;
    ProjPoints x1_, x2_;
    std::vector<std::vector<std::size_t>> v_, w_;
};

/// Builds canonical ProjPoints, rejecting duplicates.
inline ProjPoints make_proj_points(int dim, std::vector<Coords> pts) {
    if (pts.empty()) throw std::invalid_argument("a point set needs at least one point");
    std::set<Coords> seen;
    for (auto& q : pts) {
        if (q.size() != static_cast<std::size_t>(dim + 1))
            throw DimensionMismatch(to_string(q) + " does not lie in P^" + std::to_string(dim));
        q = normalize_projective(std::move(q));
        if (!seen.insert(q).second) throw std::invalid_argument("duplicate point " + to_string(q));
    }
    return {dim, std::move(pts)};
}

/// Views points of P^k as the point set P^k x {(1)} in P^k x P^0.
inline PointSet as_first_factor(const ProjPoints& q) {
    std::vector<Point> pts;
    for (const auto& c : q.points) pts.push_back({c, {Rational(1)}});
    return PointSet(q.dim, 0, std::move(pts));
}

inline PointSet product(const ProjPoints& a, const ProjPoints& b) {
    std::vector<Point> pts;
    for (const auto& p : a.points)
        for (const auto& q : b.points) pts.push_back({p, q});
    return PointSet(a.dim, b.dim, std::move(pts));
}

// ------------------------------------------------------------------ parsing

namespace detail {
struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
        if (k == line.size()) break;
        std::size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
        out.push_back({line.substr(start, k - start), start + 1});
    }
    return out;
}

inline int parse_dimension(const std::vector<Token>& toks, std::string_view key, std::size_t line_no) {
    if (toks.empty() || toks[0].text != key)
        throw ParseError(line_no, toks.empty() ? 0 : toks[0].column,
                         "expected '" + std::string(key) + " <int>'");
    if (toks.size() != 2)
        throw ParseError(line_no, toks.size() > 2 ? toks[2].column : 0,
                         "expected exactly one integer after '" + std::string(key) + "'");
    const auto& t = toks[1];
    int v = 0;
    if (t.text.empty() || t.text.size() > 6) throw ParseError(line_no, t.column, "invalid dimension");
    for (char c : t.text) {
        if (c < '0' || c > '9') throw ParseError(line_no, t.column, "dimension must be a nonnegative integer");
        v = v * 10 + (c - '0');
    }
    if (v < 1) throw ParseError(line_no, t.column, "dimension must be at least 1");
    return v;
}
}  // namespace detail

/// Parses the point-set file format:
///   # comment
///   m <int>
///   n <int>
///   point a_0 ... a_m | b_0 ... b_n
inline PointSet parse_pointset(std::string_view text) {
    int m = -1, n = -1;
    std::vector<Point> pts;
    std::set<Point> seen;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto toks = detail::tokenize(line);
        if (toks.empty()) {
            if (end == text.size()) break;
            continue;
        }
        if (m < 0) {
            m = detail::parse_dimension(toks, "m", line_no);
        } else if (n < 0) {
            n = detail::parse_dimension(toks, "n", line_no);
        } else {
            if (toks[0].text != "point") throw ParseError(line_no, toks[0].column, "expected 'point'");
            Point p;
            bool second = false;
            std::size_t bar_col = 0;
            for (std::size_t k = 1; k < toks.size(); ++k) {
                if (toks[k].text == "|") {
                    if (second) throw ParseError(line_no, toks[k].column, "second '|' in point");
                    second = true;
                    bar_col = toks[k].column;
                    continue;
                }
                Rational q;
                try {
                    q = parse_rational(toks[k].text);
                } catch (const std::invalid_argument& e) {
                    throw ParseError(line_no, toks[k].column, e.what());
                }
                (second ? p.b : p.a).push_back(std::move(q));
            }
            if (!second) throw ParseError(line_no, 0, "missing '|' between the two factors");
            if (p.a.size() != static_cast<std::size_t>(m + 1))
                throw ParseError(line_no, bar_col,
                                 "first factor has " + std::to_string(p.a.size()) + " coordinates, expected " +
                                     std::to_string(m + 1));
            if (p.b.size() != static_cast<std::size_t>(n + 1))
                throw ParseError(line_no, bar_col,
                                 "second factor has " + std::to_string(p.b.size()) + " coordinates, expected " +
                                     std::to_string(n + 1));
            try {
                p.a = normalize_projective(std::move(p.a));
            } catch (const std::invalid_argument&) {
                throw ParseError(line_no, toks[1].column, "first factor is the zero vector");
            }
            try {
                p.b = normalize_projective(std::move(p.b));
            } catch (const std::invalid_argument&) {
                throw ParseError(line_no, bar_col, "second factor is the zero vector");
            }
            if (!seen.insert(p).second) throw ParseError(line_no, 0, "duplicate point " + to_string(p));
            pts.push_back(std::move(p));
        }
        if (end == text.size()) break;
    }
    if (m < 0) throw ParseError(line_no, 0, "missing 'm <int>' header");
    if (n < 0) throw ParseError(line_no, 0, "missing 'n <int>' header");
    if (pts.empty()) throw ParseError(line_no, 0, "no points given");
    return PointSet(m, n, std::move(pts));
}

/// Serializes in the file format; parse_pointset(format_pointset(X)) reproduces X.
inline std::string format_pointset(const PointSet& X) {
    std::ostringstream os;
    os << "m " << X.m() << "\nn " << X.n() << "\n";
    for (const auto& p : X.points()) {
        os << "point";
        for (const auto& q : p.a) os << ' ' << q.get_str();
        os << " |";
        for (const auto& q : p.b) os << ' ' << q.get_str();
        os << "\n";
    }
    return os.str();
}

// ------------------------------------------------------ structural predicates

/// For every pair q1 x q1', q2 x q2' in X, q1 x q2' or q2 x q1' is in X.
inline bool has_star_property(const PointSet& X) {
    const auto& pts = X.points();
    for (std::size_t u = 0; u < pts.size(); ++u)
        for (std::size_t v = u + 1; v < pts.size(); ++v) {
            if (X.contains({pts[u].a, pts[v].b})) continue;
            if (X.contains({pts[v].a, pts[u].b})) continue;
            return false;
        }
    return true;
}

inline bool is_product(const PointSet& X) {
    if (X.size() != X.s1() * X.s2()) return false;
    for (const auto& a : X.x1().points)
        for (const auto& b : X.x2().points)
            if (!X.contains({a, b})) return false;
    return true;
}

// ----------------------------------------------------------- regular forms

struct RegularForms {
    Rational t_x;     // ell = X0 + t X1 + t^2 X2 + ...
    Rational t_y;     // ellp = Y0 + t Y1 + ...
    BiPoly ell;       // bidegree (1,0)
    BiPoly ellp;      // bidegree (0,1)
    QMatrix change_x; // new coordinates = change_x * old coordinates; row 0 is ell
    QMatrix change_y;
};

namespace detail {
inline Coords power_form(int dim, const Rational& t) {
    Coords c(static_cast<std::size_t>(dim + 1));
    Rational p = 1;
    for (auto& e : c) {
        e = p;
        p *= t;
    }
    return c;
}

inline Rational dot(const Coords& c, const Coords& v) {
    Rational s = 0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * v[k];
    return s;
}

inline Rational first_nonvanishing_t(const ProjPoints& pts) {
    for (long t = 0;; ++t) {
        const auto c = power_form(pts.dim, Rational(t));
        if (std::all_of(pts.points.begin(), pts.points.end(), [&](const Coords& q) { return dot(c, q) != 0; }))
            return Rational(t);
    }
}

inline QMatrix change_matrix(const Coords& c) {
    QMatrix T = QMatrix::identity(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) T(0, k) = c[k];
    return T;
}

inline Coords apply(const QMatrix& T, const Coords& v) {
    Coords r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k)
            if (T(i, k) != 0) r[i] += T(i, k) * v[k];
    return r;
}
}  // namespace detail

/// First t = 0, 1, 2, ... with ell nonvanishing on X1 (same for ellp on X2).
inline RegularForms choose_regular_forms(const PointSet& X) {
    RegularForms f;
    const int m = X.m(), n = X.n();
    f.t_x = detail::first_nonvanishing_t(X.x1());
    f.t_y = detail::first_nonvanishing_t(X.x2());
    const auto cx = detail::power_form(m, f.t_x);
    const auto cy = detail::power_form(n, f.t_y);
    f.ell = BiPoly(m, n);
    f.ellp = BiPoly(m, n);
    for (int k = 0; k <= m; ++k) f.ell.add_term(Monomial::var_x(m, n, k), cx[k]);
    for (int k = 0; k <= n; ++k) f.ellp.add_term(Monomial::var_y(m, n, k), cy[k]);
    f.change_x = detail::change_matrix(cx);
    f.change_y = detail::change_matrix(cy);
    return f;
}

/// The point set in coordinates where ell becomes X0 and ellp becomes Y0.
inline PointSet apply_coordinate_change(const PointSet& X, const RegularForms& f) {
    std::vector<Point> pts;
    for (const auto& p : X.points()) pts.push_back({detail::apply(f.change_x, p.a), detail::apply(f.change_y, p.b)});
    return PointSet(X.m(), X.n(), std::move(pts));
}

/// Same point set with X0 and Y0 nonvanishing everywhere.
inline PointSet with_regular_coordinates(const PointSet& X) {
    return apply_coordinate_change(X, choose_regular_forms(X));
}

inline ProjPoints with_regular_coordinates(const ProjPoints& q) {
    const auto c = detail::power_form(q.dim, detail::first_nonvanishing_t(q));
    const auto T = detail::change_matrix(c);
    std::vector<Coords> pts;
    for (const auto& v : q.points) pts.push_back(detail::apply(T, v));
    return make_proj_points(q.dim, std::move(pts));
}

}  // namespace bigraded
