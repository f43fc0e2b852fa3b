#pragma once

// Shared fixtures, brute-force oracles and random configurations for the tests.

#include <bigraded/bipoly.hpp>
#include <bigraded/exactlin.hpp>
#include <bigraded/pointset.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace bigraded {
inline void PrintTo(const BiPoly& f, std::ostream* os) { *os << to_string(f); }
}  // namespace bigraded

namespace testing_support {

using namespace bigraded;

inline std::string data_path(const std::string& name) { return std::string(BIGRADED_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline PointSet load_data(const std::string& name) { return parse_pointset(read_file(data_path(name))); }

inline Coords C(std::initializer_list<long> v) {
    Coords out;
    for (long x : v) out.emplace_back(x);
    return out;
}

inline Point P(std::initializer_list<long> a, std::initializer_list<long> b) { return {C(a), C(b)}; }

inline PointSet nine_points() { return load_data("nine_points.pts"); }
inline PointSet six_point_product() { return load_data("six_point_product.pts"); }
inline PointSet grid24() { return load_data("grid24_minus_corner.pts"); }

/// (1:0:..:0) x (1:0:..:0).
inline PointSet single_point(int m, int n) {
    Point p{Coords(static_cast<std::size_t>(m + 1)), Coords(static_cast<std::size_t>(n + 1))};
    p.a[0] = 1;
    p.b[0] = 1;
    return PointSet(m, n, {p});
}

/// 2x2 grid in P^1 x P^1.
inline PointSet grid2x2() {
    return PointSet(1, 1, {P({1, 0}, {1, 0}), P({1, 0}, {1, 1}), P({1, 1}, {1, 0}), P({1, 1}, {1, 1})});
}

/// {q1 x q1', q2 x q2'} in P^1 x P^1.
inline PointSet diagonal2() { return PointSet(1, 1, {P({1, 0}, {1, 0}), P({1, 1}, {1, 1})}); }

/// {q1 x q1', q1 x q2', q2 x q1'} in P^1 x P^1.
inline PointSet corner3() { return PointSet(1, 1, {P({1, 0}, {1, 0}), P({1, 0}, {1, 1}), P({1, 1}, {1, 0})}); }

// ------------------------------------------------------------------ oracles

/// Rank by textbook Gaussian elimination over Q (no fraction-free tricks).
inline std::size_t oracle_rank(std::vector<std::vector<Rational>> a) {
    std::size_t r = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (k == r || a[k][c] == 0) continue;
            const Rational f = a[k][c] / a[r][c];
            for (std::size_t t = c; t < cols; ++t) a[k][t] -= f * a[r][t];
        }
        ++r;
    }
    return r;
}

inline std::size_t oracle_rank(const QMatrix& m) {
    std::vector<std::vector<Rational>> a;
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(m.row_vector(r));
    return oracle_rank(std::move(a));
}

/// All exponent vectors of `vars` variables summing to `deg` (odometer enumeration).
inline std::vector<std::vector<int>> oracle_exponents(int vars, int deg) {
    std::vector<std::vector<int>> out;
    std::vector<int> e(vars, 0);
    while (true) {
        int sum = 0;
        for (int x : e) sum += x;
        if (sum == deg) out.push_back(e);
        int k = 0;
        while (k < vars && e[k] == deg) e[k++] = 0;
        if (k == vars) break;
        ++e[k];
    }
    return out;
}

inline Rational power(const Rational& b, int e) {
    Rational r = 1;
    for (int k = 0; k < e; ++k) r *= b;
    return r;
}

inline Rational oracle_monomial_value(const std::vector<int>& ex, const Coords& a) {
    Rational v = 1;
    for (std::size_t k = 0; k < ex.size(); ++k) v *= power(a[k], ex[k]);
    return v;
}

inline std::size_t oracle_hf(const PointSet& X, Bidegree d) {
    if (!d.nonnegative()) return 0;
    const auto ex = oracle_exponents(X.m() + 1, d.i), ey = oracle_exponents(X.n() + 1, d.j);
    std::vector<std::vector<Rational>> rows;
    for (const auto& p : X.points()) {
        std::vector<Rational> row;
        for (const auto& a : ex)
            for (const auto& b : ey) row.push_back(oracle_monomial_value(a, p.a) * oracle_monomial_value(b, p.b));
        rows.push_back(std::move(row));
    }
    return oracle_rank(std::move(rows));
}

inline std::size_t oracle_proj_hf(const ProjPoints& q, int d) {
    std::vector<std::vector<Rational>> rows;
    const auto ex = oracle_exponents(q.dim + 1, d);
    for (const auto& p : q.points) {
        std::vector<Rational> row;
        for (const auto& a : ex) row.push_back(oracle_monomial_value(a, p));
        rows.push_back(std::move(row));
    }
    return oracle_rank(std::move(rows));
}

inline std::size_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int t = 1; t <= k; ++t) r = r * static_cast<std::size_t>(n - k + t) / static_cast<std::size_t>(t);
    return r;
}

inline std::size_t dim_S(int m, int n, Bidegree d) {
    return d.nonnegative() ? binom(d.i + m, m) * binom(d.j + n, n) : 0;
}

// ----------------------------------------------------- random configurations

struct Config {
    std::string label;
    PointSet X;
};

inline long draw(std::mt19937& g, long lo, long hi) {
    return lo + static_cast<long>(g() % static_cast<unsigned long>(hi - lo + 1));
}

/// Canonical a/b; the two-argument mpq constructor does not reduce.
inline Rational frac(long a, long b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

inline Coords random_coords(std::mt19937& g, int dim, long lo = -2, long hi = 2) {
    while (true) {
        Coords c;
        for (int k = 0; k <= dim; ++k) c.emplace_back(draw(g, lo, hi));
        if (std::any_of(c.begin(), c.end(), [](const Rational& q) { return q != 0; })) return normalize_projective(c);
    }
}

inline std::vector<Coords> random_pool(std::mt19937& g, int dim, std::size_t k) {
    std::set<Coords> seen;
    std::vector<Coords> out;
    int guard = 0;
    while (out.size() < k && guard++ < 1000) {
        Coords c = random_coords(g, dim);
        if (seen.insert(c).second) out.push_back(c);
    }
    return out;
}

/// Random subset of a product of two small pools.
inline PointSet random_grid_subset(std::mt19937& g, int m, int n, std::size_t k1, std::size_t k2, std::size_t s) {
    const auto A = random_pool(g, m, k1), B = random_pool(g, n, k2);
    std::vector<Point> all;
    for (const auto& a : A)
        for (const auto& b : B) all.push_back({a, b});
    std::shuffle(all.begin(), all.end(), g);
    all.resize(std::min(all.size(), std::max<std::size_t>(s, 1)));
    return PointSet(m, n, all);
}

/// Staircase subset of a product: row k keeps its first c_k columns with c nonincreasing,
/// so the (*)-property holds by construction.
inline PointSet random_staircase(std::mt19937& g, int m, int n, std::size_t k1, std::size_t k2) {
    const auto A = random_pool(g, m, k1), B = random_pool(g, n, k2);
    std::vector<std::size_t> c(A.size());
    std::size_t cap = B.size();
    for (auto& x : c) {
        x = static_cast<std::size_t>(draw(g, 1, static_cast<long>(cap)));
        cap = x;
    }
    std::vector<Point> pts;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < c[i]; ++j) pts.push_back({A[i], B[j]});
    return PointSet(m, n, pts);
}

inline PointSet random_product(std::mt19937& g, int m, int n, std::size_t k1, std::size_t k2) {
    return product(make_proj_points(m, random_pool(g, m, k1)), make_proj_points(n, random_pool(g, n, k2)));
}

inline PointSet random_points(std::mt19937& g, int m, int n, std::size_t s) {
    std::set<Point> seen;
    std::vector<Point> pts;
    int guard = 0;
    while (pts.size() < s && guard++ < 1000) {
        Point p{random_coords(g, m), random_coords(g, n)};
        if (seen.insert(p).second) pts.push_back(p);
    }
    return PointSet(m, n, pts);
}

/// Points of an a x b affine grid in P^2, or a points in P^1: complete intersections.
inline ProjPoints random_ci(std::mt19937& g, int dim, int& regularity) {
    auto values = [&](std::size_t k) {
        std::set<long> s;
        while (s.size() < k) s.insert(draw(g, -3, 3));
        return std::vector<long>(s.begin(), s.end());
    };
    std::vector<Coords> pts;
    if (dim == 1) {
        const auto u = values(static_cast<std::size_t>(draw(g, 1, 3)));
        for (long a : u) pts.push_back(C({1, a}));
        regularity = static_cast<int>(u.size()) - 1;
    } else {
        const auto u = values(static_cast<std::size_t>(draw(g, 1, 2)));
        const auto v = values(static_cast<std::size_t>(draw(g, 1, 2)));
        for (long a : u)
            for (long b : v) pts.push_back(C({1, a, b}));
        regularity = static_cast<int>(u.size() + v.size()) - 2;
    }
    return make_proj_points(dim, pts);
}

/// Deterministic mix of grid subsets, staircases, products and unstructured sets,
/// with m, n <= 2 and at most 10 points.
inline std::vector<Config> random_configs(std::size_t count, unsigned seed) {
    std::mt19937 g(seed);
    std::vector<Config> out;
    for (std::size_t t = 0; out.size() < count; ++t) {
        const int m = static_cast<int>(draw(g, 1, 2)), n = static_cast<int>(draw(g, 1, 2));
        const std::size_t k1 = static_cast<std::size_t>(draw(g, 1, 4)), k2 = static_cast<std::size_t>(draw(g, 1, 4));
        std::string kind;
        std::optional<PointSet> X;
        switch (t % 4) {
            case 0:
                kind = "grid-subset";
                X = random_grid_subset(g, m, n, k1, k2, static_cast<std::size_t>(draw(g, 1, 10)));
                break;
            case 1:
                kind = "staircase";
                X = random_staircase(g, m, n, k1, std::min<std::size_t>(k2, 10 / k1));
                break;
            case 2:
                kind = "product";
                X = random_product(g, m, n, k1, std::min<std::size_t>(k2, 10 / k1));
                break;
            default:
                kind = "unstructured";
                X = random_points(g, m, n, static_cast<std::size_t>(draw(g, 1, 6)));
        }
        if (X->size() > 10) continue;
        out.push_back({"#" + std::to_string(out.size()) + " " + kind + " m=" + std::to_string(m) +
                           " n=" + std::to_string(n) + "\n" + format_pointset(*X),
                       *X});
    }
    return out;
}

}  // namespace testing_support
