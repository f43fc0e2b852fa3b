#pragma once

// Bihomogeneous polynomials in X_0..X_m, Y_0..Y_n with rational coefficients.

#include <bigraded/errors.hpp>
#include <bigraded/exactlin.hpp>
#include <bigraded/rational.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace bigraded {

struct Bidegree {
    int i = 0;
    int j = 0;

    friend bool operator==(const Bidegree&, const Bidegree&) = default;
    // total order used for iteration: (i+j, i)
    friend auto operator<=>(const Bidegree& a, const Bidegree& b) {
        if (auto c = (a.i + a.j) <=> (b.i + b.j); c != 0) return c;
        return a.i <=> b.i;
    }
    Bidegree operator+(const Bidegree& o) const { return {i + o.i, j + o.j}; }
    Bidegree operator-(const Bidegree& o) const { return {i - o.i, j - o.j}; }
    bool nonnegative() const { return i >= 0 && j >= 0; }
};

/// Componentwise partial order.
inline bool preceq(const Bidegree& a, const Bidegree& b) { return a.i <= b.i && a.j <= b.j; }
inline bool precneq(const Bidegree& a, const Bidegree& b) { return preceq(a, b) && !(a == b); }

inline std::string to_string(const Bidegree& d) {
    return "(" + std::to_string(d.i) + "," + std::to_string(d.j) + ")";
}

/// Exponent vectors of one monomial; x has m+1 entries, y has n+1.
struct Monomial {
    std::vector<int> x;
    std::vector<int> y;

    Bidegree degree() const {
        return {std::accumulate(x.begin(), x.end(), 0), std::accumulate(y.begin(), y.end(), 0)};
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t k = 0; k < x.size(); ++k) r.x[k] += o.x[k];
        for (std::size_t k = 0; k < y.size(); ++k) r.y[k] += o.y[k];
        return r;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k] > o.x[k]) return false;
        for (std::size_t k = 0; k < y.size(); ++k)
            if (y[k] > o.y[k]) return false;
        return true;
    }

    static Monomial one(int m, int n) { return {std::vector<int>(m + 1, 0), std::vector<int>(n + 1, 0)}; }
    static Monomial var_x(int m, int n, int k) {
        auto r = one(m, n);
        r.x[k] = 1;
        return r;
    }
    static Monomial var_y(int m, int n, int k) {
        auto r = one(m, n);
        r.y[k] = 1;
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

namespace detail {
// degrevlex comparison of equal-degree exponent blocks: <0 if a is smaller
inline int degrevlex_cmp(const std::vector<int>& a, const std::vector<int>& b) {
    for (std::size_t k = a.size(); k-- > 0;)
        if (a[k] != b[k]) return a[k] > b[k] ? -1 : 1;
    return 0;
}
}  // namespace detail

/// Term order: bidegree by (i+j, i), then degrevlex on the X block, then on the Y block.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const auto da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        if (int c = detail::degrevlex_cmp(a.x, b.x); c != 0) return c < 0;
        return detail::degrevlex_cmp(a.y, b.y) < 0;
    }
};

namespace detail {
inline void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int a = total; a >= 0; --a) {
        cur.push_back(a);
        compositions(total - a, parts - 1, cur, out);
        cur.pop_back();
    }
}

// exponent vectors of the given degree in `vars` variables, descending degrevlex
inline std::vector<std::vector<int>> exponent_vectors(int vars, int degree) {
    std::vector<std::vector<int>> out;
    if (degree < 0) return out;
    std::vector<int> cur;
    compositions(degree, vars, cur, out);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return degrevlex_cmp(a, b) > 0; });
    return out;
}
}  // namespace detail

inline std::size_t binomial(int n, int k) {
    if (k < 0 || n < k) return 0;
    std::size_t r = 1;
    for (int t = 1; t <= k; ++t) r = r * static_cast<std::size_t>(n - k + t) / static_cast<std::size_t>(t);
    return r;
}

/// dim S_{i,j} = C(i+m, m) * C(j+n, n); zero at negative bidegrees.
inline std::size_t monomial_count(int m, int n, Bidegree d) {
    if (!d.nonnegative()) return 0;
    return binomial(d.i + m, m) * binomial(d.j + n, n);
}

/// Monomials of bidegree d in descending term order (X0 first in degree (1,0)).
inline std::vector<Monomial> monomials_of_degree(int m, int n, Bidegree d) {
    std::vector<Monomial> out;
    if (!d.nonnegative()) return out;
    const auto xs = detail::exponent_vectors(m + 1, d.i);
    const auto ys = detail::exponent_vectors(n + 1, d.j);
    out.reserve(xs.size() * ys.size());
    for (const auto& a : xs)
        for (const auto& b : ys) out.push_back({a, b});
    return out;
}

class BiPoly {
public:
    using Terms = std::map<Monomial, Rational, MonomialLess>;

    BiPoly() = default;
    BiPoly(int m, int n) : m_(m), n_(n) {}

    static BiPoly constant(int m, int n, const Rational& c) {
        BiPoly p(m, n);
        if (c != 0) p.terms_[Monomial::one(m, n)] = c;
        return p;
    }
    static BiPoly monomial(int m, int n, const Monomial& mon, const Rational& c = 1) {
        BiPoly p(m, n);
        if (c != 0) p.terms_[mon] = c;
        return p;
    }
    static BiPoly x(int m, int n, int k) { return monomial(m, n, Monomial::var_x(m, n, k)); }
    static BiPoly y(int m, int n, int k) { return monomial(m, n, Monomial::var_y(m, n, k)); }

    int m() const noexcept { return m_; }
    int n() const noexcept { return n_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Bidegree if every term has the same one; nullopt for zero or mixed polynomials.
    std::optional<Bidegree> bidegree() const {
        if (terms_.empty()) return std::nullopt;
        const Bidegree d = terms_.begin()->first.degree();
        for (const auto& [mon, c] : terms_)
            if (mon.degree() != d) return std::nullopt;
        return d;
    }

    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

    Rational coefficient(const Monomial& mon) const {
        auto it = terms_.find(mon);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial& mon, const Rational& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(mon, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    BiPoly& operator+=(const BiPoly& o) {
        check(o);
        for (const auto& [mon, c] : o.terms_) add_term(mon, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o) {
        check(o);
        for (const auto& [mon, c] : o.terms_) add_term(mon, -c);
        return *this;
    }
    BiPoly& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto& [mon, v] : terms_) v *= c;
        }
        return *this;
    }

    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(BiPoly a, const Rational& c) { return a *= c; }
    friend BiPoly operator*(const Rational& c, BiPoly a) { return a *= c; }
    BiPoly operator-() const { return *this * Rational(-1); }

    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        a.check(b);
        BiPoly r(a.m_, a.n_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    BiPoly times_monomial(const Monomial& mon) const {
        BiPoly r(m_, n_);
        for (const auto& [ma, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), ma * mon, c);
        return r;
    }

    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    /// Value at the given coordinate vectors (representative dependent).
    Rational eval(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
        if (a.size() != static_cast<std::size_t>(m_ + 1) || b.size() != static_cast<std::size_t>(n_ + 1))
            throw DimensionMismatch("evaluation point does not match the ambient P^" + std::to_string(m_) +
                                    " x P^" + std::to_string(n_));
        Rational sum = 0;
        for (const auto& [mon, c] : terms_) sum += c * eval_monomial(mon, a, b);
        return sum;
    }

    static Rational eval_monomial(const Monomial& mon, const std::vector<Rational>& a,
                                  const std::vector<Rational>& b) {
        Rational v = 1;
        for (std::size_t k = 0; k < mon.x.size(); ++k)
            for (int e = 0; e < mon.x[k]; ++e) v *= a[k];
        for (std::size_t k = 0; k < mon.y.size(); ++k)
            for (int e = 0; e < mon.y[k]; ++e) v *= b[k];
        return v;
    }

private:
    void check(const BiPoly& o) const {
        if (m_ != o.m_ || n_ != o.n_) throw DimensionMismatch("polynomials live in different rings");
    }

    int m_ = 0;
    int n_ = 0;
    Terms terms_;
};

/// A variable X_k (is_x) or Y_k.
struct Variable {
    bool is_x = true;
    int index = 0;
};

inline BiPoly diff(const BiPoly& f, Variable v) {
    BiPoly r(f.m(), f.n());
    for (const auto& [mon, c] : f.terms()) {
        const auto& block = v.is_x ? mon.x : mon.y;
        const int e = block.at(static_cast<std::size_t>(v.index));
        if (e == 0) continue;
        Monomial d = mon;
        (v.is_x ? d.x : d.y)[static_cast<std::size_t>(v.index)] -= 1;
        r.add_term(d, c * e);
    }
    return r;
}

/// Monomial basis of S_d as polynomials.
inline std::vector<BiPoly> monomial_basis(int m, int n, Bidegree d) {
    std::vector<BiPoly> out;
    for (const auto& mon : monomials_of_degree(m, n, d)) out.push_back(BiPoly::monomial(m, n, mon));
    return out;
}

namespace detail {
inline BiPoly cofactor_det(const std::vector<std::vector<BiPoly>>& a, std::vector<std::size_t>& cols,
                           std::size_t row, int m, int n) {
    if (row == a.size()) return BiPoly::constant(m, n, 1);
    BiPoly sum(m, n);
    int sign = 1;
    for (std::size_t t = 0; t < cols.size(); ++t) {
        const std::size_t c = cols[t];
        if (!a[row][c].is_zero()) {
            cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(t));
            BiPoly sub = cofactor_det(a, cols, row + 1, m, n);
            cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(t), c);
            if (!sub.is_zero()) {
                BiPoly term = a[row][c] * sub;
                if (sign < 0) sum -= term;
                else sum += term;
            }
        }
        sign = -sign;
    }
    return sum;
}
}  // namespace detail

/// Determinant of a square polynomial matrix by cofactor expansion along rows.
inline BiPoly poly_det(const std::vector<std::vector<BiPoly>>& a, int m, int n) {
    for (const auto& r : a)
        if (r.size() != a.size()) throw DimensionMismatch("poly_det needs a square matrix");
    std::vector<std::size_t> cols(a.size());
    std::iota(cols.begin(), cols.end(), 0);
    return detail::cofactor_det(a, cols, 0, m, n);
}

/// Determinant of a square rational matrix (Bareiss, exact).
inline Rational det(const QMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionMismatch("det needs a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    Rational scale = 1;
    auto ints = detail::to_integer_rows(a);
    for (std::size_t r = 0; r < n; ++r) {
        Integer l = 1;
        for (const auto& q : a.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        scale *= Rational(l);
    }
    Integer prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && ints.at(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(ints.at(p, k), ints.at(c, k));
            sign = -sign;
        }
        for (std::size_t i = c + 1; i < n; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                Integer t = ints.at(c, c) * ints.at(i, j) - ints.at(i, c) * ints.at(c, j);
                mpz_divexact(ints.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            ints.at(i, c) = 0;
        }
        prev = ints.at(c, c);
    }
    Rational d(prev * sign);
    d /= scale;
    return d;
}

// ---------------------------------------------------------------- rendering

inline std::string to_string(const Monomial& mon) {
    std::string s;
    auto emit = [&](char name, const std::vector<int>& e) {
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (!e[k]) continue;
            if (!s.empty()) s += '*';
            s += name;
            s += '[' + std::to_string(k) + ']';
            if (e[k] > 1) s += '^' + std::to_string(e[k]);
        }
    };
    emit('x', mon.x);
    emit('y', mon.y);
    return s;
}

/// Canonical text: terms in descending term order, e.g. "x[0]*x[1] - x[1]^2", "3/2*x[0]*y[1]".
inline std::string to_string(const BiPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [mon, c] = *it;
        const bool neg = c < 0;
        const Rational a = neg ? Rational(-c) : c;
        if (first) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        first = false;
        const std::string ms = to_string(mon);
        if (ms.empty()) s += a.get_str();
        else if (a == 1) s += ms;
        else s += a.get_str() + "*" + ms;
    }
    return s;
}

}  // namespace bigraded
