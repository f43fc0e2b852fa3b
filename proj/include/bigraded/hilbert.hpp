#pragma once

// Bigraded Hilbert functions of point sets, of their double-point schemes and
// of the modules of Kahler differentials, plus regularity data and borders.

#include <bigraded/bipoly.hpp>
#include <bigraded/errors.hpp>
#include <bigraded/exactlin.hpp>
#include <bigraded/pointset.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bigraded {

/// Rows: points (then, with derivatives, one row per point and variable X_0..X_m, Y_0..Y_n).
/// Columns: monomials of bidegree d in monomial_basis order.
inline QMatrix evaluation_matrix(const PointSet& X, Bidegree d, bool with_derivatives = false) {
    const int m = X.m(), n = X.n();
    const auto mons = monomials_of_degree(m, n, d);
    QMatrix E(0, mons.size());
    std::vector<Rational> row(mons.size());
    for (const auto& p : X.points()) {
        for (std::size_t c = 0; c < mons.size(); ++c) row[c] = BiPoly::eval_monomial(mons[c], p.a, p.b);
        E.append_row(row);
    }
    if (!with_derivatives) return E;
    for (const auto& p : X.points()) {
        for (int block = 0; block < 2; ++block) {
            const int count = block == 0 ? m + 1 : n + 1;
            for (int k = 0; k < count; ++k) {
                const Variable v{block == 0, k};
                for (std::size_t c = 0; c < mons.size(); ++c)
                    row[c] = diff(BiPoly::monomial(m, n, mons[c]), v).eval(p.a, p.b);
                E.append_row(row);
            }
        }
    }
    return E;
}

/// HF_X(d) as the rank of the evaluation matrix; 0 at negative bidegrees.
inline std::size_t hf(const PointSet& X, Bidegree d) {
    if (!d.nonnegative()) return 0;
    return rank(evaluation_matrix(X, d));
}

/// Values of a polynomial at every point of X, in point order.
inline std::vector<Rational> eval_vector(const PointSet& X, const BiPoly& f) {
    std::vector<Rational> v;
    v.reserve(X.size());
    for (const auto& p : X.points()) v.push_back(f.eval(p.a, p.b));
    return v;
}

inline std::vector<Rational> hadamard(std::span<const Rational> u, const std::vector<Rational>& w) {
    std::vector<Rational> r(u.size());
    for (std::size_t k = 0; k < u.size(); ++k)
        if (u[k] != 0 && w[k] != 0) r[k] = u[k] * w[k];
    return r;
}

/// The images (R_X)_d inside Q^s, built recursively:
/// U_{0,0} = span{1}, U_{i,j} = sum_k x_k U_{i-1,j} (or sum_l y_l U_{i,j-1}).
class CoordinateRingImage {
public:
    explicit CoordinateRingImage(const PointSet& X) : s_(X.size()) {
        xs_.assign(static_cast<std::size_t>(X.m() + 1), std::vector<Rational>(s_));
        ys_.assign(static_cast<std::size_t>(X.n() + 1), std::vector<Rational>(s_));
        for (std::size_t p = 0; p < s_; ++p) {
            for (std::size_t k = 0; k < xs_.size(); ++k) xs_[k][p] = X[p].a[k];
            for (std::size_t k = 0; k < ys_.size(); ++k) ys_[k][p] = X[p].b[k];
        }
    }

    std::size_t size() const noexcept { return s_; }
    const std::vector<std::vector<Rational>>& x_values() const noexcept { return xs_; }
    const std::vector<std::vector<Rational>>& y_values() const noexcept { return ys_; }

    /// Row basis of the image of S_d. Empty (0 x s) at negative bidegrees.
    const QMatrix& component(Bidegree d) {
        if (!d.nonnegative()) return empty_ = QMatrix(0, s_);
        const auto key = std::pair{d.i, d.j};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        QMatrix basis;
        if (d.i == 0 && d.j == 0) {
            basis = QMatrix(1, s_);
            for (std::size_t p = 0; p < s_; ++p) basis(0, p) = 1;
        } else {
            const bool along_x = d.i > 0;
            const QMatrix& prev = component(along_x ? Bidegree{d.i - 1, d.j} : Bidegree{d.i, d.j - 1});
            if (prev.rows() == s_) {
                basis = QMatrix::identity(s_);
            } else {
                QMatrix gen(0, s_);
                for (const auto& w : along_x ? xs_ : ys_)
                    for (std::size_t r = 0; r < prev.rows(); ++r) gen.append_row(hadamard(prev.row(r), w));
                basis = row_basis(gen);
            }
        }
        return memo_.emplace(key, std::move(basis)).first->second;
    }

    std::size_t hf(Bidegree d) { return d.nonnegative() ? component(d).rows() : 0; }

private:
    std::size_t s_;
    std::vector<std::vector<Rational>> xs_, ys_;
    std::map<std::pair<int, int>, QMatrix> memo_;
    QMatrix empty_;
};

// --------------------------------------------------------------- tables

struct Border {
    std::vector<std::size_t> bc;  // along row reg_pair.i: HF(r1, 0..r2)
    std::vector<std::size_t> br;  // along column reg_pair.j: HF(0..r1, r2)
    friend bool operator==(const Border&, const Border&) = default;
};

struct HFTable {
    Bidegree box;                                   // inclusive upper corner
    std::vector<std::vector<std::size_t>> values;   // values[i][j]
    Bidegree reg_pair;
    Border border;

    std::size_t at(int i, int j) const {
        if (i < 0 || j < 0) return 0;
        return values.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
    }
    std::size_t at(Bidegree d) const { return at(d.i, d.j); }
    bool in_box(Bidegree d) const { return d.nonnegative() && preceq(d, box); }
};

template <class F>
std::vector<std::vector<std::size_t>> tabulate(Bidegree box, F&& f) {
    std::vector<std::vector<std::size_t>> v(static_cast<std::size_t>(box.i + 1),
                                            std::vector<std::size_t>(static_cast<std::size_t>(box.j + 1)));
    for (int i = 0; i <= box.i; ++i)
        for (int j = 0; j <= box.j; ++j) v[i][j] = f(Bidegree{i, j});
    return v;
}

template <class F>
Border border_along(Bidegree reg, F&& f) {
    Border b;
    for (int j = 0; j <= reg.j; ++j) b.bc.push_back(f(Bidegree{reg.i, j}));
    for (int i = 0; i <= reg.i; ++i) b.br.push_back(f(Bidegree{i, reg.j}));
    return b;
}

struct ProjHF {
    std::vector<std::size_t> values;  // HF(0), HF(1), ..., through at least regularity + 1
    int regularity = 0;               // least d with HF(d) = number of points
};

/// Standard graded Hilbert function of points in one projective space.
inline ProjHF hf_projection(const ProjPoints& q, int through = 0) {
    if (q.size() == 0) throw std::invalid_argument("hf_projection needs at least one point");
    CoordinateRingImage img(as_first_factor(q));
    ProjHF out;
    out.regularity = -1;
    for (int d = 0;; ++d) {
        out.values.push_back(img.hf({d, 0}));
        if (out.regularity < 0 && out.values.back() == q.size()) out.regularity = d;
        if (out.regularity >= 0 && d > out.regularity && d >= through) break;
    }
    return out;
}

/// Hilbert function of X on the box (default (s1, s2)), regularity pair and border.
inline HFTable hf_table(const PointSet& X, std::optional<Bidegree> box = std::nullopt) {
    CoordinateRingImage img(X);
    HFTable t;
    t.box = box.value_or(Bidegree{static_cast<int>(X.s1()), static_cast<int>(X.s2())});
    t.values = tabulate(t.box, [&](Bidegree d) { return img.hf(d); });
    t.reg_pair = {hf_projection(X.x1()).regularity, hf_projection(X.x2()).regularity};
    t.border = border_along(t.reg_pair, [&](Bidegree d) { return img.hf(d); });
    return t;
}

// --------------------------------------------------------- double points

enum class DoublePointMethod { intersection, derivative };

namespace detail {
// linear generators of the ideal of the point p in one factor, as coefficient vectors
inline std::vector<Coords> linear_annihilators(const Coords& a) {
    std::size_t k = 0;
    while (a[k] == 0) ++k;
    std::vector<Coords> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == k) continue;
        Coords c(a.size());
        c[i] = a[k];
        c[k] = -a[i];
        out.push_back(std::move(c));
    }
    return out;
}

// (I_p^2)_d as a row-spanning matrix in monomial coordinates
inline QMatrix square_of_point_ideal(int m, int n, const Point& p, Bidegree d) {
    std::vector<BiPoly> lin;
    for (const auto& c : linear_annihilators(p.a)) {
        BiPoly f(m, n);
        for (int k = 0; k <= m; ++k) f.add_term(Monomial::var_x(m, n, k), c[k]);
        lin.push_back(std::move(f));
    }
    for (const auto& c : linear_annihilators(p.b)) {
        BiPoly f(m, n);
        for (int k = 0; k <= n; ++k) f.add_term(Monomial::var_y(m, n, k), c[k]);
        lin.push_back(std::move(f));
    }
    const auto cols = monomials_of_degree(m, n, d);
    std::map<Monomial, std::size_t, MonomialLess> pos;
    for (std::size_t c = 0; c < cols.size(); ++c) pos[cols[c]] = c;
    QMatrix M(0, cols.size());
    std::vector<Rational> row(cols.size());
    for (std::size_t u = 0; u < lin.size(); ++u)
        for (std::size_t v = u; v < lin.size(); ++v) {
            const BiPoly g = lin[u] * lin[v];
            const Bidegree rest = d - *g.bidegree();
            if (!rest.nonnegative()) continue;
            for (const auto& mon : monomials_of_degree(m, n, rest)) {
                std::fill(row.begin(), row.end(), Rational(0));
                const BiPoly h = g.times_monomial(mon);
                for (const auto& [t, c] : h.terms()) row[pos.at(t)] = c;
                M.append_row(row);
            }
        }
    return M;
}
}  // namespace detail

/// HF of the scheme of double points supported on X.
inline std::size_t hf_double_points(const PointSet& X, Bidegree d,
                                    DoublePointMethod method = DoublePointMethod::derivative) {
    if (!d.nonnegative()) return 0;
    if (method == DoublePointMethod::derivative) return rank(evaluation_matrix(X, d, true));
    const std::size_t N = monomial_count(X.m(), X.n(), d);
    QMatrix inter = QMatrix::identity(N);
    for (const auto& p : X.points()) {
        inter = subspace_intersect(inter, detail::square_of_point_ideal(X.m(), X.n(), p, d));
        if (inter.rows() == 0) break;
    }
    return N - inter.rows();
}

enum class OmegaBase { K, Ro };

/// HF of the module of Kahler differentials of R_X over K, or over R_o = K[x0, y0]
/// (the latter only for ACM sets; pass the verdict of is_acm).
inline std::size_t hf_omega(const PointSet& X, Bidegree d, OmegaBase base, bool x_is_acm = false,
                            DoublePointMethod method = DoublePointMethod::derivative) {
    if (base == OmegaBase::Ro && !x_is_acm)
        throw PreconditionError("Omega over K[x0,y0] is only defined for ACM point sets");
    if (!d.nonnegative()) return 0;
    CoordinateRingImage img(X);
    const long mm = X.m() + (base == OmegaBase::K ? 1 : 0);
    const long nn = X.n() + (base == OmegaBase::K ? 1 : 0);
    const long v = mm * static_cast<long>(img.hf({d.i - 1, d.j})) + nn * static_cast<long>(img.hf({d.i, d.j - 1})) +
                   static_cast<long>(img.hf(d)) - static_cast<long>(hf_double_points(X, d, method));
    if (v < 0) throw InternalError("negative Hilbert function value for Omega at " + to_string(d));
    return static_cast<std::size_t>(v);
}

// ------------------------------------------------------------ rendering

inline std::string to_string(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
    return s + ")";
}

inline std::string to_string(const Border& b) { return "(" + to_string(b.bc) + "," + to_string(b.br) + ")"; }

/// Matrix layout with row index i and column index j.
inline std::string render_matrix(const std::vector<std::vector<std::size_t>>& values) {
    std::size_t width = 1;
    for (const auto& r : values)
        for (auto v : r) width = std::max(width, std::to_string(v).size());
    std::ostringstream os;
    for (const auto& r : values) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            const auto s = std::to_string(r[j]);
            os << (j ? " " : "") << std::string(width - s.size(), ' ') << s;
        }
        os << " ...\n";
    }
    return os.str();
}

inline std::string render_text(const HFTable& t) {
    std::ostringstream os;
    os << "box " << to_string(t.box) << "\n"
       << render_matrix(t.values) << "reg_pair " << to_string(t.reg_pair) << "\n"
       << "border " << to_string(t.border) << "\n";
    return os.str();
}

}  // namespace bigraded
