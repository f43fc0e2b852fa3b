#pragma once

// Vanishing ideals of point sets and components of finitely spanned ideals.
//
// The standard monomials and a Groebner basis of I_X are found degree by degree
// (Buchberger-Moller style, one IncrementalSpan of evaluation vectors per
// bidegree). Minimal generators are then picked among the Groebner elements of
// each bidegree d: the class of g in I_d / (S_+ I)_d is read off in the Koszul
// complex of R_X, where g = sum_v v*f_v maps to the cycle (f_v(X))_v in
// (+)_v Q^s and (S_+ I)_d corresponds to the Koszul boundaries.

#include <bigraded/bipoly.hpp>
#include <bigraded/errors.hpp>
#include <bigraded/exactlin.hpp>
#include <bigraded/hilbert.hpp>
#include <bigraded/pointset.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace bigraded {

enum class SpanKind { ideal_in_S, ideal_in_RX };

struct Generator {
    BiPoly poly;
    Bidegree degree;
};

/// A bigraded ideal given by bihomogeneous spanning elements. For ideal_in_RX the
/// polynomials are lifts and all questions are answered through evaluation at `points`.
struct SpanSet {
    int m = 0;
    int n = 0;
    SpanKind kind = SpanKind::ideal_in_S;
    std::vector<Generator> generators;
    std::shared_ptr<const PointSet> points;

    void add(const BiPoly& f) {
        if (f.m() != m || f.n() != n) throw DimensionMismatch("generator lives in a different ring");
        auto d = f.bidegree();
        if (!d) throw std::invalid_argument("generators must be nonzero and bihomogeneous");
        generators.push_back({f, *d});
    }

    std::vector<Bidegree> degrees() const {
        std::vector<Bidegree> out;
        for (const auto& g : generators) out.push_back(g.degree);
        return out;
    }
};

/// Sparse echelon form of polynomials keyed by leading monomial; rows are monic.
class PolyEchelon {
public:
    /// Top-reduces f; adds it when a leading monomial survives.
    bool insert(BiPoly f) {
        f = reduce(std::move(f));
        if (f.is_zero()) return false;
        f *= 1 / f.leading_coefficient();
        Monomial lm = f.leading_monomial();
        rows_.emplace(std::move(lm), std::move(f));
        return true;
    }

    BiPoly reduce(BiPoly f) const {
        while (!f.is_zero()) {
            auto it = rows_.find(f.leading_monomial());
            if (it == rows_.end()) break;
            f -= it->second * Rational(f.leading_coefficient());
        }
        return f;
    }

    bool contains(const BiPoly& f) const { return reduce(f).is_zero(); }
    std::size_t rank() const noexcept { return rows_.size(); }
    const std::map<Monomial, BiPoly, MonomialLess>& rows() const noexcept { return rows_; }

private:
    std::map<Monomial, BiPoly, MonomialLess> rows_;
};

/// Coefficient vectors in monomial_basis(m, n, d) order.
inline QMatrix coefficient_matrix(const std::vector<BiPoly>& polys, int m, int n, Bidegree d) {
    const auto cols = monomials_of_degree(m, n, d);
    std::map<Monomial, std::size_t, MonomialLess> pos;
    for (std::size_t c = 0; c < cols.size(); ++c) pos.emplace(cols[c], c);
    QMatrix M(0, cols.size());
    std::vector<Rational> row(cols.size());
    for (const auto& f : polys) {
        std::fill(row.begin(), row.end(), Rational(0));
        for (const auto& [mon, c] : f.terms()) {
            auto it = pos.find(mon);
            if (it == pos.end()) throw DimensionMismatch("polynomial is not of bidegree " + to_string(d));
            row[it->second] = c;
        }
        M.append_row(row);
    }
    return M;
}

/// Components J_d of an ideal of S, built recursively as
/// J_d = sum_k x_k J_{d-e1} + sum_l y_l J_{d-e2} + span(generators of degree d).
class IdealComponents {
public:
    explicit IdealComponents(const SpanSet& J) : J_(J) {
        if (J.kind != SpanKind::ideal_in_S) throw std::invalid_argument("IdealComponents needs an ideal of S");
    }

    /// Echelon basis of J_d. With a ceiling, stops as soon as that dimension is reached.
    const PolyEchelon& echelon(Bidegree d, std::optional<std::size_t> ceiling = std::nullopt) {
        const auto key = std::pair{d.i, d.j};
        if (auto it = memo_.find(key); it != memo_.end()) {
            const Entry& e = it->second;
            if (e.complete || (ceiling && e.echelon.rank() >= *ceiling)) return e.echelon;
            memo_.erase(it);
        }
        PolyEchelon E;
        auto full = [&] { return ceiling && E.rank() >= *ceiling; };
        for (const auto& g : J_.generators)
            if (g.degree == d && !full()) E.insert(g.poly);
        for (int block = 0; block < 2 && !full(); ++block) {
            const Bidegree prev = block == 0 ? Bidegree{d.i - 1, d.j} : Bidegree{d.i, d.j - 1};
            if (!prev.nonnegative() || !has_generator_below(prev)) continue;
            const PolyEchelon& lower = echelon(prev);
            const int count = block == 0 ? J_.m + 1 : J_.n + 1;
            for (int k = 0; k < count && !full(); ++k) {
                const Monomial v = block == 0 ? Monomial::var_x(J_.m, J_.n, k) : Monomial::var_y(J_.m, J_.n, k);
                for (const auto& [lm, row] : lower.rows()) {
                    if (full()) break;
                    E.insert(row.times_monomial(v));
                }
            }
        }
        const bool complete = !full();
        return memo_.emplace(key, Entry{std::move(E), complete}).first->second.echelon;
    }

    std::size_t dim(Bidegree d, std::optional<std::size_t> ceiling = std::nullopt) {
        return d.nonnegative() ? echelon(d, ceiling).rank() : 0;
    }

private:
    bool has_generator_below(Bidegree d) const {
        return std::any_of(J_.generators.begin(), J_.generators.end(),
                           [&](const Generator& g) { return preceq(g.degree, d); });
    }

    struct Entry {
        PolyEchelon echelon;
        bool complete;  // false when construction stopped at a ceiling
    };
    const SpanSet& J_;
    std::map<std::pair<int, int>, Entry> memo_;
};

/// Basis of the RX-image of J_d in Q^s: span of eval(g) * (R_X)_{d - deg g}.
inline QMatrix rx_component(const SpanSet& J, Bidegree d, CoordinateRingImage& img,
                            const std::vector<std::vector<Rational>>& gen_values) {
    QMatrix rows(0, img.size());
    for (std::size_t t = 0; t < J.generators.size(); ++t) {
        const Bidegree rest = d - J.generators[t].degree;
        if (!rest.nonnegative()) continue;
        const QMatrix& U = img.component(rest);
        for (std::size_t r = 0; r < U.rows(); ++r) rows.append_row(hadamard(U.row(r), gen_values[t]));
    }
    return row_basis(rows);
}

/// Row basis of J_d: monomial coordinates for ideals of S, point-evaluation
/// coordinates (Q^s) for ideals of R_X.
inline QMatrix component_basis(const SpanSet& J, Bidegree d) {
    if (J.kind == SpanKind::ideal_in_S) {
        const std::size_t N = monomial_count(J.m, J.n, d);
        if (!d.nonnegative()) return QMatrix(0, N);
        IdealComponents comp(J);
        std::vector<BiPoly> rows;
        for (const auto& [lm, f] : comp.echelon(d).rows()) rows.push_back(f);
        return row_basis(coefficient_matrix(rows, J.m, J.n, d));
    }
    if (!J.points) throw std::invalid_argument("an ideal of R_X needs its point set");
    CoordinateRingImage img(*J.points);
    if (!d.nonnegative()) return QMatrix(0, img.size());
    std::vector<std::vector<Rational>> values;
    for (const auto& g : J.generators) values.push_back(eval_vector(*J.points, g.poly));
    return rx_component(J, d, img, values);
}

// ------------------------------------------------------------ point ideals

/// Degree-by-degree standard monomials, Groebner elements and minimal generators of I_X.
class PointIdeal {
public:
    struct Component {
        std::vector<Monomial> standard;       // ascending term order
        std::set<Monomial, MonomialLess> standard_set;
        IncrementalSpan values;               // evaluation vectors of `standard`
        std::vector<BiPoly> groebner;         // new leading monomials at this degree, ascending
        std::optional<std::vector<BiPoly>> minimal;  // filled on demand
        explicit Component(std::size_t s) : values(s) {}
    };

    explicit PointIdeal(const PointSet& X) : X_(X), m_(X.m()), n_(X.n()), s_(X.size()) {}

    const PointSet& points() const noexcept { return X_; }

    const Component& at(Bidegree d) {
        if (!d.nonnegative()) throw std::invalid_argument("negative bidegree");
        const auto key = std::pair{d.i, d.j};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (d.i > 0) at({d.i - 1, d.j});
        if (d.j > 0) at({d.i, d.j - 1});
        Component c(s_);
        std::vector<Monomial> candidates;
        if (d.i == 0 && d.j == 0) {
            candidates.push_back(Monomial::one(m_, n_));
        } else {
            std::set<Monomial, MonomialLess> seen;
            for (const auto& [v, prev] : predecessors(d))
                for (const auto& u : memo_.at({prev.i, prev.j}).standard) {
                    Monomial t = u * v;
                    if (seen.insert(t).second && all_divisors_standard(t)) candidates.push_back(std::move(t));
                }
            std::sort(candidates.begin(), candidates.end(), MonomialLess{});
        }
        for (const auto& t : candidates) {
            std::vector<Rational> v(s_);
            for (std::size_t p = 0; p < s_; ++p) v[p] = BiPoly::eval_monomial(t, X_[p].a, X_[p].b);
            if (auto coords = c.values.coordinates(v)) {
                BiPoly g = BiPoly::monomial(m_, n_, t);
                for (std::size_t k = 0; k < coords->size(); ++k) g.add_term(c.standard[k], -(*coords)[k]);
                c.groebner.push_back(std::move(g));
            } else {
                c.values.insert(v);
                c.standard.push_back(t);
                c.standard_set.insert(t);
            }
        }
        return memo_.emplace(key, std::move(c)).first->second;
    }

    std::size_t hf(Bidegree d) { return d.nonnegative() ? at(d).standard.size() : 0; }

    /// Minimal generators of I_X of bidegree d.
    const std::vector<BiPoly>& minimal_generators(Bidegree d) {
        at(d);
        auto& c = memo_.at({d.i, d.j});
        if (c.minimal) return *c.minimal;
        std::vector<BiPoly> chosen;
        if (!c.groebner.empty()) {
            IncrementalSpan classes = boundaries(d);
            const std::size_t boundary_rank = classes.rank();
            for (const auto& g : c.groebner)
                if (classes.insert(koszul_class(g))) chosen.push_back(g);
            const std::size_t expected = koszul_mu(d, boundary_rank);
            if (chosen.size() != expected)
                throw InternalError("minimal generator count " + std::to_string(chosen.size()) +
                                    " differs from Koszul count " + std::to_string(expected) + " at " + to_string(d));
        }
        c.minimal = std::move(chosen);
        return *c.minimal;
    }

    /// Number of minimal generators at d from Hilbert function values and boundary rank alone.
    std::size_t koszul_mu(Bidegree d) {
        if (d.i == 0 && d.j == 0) return 0;
        return koszul_mu(d, boundaries(d).rank());
    }

private:
    std::vector<std::pair<Monomial, Bidegree>> predecessors(Bidegree d) const {
        std::vector<std::pair<Monomial, Bidegree>> out;
        if (d.i > 0)
            for (int k = 0; k <= m_; ++k) out.push_back({Monomial::var_x(m_, n_, k), {d.i - 1, d.j}});
        if (d.j > 0)
            for (int k = 0; k <= n_; ++k) out.push_back({Monomial::var_y(m_, n_, k), {d.i, d.j - 1}});
        return out;
    }

    bool all_divisors_standard(const Monomial& t) const {
        const Bidegree d = t.degree();
        for (std::size_t k = 0; k < t.x.size(); ++k) {
            if (!t.x[k]) continue;
            Monomial u = t;
            --u.x[k];
            if (!memo_.at({d.i - 1, d.j}).standard_set.count(u)) return false;
        }
        for (std::size_t k = 0; k < t.y.size(); ++k) {
            if (!t.y[k]) continue;
            Monomial u = t;
            --u.y[k];
            if (!memo_.at({d.i, d.j - 1}).standard_set.count(u)) return false;
        }
        return true;
    }

    std::size_t variable_count() const { return static_cast<std::size_t>(m_ + n_ + 2); }
    Bidegree variable_degree(std::size_t v) const {
        return v <= static_cast<std::size_t>(m_) ? Bidegree{1, 0} : Bidegree{0, 1};
    }
    const std::vector<Rational>& variable_values(std::size_t v) {
        if (var_values_.empty()) {
            for (int k = 0; k <= m_; ++k) {
                std::vector<Rational> w(s_);
                for (std::size_t p = 0; p < s_; ++p) w[p] = X_[p].a[k];
                var_values_.push_back(std::move(w));
            }
            for (int k = 0; k <= n_; ++k) {
                std::vector<Rational> w(s_);
                for (std::size_t p = 0; p < s_; ++p) w[p] = X_[p].b[k];
                var_values_.push_back(std::move(w));
            }
        }
        return var_values_[v];
    }

    // image of the second Koszul differential in (+)_v (R_X)_{d-e_v} inside (+)_v Q^s
    IncrementalSpan boundaries(Bidegree d) {
        const std::size_t V = variable_count();
        IncrementalSpan span(V * s_);
        for (std::size_t v = 0; v < V; ++v)
            for (std::size_t w = v + 1; w < V; ++w) {
                const Bidegree e = d - variable_degree(v) - variable_degree(w);
                if (!e.nonnegative()) continue;
                const auto& basis = at(e).values.accepted();
                for (const auto& u : basis) {
                    std::vector<Rational> row(V * s_);
                    const auto& wv = variable_values(w);
                    const auto& vv = variable_values(v);
                    for (std::size_t p = 0; p < s_; ++p) {
                        row[v * s_ + p] = u[p] * wv[p];
                        row[w * s_ + p] = -(u[p] * vv[p]);
                    }
                    span.insert(row);
                }
            }
        return span;
    }

    std::size_t koszul_mu(Bidegree d, std::size_t boundary_rank) {
        long total = 0;
        for (std::size_t v = 0; v < variable_count(); ++v)
            total += static_cast<long>(hf(d - variable_degree(v)));
        total -= static_cast<long>(hf(d));
        total -= static_cast<long>(boundary_rank);
        if (total < 0) throw InternalError("negative Koszul homology dimension at " + to_string(d));
        return static_cast<std::size_t>(total);
    }

    // g = sum_v v * f_v with each term assigned to its first variable; returns (f_v(X))_v
    std::vector<Rational> koszul_class(const BiPoly& g) {
        const std::size_t V = variable_count();
        std::vector<Rational> out(V * s_);
        for (const auto& [mon, c] : g.terms()) {
            std::size_t v = 0;
            Monomial q = mon;
            bool found = false;
            for (std::size_t k = 0; k < q.x.size() && !found; ++k)
                if (q.x[k]) {
                    --q.x[k];
                    v = k;
                    found = true;
                }
            for (std::size_t k = 0; k < q.y.size() && !found; ++k)
                if (q.y[k]) {
                    --q.y[k];
                    v = static_cast<std::size_t>(m_ + 1) + k;
                    found = true;
                }
            if (!found) throw InternalError("constant term in an element of the vanishing ideal");
            for (std::size_t p = 0; p < s_; ++p) out[v * s_ + p] += c * BiPoly::eval_monomial(q, X_[p].a, X_[p].b);
        }
        return out;
    }

    PointSet X_;
    int m_, n_;
    std::size_t s_;
    std::map<std::pair<int, int>, Component> memo_;
    std::vector<std::vector<Rational>> var_values_;
};

struct VanishingIdealOptions {
    int max_enlargements = 32;
};

namespace detail {
inline std::vector<Bidegree> box_degrees(Bidegree box) {
    std::vector<Bidegree> out;
    for (int i = 0; i <= box.i; ++i)
        for (int j = 0; j <= box.j; ++j) out.push_back({i, j});
    std::sort(out.begin(), out.end());
    return out;
}
}  // namespace detail

/// Minimal bihomogeneous generators of I_X, ordered by bidegree (i+j, i) and then
/// by leading monomial. Generators are searched on the box (s1, s2); the box is
/// enlarged until no generator appears in the frame up to box + (1,1).
inline SpanSet vanishing_ideal_min_gens(const PointSet& X, VanishingIdealOptions opt = {}) {
    PointIdeal ideal(X);
    Bidegree box{static_cast<int>(X.s1()), static_cast<int>(X.s2())};
    for (int round = 0;; ++round) {
        if (round > opt.max_enlargements)
            throw InternalError("generator search did not stabilize after " + std::to_string(opt.max_enlargements) +
                                " box enlargements");
        const Bidegree outer{box.i + 1, box.j + 1};
        Bidegree grown = box;
        for (const auto& d : detail::box_degrees(outer)) {
            if (preceq(d, box)) continue;
            if (!ideal.minimal_generators(d).empty()) grown = {std::max(grown.i, d.i), std::max(grown.j, d.j)};
        }
        if (grown == box) break;
        box = grown;
    }
    SpanSet out;
    out.m = X.m();
    out.n = X.n();
    out.kind = SpanKind::ideal_in_S;
    for (const auto& d : detail::box_degrees(box))
        for (const auto& g : ideal.minimal_generators(d)) out.generators.push_back({g, d});
    return out;
}

/// Minimal generators of the ideal of points in one projective space; n = 0 in the result.
struct ProjIdeal {
    int dim = 0;
    std::vector<BiPoly> generators;  // polynomials in X_0..X_dim
    std::vector<int> degrees;
};

inline ProjIdeal proj_vanishing_ideal(const ProjPoints& q) {
    const SpanSet J = vanishing_ideal_min_gens(as_first_factor(q));
    ProjIdeal out;
    out.dim = q.dim;
    for (const auto& g : J.generators) {
        if (g.degree.j != 0) throw InternalError("single-factor ideal has a generator involving Y");
        out.generators.push_back(g.poly);
        out.degrees.push_back(g.degree.i);
    }
    return out;
}

}  // namespace bigraded
