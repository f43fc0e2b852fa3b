#include "support.hpp"

#include <bigraded/bipoly.hpp>

#include <gtest/gtest.h>

using namespace bigraded;
using namespace testing_support;

namespace {

BiPoly X(int m, int n, int k) { return BiPoly::x(m, n, k); }
BiPoly Y(int m, int n, int k) { return BiPoly::y(m, n, k); }

BiPoly random_bihomogeneous(std::mt19937& g, int m, int n, Bidegree d) {
    BiPoly f(m, n);
    for (const auto& mon : monomials_of_degree(m, n, d))
        if (draw(g, 0, 2) != 0) f.add_term(mon, frac(draw(g, -4, 4), draw(g, 1, 3)));
    return f;
}

}  // namespace

TEST(Bidegree, PartialOrderIsComponentwise) {
    EXPECT_TRUE(preceq({1, 2}, {1, 3}));
    EXPECT_TRUE(preceq({1, 2}, {1, 2}));
    EXPECT_FALSE(preceq({2, 0}, {1, 5}));
    EXPECT_FALSE(precneq({1, 2}, {1, 2}));
    EXPECT_TRUE(precneq({0, 2}, {1, 2}));
}

TEST(Bidegree, IterationOrderIsTotalDegreeThenFirstComponent) {
    EXPECT_LT((Bidegree{5, 0}), (Bidegree{0, 6}));
    EXPECT_LT((Bidegree{0, 2}), (Bidegree{1, 1}));
    EXPECT_LT((Bidegree{1, 1}), (Bidegree{2, 0}));
}

TEST(MonomialBasis, DegreeZeroIsTheConstant) {
    const auto b = monomial_basis(2, 2, {0, 0});
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0], BiPoly::constant(2, 2, 1));
}

TEST(MonomialBasis, LinearFormsOfTheFirstFactor) {
    const auto b = monomial_basis(2, 2, {1, 0});
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(b[0], X(2, 2, 0));
    EXPECT_EQ(b[1], X(2, 2, 1));
    EXPECT_EQ(b[2], X(2, 2, 2));
}

TEST(MonomialBasis, MixedDegreeCount) { EXPECT_EQ(monomial_basis(1, 2, {1, 1}).size(), 6u); }

TEST(MonomialBasis, LengthMatchesBinomialProduct) {
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n)
            for (int i = 0; i <= 4; ++i)
                for (int j = 0; j <= 4; ++j) {
                    const auto b = monomial_basis(m, n, {i, j});
                    EXPECT_EQ(b.size(), binom(i + m, m) * binom(j + n, n));
                    std::set<Monomial, MonomialLess> distinct;
                    for (const auto& f : b) {
                        EXPECT_EQ(f.bidegree(), (Bidegree{i, j}));
                        distinct.insert(f.leading_monomial());
                    }
                    EXPECT_EQ(distinct.size(), b.size());
                }
}

TEST(Diff, Examples) {
    const int m = 1, n = 2;
    EXPECT_EQ(diff(X(m, n, 0) * X(m, n, 1), {true, 1}), X(m, n, 0));
    EXPECT_EQ(diff(Y(m, n, 0) * Y(m, n, 0), {true, 1}), BiPoly(m, n));
    const BiPoly f = X(m, n, 0) * X(m, n, 1) - X(m, n, 1) * X(m, n, 1);
    EXPECT_EQ(diff(f, {true, 1}), X(m, n, 0) - Rational(2) * X(m, n, 1));
}

TEST(Diff, LowersTheDegreeInTheRightBlock) {
    std::mt19937 g(21);
    for (int t = 0; t < 40; ++t) {
        const Bidegree d{static_cast<int>(draw(g, 1, 3)), static_cast<int>(draw(g, 1, 3))};
        const BiPoly f = random_bihomogeneous(g, 2, 1, d);
        const BiPoly fx = diff(f, {true, 1}), fy = diff(f, {false, 0});
        if (!fx.is_zero()) EXPECT_EQ(fx.bidegree(), (Bidegree{d.i - 1, d.j}));
        if (!fy.is_zero()) EXPECT_EQ(fy.bidegree(), (Bidegree{d.i, d.j - 1}));
    }
}

TEST(Arithmetic, ProductAndBidegree) {
    const int m = 1, n = 1;
    const BiPoly f = X(m, n, 0) + X(m, n, 1), g = Y(m, n, 0) - Y(m, n, 1);
    const BiPoly h = f * g;
    EXPECT_EQ(h.bidegree(), (Bidegree{1, 1}));
    EXPECT_EQ(h.terms().size(), 4u);
    EXPECT_EQ((f - f).is_zero(), true);
    EXPECT_FALSE((f + g).bidegree().has_value());
    EXPECT_THROW(X(1, 1, 0) + X(2, 1, 0), DimensionMismatch);
}

TEST(PolyDet, OneByOne) {
    const BiPoly f = X(1, 1, 0) * Y(1, 1, 1);
    EXPECT_EQ(poly_det({{f}}, 1, 1), f);
}

TEST(PolyDet, Diagonal) {
    const BiPoly z(1, 1);
    EXPECT_EQ(poly_det({{X(1, 1, 0), z}, {z, Y(1, 1, 0)}}, 1, 1), X(1, 1, 0) * Y(1, 1, 0));
}

TEST(PolyDet, TwoByTwo) {
    const int m = 1, n = 1;
    EXPECT_EQ(poly_det({{X(m, n, 0), X(m, n, 1)}, {Y(m, n, 0), Y(m, n, 1)}}, m, n),
              X(m, n, 0) * Y(m, n, 1) - X(m, n, 1) * Y(m, n, 0));
}

TEST(PolyDet, AgreesWithNumericDeterminantAtRandomPoints) {
    std::mt19937 g(22);
    const int m = 2, n = 1;
    for (int t = 0; t < 15; ++t) {
        std::vector<std::vector<BiPoly>> a(3);
        for (auto& row : a)
            for (int c = 0; c < 3; ++c) {
                const Bidegree d{static_cast<int>(draw(g, 0, 2)), static_cast<int>(draw(g, 0, 1))};
                row.push_back(random_bihomogeneous(g, m, n, d));
            }
        const BiPoly D = poly_det(a, m, n);
        for (int k = 0; k < 10; ++k) {
            const Coords pa = random_coords(g, m, -3, 3), pb = random_coords(g, n, -3, 3);
            QMatrix num(3, 3);
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c) num(r, c) = a[r][c].eval(pa, pb);
            EXPECT_EQ(D.eval(pa, pb), det(num));
            EXPECT_EQ(det(num), det(num.transpose()));
        }
    }
}

TEST(Det, KnownValues) {
    EXPECT_EQ(det(QMatrix::identity(4)), 1);
    EXPECT_EQ(det(QMatrix::from_rows({{0, 1}, {1, 0}})), -1);
    EXPECT_EQ(det(QMatrix::from_rows({{2, 3}, {4, 6}})), 0);
    QMatrix h(2, 2);
    h(0, 0) = 1, h(0, 1) = Rational(1, 2), h(1, 0) = Rational(1, 2), h(1, 1) = Rational(1, 3);
    EXPECT_EQ(det(h), Rational(1, 12));
}

TEST(Eval, Examples) {
    EXPECT_EQ(X(2, 2, 0).eval(C({1, 0, 0}), C({1, 0, 0})), 1);
    EXPECT_EQ((X(2, 2, 1) * Y(2, 2, 2)).eval(C({1, 1, 1}), C({1, 1, 2})), 2);
    const BiPoly f = X(1, 2, 0) * X(1, 2, 1) - X(1, 2, 1) * X(1, 2, 1);
    EXPECT_EQ(f.eval(C({1, 1}), C({3, -1, 7})), 0);
    EXPECT_THROW(f.eval(C({1, 1, 0}), C({1, 0, 0})), DimensionMismatch);
}

TEST(Eval, DependsOnTheRepresentativeByTheExpectedScalar) {
    const BiPoly f = X(1, 1, 0) * X(1, 1, 1) * Y(1, 1, 1);
    // scaling a by 2 multiplies a degree-(2,1) form by 2^2
    EXPECT_EQ(f.eval(C({2, 6}), C({1, 5})), 4 * f.eval(C({1, 3}), C({1, 5})));
}

TEST(BipolyProperties, EulerRelations) {
    std::mt19937 g(23);
    for (int t = 0; t < 60; ++t) {
        const int m = static_cast<int>(draw(g, 1, 3)), n = static_cast<int>(draw(g, 1, 3));
        const Bidegree d{static_cast<int>(draw(g, 0, 3)), static_cast<int>(draw(g, 0, 3))};
        const BiPoly f = random_bihomogeneous(g, m, n, d);
        BiPoly ex(m, n), ey(m, n);
        for (int k = 0; k <= m; ++k) ex += X(m, n, k) * diff(f, {true, k});
        for (int k = 0; k <= n; ++k) ey += Y(m, n, k) * diff(f, {false, k});
        EXPECT_EQ(ex, Rational(d.i) * f);
        EXPECT_EQ(ey, Rational(d.j) * f);
    }
}

TEST(Rendering, CanonicalText) {
    const int m = 1, n = 2;
    EXPECT_EQ(to_string(X(m, n, 0) * X(m, n, 1) - X(m, n, 1) * X(m, n, 1)), "x[0]*x[1] - x[1]^2");
    EXPECT_EQ(to_string(Rational(3, 2) * X(m, n, 0)), "3/2*x[0]");
    EXPECT_EQ(to_string(BiPoly(m, n)), "0");
    EXPECT_EQ(to_string(BiPoly::constant(m, n, -1)), "-1");
    EXPECT_EQ(to_string(Y(m, n, 2) * X(m, n, 1) * Y(m, n, 2)), "x[1]*y[2]^2");
}
