#include "support.hpp"

#include <bigraded/hilbert.hpp>

#include <gtest/gtest.h>

using namespace bigraded;
using namespace testing_support;

namespace {

using Grid = std::vector<std::vector<std::size_t>>;

/// Regularity index of a projection from the brute-force oracle.
int oracle_regularity(const ProjPoints& q) {
    int d = 0;
    while (oracle_proj_hf(q, d) != q.size()) ++d;
    return d;
}

}  // namespace

TEST(EvaluationMatrix, NinePointsAtOneOne) {
    const QMatrix E = evaluation_matrix(nine_points(), {1, 1});
    EXPECT_EQ(E.rows(), 9u);
    EXPECT_EQ(E.cols(), 9u);
    EXPECT_EQ(rank(E), 8u);
}

TEST(EvaluationMatrix, DegreeZeroIsAllOnes) {
    const PointSet X = six_point_product();
    const QMatrix E = evaluation_matrix(X, {0, 0});
    ASSERT_EQ(E.cols(), 1u);
    ASSERT_EQ(E.rows(), X.size());
    for (std::size_t r = 0; r < E.rows(); ++r) EXPECT_EQ(E(r, 0), 1);
    EXPECT_EQ(rank(E), 1u);
}

TEST(EvaluationMatrix, SinglePointHasRankOne) {
    const PointSet X(2, 1, {P({1, 2, -1}, {3, 1})});
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) EXPECT_EQ(rank(evaluation_matrix(X, {i, j})), 1u);
}

TEST(EvaluationMatrix, DerivativeRowsAreAppendedPerPointAndVariable) {
    const PointSet X = nine_points();
    const QMatrix E = evaluation_matrix(X, {1, 2}, true);
    EXPECT_EQ(E.rows(), X.size() * (1 + 3 + 3));
    EXPECT_EQ(E.cols(), dim_S(2, 2, {1, 2}));
}

TEST(HF, NinePointValues) {
    const PointSet X = nine_points();
    EXPECT_EQ(hf(X, {1, 1}), 8u);
    EXPECT_EQ(hf(X, {0, 2}), 4u);
    EXPECT_EQ(hf(X, {2, 2}), 9u);
    EXPECT_EQ(hf(X, {0, 0}), 1u);
    EXPECT_EQ(hf(X, {-1, 3}), 0u);
}

TEST(HF, SixPointProductAtOneOne) {
    // oracle: product formula HF_{X1}(1) * HF_{X2}(1) = 2 * 3
    EXPECT_EQ(hf(six_point_product(), {1, 1}), 6u);
}

TEST(HF, CoordinateRingImageAgreesWithEvaluationRankAndOracle) {
    for (const auto& X : {nine_points(), six_point_product(), grid24()}) {
        CoordinateRingImage img(X);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j) {
                EXPECT_EQ(img.hf({i, j}), hf(X, {i, j}));
                EXPECT_EQ(img.hf({i, j}), oracle_hf(X, {i, j}));
            }
    }
}

TEST(HFTable, NinePointGolden) {
    const HFTable t = hf_table(nine_points());
    EXPECT_EQ(t.box, (Bidegree{3, 4}));
    const Grid expected{{1, 3, 4, 4, 4}, {3, 8, 9, 9, 9}, {3, 8, 9, 9, 9}, {3, 8, 9, 9, 9}};
    EXPECT_EQ(t.values, expected);
    EXPECT_EQ(t.reg_pair, (Bidegree{1, 2}));
    EXPECT_EQ(t.border.bc, (std::vector<std::size_t>{3, 8, 9}));
    EXPECT_EQ(t.border.br, (std::vector<std::size_t>{4, 9}));
    EXPECT_EQ(to_string(t.border), "((3,8,9),(4,9))");
}

TEST(HFTable, SinglePoint) {
    const HFTable t = hf_table(single_point(2, 2));
    for (const auto& row : t.values)
        for (auto v : row) EXPECT_EQ(v, 1u);
    EXPECT_EQ(t.reg_pair, (Bidegree{0, 0}));
}

TEST(HFTable, TwoByTwoGrid) {
    const HFTable t = hf_table(grid2x2());
    EXPECT_EQ(t.values, (Grid{{1, 2, 2}, {2, 4, 4}, {2, 4, 4}}));
    EXPECT_EQ(t.reg_pair, (Bidegree{1, 1}));
}

TEST(HFTable, CustomBoxAndRendering) {
    const HFTable t = hf_table(nine_points(), Bidegree{1, 2});
    EXPECT_EQ(t.values, (Grid{{1, 3, 4}, {3, 8, 9}}));
    EXPECT_EQ(render_text(t), "box (1,2)\n1 3 4 ...\n3 8 9 ...\nreg_pair (1,2)\nborder ((3,8,9),(4,9))\n");
}

TEST(Projection, Examples) {
    const PointSet X = nine_points();
    const auto h2 = hf_projection(X.x2());
    EXPECT_EQ(h2.regularity, 2);
    EXPECT_EQ(std::vector<std::size_t>(h2.values.begin(), h2.values.begin() + 4),
              (std::vector<std::size_t>{1, 3, 4, 4}));
    const auto one = hf_projection(make_proj_points(3, {C({0, 1, 2, 3})}), 4);
    EXPECT_EQ(one.regularity, 0);
    for (auto v : one.values) EXPECT_EQ(v, 1u);
    const auto h3 = hf_projection(six_point_product().x2());
    EXPECT_EQ(h3.regularity, 1);
    EXPECT_EQ(std::vector<std::size_t>(h3.values.begin(), h3.values.begin() + 3),
              (std::vector<std::size_t>{1, 3, 3}));
}

TEST(DoublePoints, SinglePointInP1xP1) {
    const PointSet X = single_point(1, 1);
    // dim S_{1,1} = 4 minus dim (I_p^2)_{1,1} = 1 (spanned by X1*Y1)
    EXPECT_EQ(hf_double_points(X, {1, 1}, DoublePointMethod::intersection), 3u);
    EXPECT_EQ(hf_double_points(X, {1, 1}, DoublePointMethod::derivative), 3u);
}

TEST(DoublePoints, DegreeZero) {
    for (auto method : {DoublePointMethod::intersection, DoublePointMethod::derivative})
        EXPECT_EQ(hf_double_points(nine_points(), {0, 0}, method), 1u);
}

TEST(DoublePoints, SixPointProductEventuallyCountsLocalMultiplicities) {
    const PointSet X = six_point_product();
    // s * (m + n + 1) = 6 * 4
    EXPECT_EQ(hf_double_points(X, {4, 4}, DoublePointMethod::derivative), 24u);
    EXPECT_EQ(hf_double_points(X, {3, 3}, DoublePointMethod::intersection), 24u);
}

TEST(DoublePoints, MethodsAgreeOnGoldenInputs) {
    for (const auto& X : {nine_points(), six_point_product()})
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; j <= 3; ++j)
                EXPECT_EQ(hf_double_points(X, {i, j}, DoublePointMethod::intersection),
                          hf_double_points(X, {i, j}, DoublePointMethod::derivative))
                    << to_string(Bidegree{i, j});
}

TEST(Omega, SinglePointInP1xP1) {
    const PointSet X = single_point(1, 1);
    EXPECT_EQ(hf_omega(X, {1, 1}, OmegaBase::K), 2u);
    EXPECT_EQ(hf_omega(X, {1, 1}, OmegaBase::Ro, true), 0u);
    EXPECT_EQ(hf_omega(X, {0, 0}, OmegaBase::K), 0u);
}

TEST(Omega, RelativeVersionNeedsACM) {
    EXPECT_THROW(hf_omega(diagonal2(), {1, 1}, OmegaBase::Ro, false), PreconditionError);
}

TEST(Omega, ExactSequenceAndEulerSurjection) {
    const PointSet X = nine_points();
    CoordinateRingImage img(X);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) {
            const Bidegree d{i, j};
            const auto k = hf_omega(X, d, OmegaBase::K), ro = hf_omega(X, d, OmegaBase::Ro, true);
            // 0 -> R dx0 + R dy0 -> Omega/K -> Omega/Ro -> 0
            EXPECT_EQ(k, ro + img.hf({i - 1, j}) + img.hf({i, j - 1}));
            // the Euler map onto the maximal ideal is surjective
            if (i + j > 0) EXPECT_GE(k, img.hf(d));
        }
}

TEST(HilbertProperties, RandomConfigurations) {
    for (const auto& [label, X] : random_configs(200, 41)) {
        SCOPED_TRACE(label);
        const int s1 = static_cast<int>(X.s1()), s2 = static_cast<int>(X.s2());
        const HFTable t = hf_table(X, Bidegree{s1 + 1, s2 + 1});
        const std::size_t s = X.size();
        for (int i = 0; i <= t.box.i; ++i)
            for (int j = 0; j <= t.box.j; ++j) {
                const std::size_t h = t.at(i, j);
                // monotone and bounded
                if (i < t.box.i) EXPECT_LE(h, t.at(i + 1, j));
                if (j < t.box.j) EXPECT_LE(h, t.at(i, j + 1));
                EXPECT_LE(h, s);
                // stabilization
                if (i >= s1 - 1 && j >= s2 - 1) EXPECT_EQ(h, s);
                // once equal, always equal
                if (i + 2 <= t.box.i && h == t.at(i + 1, j)) EXPECT_EQ(h, t.at(i + 2, j));
                if (j + 2 <= t.box.j && h == t.at(i, j + 1)) EXPECT_EQ(h, t.at(i, j + 2));
                // rows and columns freeze beyond s1 - 1, s2 - 1
                if (i >= s1 - 1) EXPECT_EQ(h, t.at(s1 - 1, j));
                if (j >= s2 - 1) EXPECT_EQ(h, t.at(i, s2 - 1));
                // propagation
                if (i + 1 <= t.box.i && j + 1 <= t.box.j) {
                    if (h == t.at(i + 1, j)) EXPECT_EQ(t.at(i, j + 1), t.at(i + 1, j + 1));
                    if (h == t.at(i, j + 1)) EXPECT_EQ(t.at(i + 1, j), t.at(i + 1, j + 1));
                }
                if (i <= 2 && j <= 2) EXPECT_EQ(h, oracle_hf(X, {i, j}));
            }
        // regularity pair from the projections, and from the table itself
        const int r1 = oracle_regularity(X.x1()), r2 = oracle_regularity(X.x2());
        EXPECT_EQ(t.reg_pair, (Bidegree{r1, r2}));
        int nu = 0;
        while (t.at(nu, 0) != t.at(nu + 1, 0)) ++nu;
        int rho = 0;
        while (t.at(0, rho) != t.at(0, rho + 1)) ++rho;
        EXPECT_EQ(nu, r1);
        EXPECT_EQ(rho, r2);
        ASSERT_EQ(t.border.bc.size(), static_cast<std::size_t>(r2 + 1));
        ASSERT_EQ(t.border.br.size(), static_cast<std::size_t>(r1 + 1));
        for (int j = 0; j <= r2; ++j) EXPECT_EQ(t.border.bc[j], t.at(r1, j));
        for (int i = 0; i <= r1; ++i) EXPECT_EQ(t.border.br[i], t.at(i, r2));

        if (is_product(X)) {
            const auto h1 = hf_projection(X.x1(), t.box.i), h2 = hf_projection(X.x2(), t.box.j);
            for (int i = 0; i <= t.box.i; ++i)
                for (int j = 0; j <= t.box.j; ++j) EXPECT_EQ(t.at(i, j), h1.values[i] * h2.values[j]);
            for (int j = 0; j <= r2; ++j) EXPECT_EQ(t.border.bc[j], X.s1() * h2.values[j]);
            for (int i = 0; i <= r1; ++i) EXPECT_EQ(t.border.br[i], X.s2() * h1.values[i]);
            EXPECT_EQ(t.border.bc.back(), s);
        }
    }
}
