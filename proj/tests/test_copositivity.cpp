#include <gtest/gtest.h>

#include <copos/copositivity.hpp>

#include "oracles.hpp"

namespace {

using copos::rational;
using Sym = copos::sym_matrix<rational>;
using Vec = std::vector<rational>;
using namespace copos::testing;

rational r(long p, long q = 1) {
    rational x(p, q);
    x.canonicalize();
    return x;
}

Sym rows(std::vector<std::vector<rational>> v) { return Sym::from_rows(v); }

template <typename Alt>
bool is(const copos::cone_status<rational>& s) {
    return std::holds_alternative<Alt>(s);
}

using Outside = copos::cone_outside<rational>;
using Boundary = copos::cone_boundary<rational>;
using Interior = copos::cone_interior<rational>;

// ---------------------------------------------------------------- oracles

TEST(Oracle, GridFindsMinusOneForTheIndefinitePair) {
    const auto g = grid_minimum(rows({{1, -3}, {-3, 1}}), 1000);
    EXPECT_EQ(g.value, r(-1));
    EXPECT_EQ(g.point, (Vec{r(1, 2), r(1, 2)}));
}

TEST(Oracle, GridSeesNoNegativeValueOfTheHornForm) {
    const auto g = grid_minimum(copos::horn_matrix(), 20);
    EXPECT_EQ(g.value, r(0));
}

// ---------------------------------------------------------------- simplex_minimize

TEST(SimplexMinimize, Identity) {
    const auto m = copos::simplex_minimize(Sym::identity(2));
    EXPECT_EQ(m.value, r(1, 2));
    EXPECT_EQ(m.minimizer, (Vec{r(1, 2), r(1, 2)}));
    EXPECT_EQ(m.support, (copos::support_set{0, 1}));
    EXPECT_EQ(m.multiplier, r(-1));
}

TEST(SimplexMinimize, SquareOfDifference) {
    const auto m = copos::simplex_minimize(rows({{1, -1}, {-1, 1}}));
    EXPECT_EQ(m.value, r(0));
    EXPECT_EQ(m.minimizer, (Vec{r(1, 2), r(1, 2)}));
}

TEST(SimplexMinimize, IndefinitePairMatchesGrid) {
    const Sym a = rows({{1, -3}, {-3, 1}});
    const auto m = copos::simplex_minimize(a);
    EXPECT_EQ(m.value, grid_minimum(a, 1000).value);
    EXPECT_EQ(m.value, r(-1));
    EXPECT_EQ(m.minimizer, (Vec{r(1, 2), r(1, 2)}));
}

TEST(SimplexMinimize, HornMatrixHasMinimumZero) {
    const auto m = copos::simplex_minimize(copos::horn_matrix());
    EXPECT_EQ(m.value, r(0));
    EXPECT_EQ(m.value, grid_minimum(copos::horn_matrix(), 20).value);
    EXPECT_EQ(m.support, (copos::support_set{0, 1}));
    EXPECT_EQ(m.minimizer, (Vec{r(1, 2), r(1, 2), 0, 0, 0}));
}

TEST(SimplexMinimize, TiesGoToSmallestSupportThenMinimizer) {
    const auto zero = copos::simplex_minimize(Sym(3));
    EXPECT_EQ(zero.support, (copos::support_set{0}));
    EXPECT_EQ(zero.minimizer, (Vec{1, 0, 0}));

    // value 1 at every vertex and on the whole simplex
    const auto ones = copos::simplex_minimize(Sym::ones(3));
    EXPECT_EQ(ones.value, r(1));
    EXPECT_EQ(ones.support, (copos::support_set{0}));

    // minimum 0 attained at e_2 and e_3 only
    const auto diag = copos::simplex_minimize(rows({{1, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    EXPECT_EQ(diag.support, (copos::support_set{1}));
}

TEST(SimplexMinimize, EnforcesDimensionCap) {
    EXPECT_THROW(copos::simplex_minimize(Sym::identity(4), 3), copos::dimension_error);
    EXPECT_THROW(copos::simplex_minimize(Sym::identity(13)), copos::dimension_error);
    EXPECT_THROW(copos::simplex_minimize(Sym(0)), copos::dimension_error);
}

// ---------------------------------------------------------------- is_copositive / boundary_status

TEST(IsCopositive, Examples) {
    for (std::size_t n = 1; n <= 4; ++n) EXPECT_TRUE(copos::is_copositive(Sym::unit(n, 0, 0)).copositive);
    const auto bad = copos::is_copositive(rows({{1, -3}, {-3, 1}}));
    EXPECT_FALSE(bad.copositive);
    ASSERT_TRUE(bad.witness.has_value());
    EXPECT_EQ(*bad.witness, (Vec{r(1, 2), r(1, 2)}));
    EXPECT_TRUE(copos::is_copositive(Sym::ones(3)).copositive);
}

TEST(BoundaryStatus, Examples) {
    EXPECT_TRUE(is<Interior>(copos::boundary_status(Sym::identity(3))));
    EXPECT_EQ(std::get<Interior>(copos::boundary_status(Sym::identity(3))).value, r(1, 3));

    const auto e11 = copos::boundary_status(Sym::unit(2, 0, 0));
    ASSERT_TRUE(is<Boundary>(e11));
    EXPECT_EQ(std::get<Boundary>(e11).ray.support, (copos::support_set{1}));
    EXPECT_EQ(std::get<Boundary>(e11).ray.representative, (Vec{0, 1}));

    const auto out = copos::boundary_status(rows({{1, -3}, {-3, 1}}));
    ASSERT_TRUE(is<Outside>(out));
    EXPECT_EQ(std::get<Outside>(out).witness, (Vec{r(1, 2), r(1, 2)}));
    EXPECT_EQ(copos::status_name(out), "outside");
}

// ---------------------------------------------------------------- zero_support_rays

TEST(ZeroSupportRays, Examples) {
    const auto at = copos::zero_support_rays(rows({{0, 1}, {1, 1}}));
    ASSERT_EQ(at.size(), 1u);
    EXPECT_EQ(at[0].support, (copos::support_set{0}));
    EXPECT_EQ(at[0].representative, (Vec{1, 0}));

    const auto diff = copos::zero_support_rays(rows({{1, -1}, {-1, 1}}));
    ASSERT_EQ(diff.size(), 1u);
    EXPECT_EQ(diff[0].support, (copos::support_set{0, 1}));
    EXPECT_EQ(diff[0].representative, (Vec{r(1, 2), r(1, 2)}));

    EXPECT_TRUE(copos::zero_support_rays(Sym::identity(2)).empty());
    EXPECT_THROW(copos::zero_support_rays(rows({{1, -3}, {-3, 1}})), copos::not_copositive);
}

TEST(ZeroSupportRays, SortedAndIncludesZeroDiagonalVertices) {
    const auto horn = copos::zero_support_rays(copos::horn_matrix());
    ASSERT_FALSE(horn.empty());
    for (std::size_t k = 1; k < horn.size(); ++k) EXPECT_LT(horn[k - 1].support, horn[k].support);
    for (const auto& ray : horn) {
        EXPECT_TRUE(on_simplex(ray.representative));
        EXPECT_EQ(form_value(copos::horn_matrix(), ray.representative), 0);
    }

    const auto zero = copos::zero_support_rays(Sym(2));
    ASSERT_EQ(zero.size(), 2u);  // e_1, e_2; the full support system is singular
    EXPECT_EQ(zero[0].support, (copos::support_set{0}));
    EXPECT_EQ(zero[1].support, (copos::support_set{1}));
}

// ---------------------------------------------------------------- kernel_residual

TEST(KernelResidual, Examples) {
    EXPECT_EQ(copos::kernel_residual(rows({{1, -1}, {-1, 1}}), Vec{r(1, 2), r(1, 2)}), (Vec{0, 0}));

    // a = q^T q with q = [1, -2, 1] orthogonal to xi = (1, 1, 1)
    const Sym a = copos::gram_matrix({{1, -2, 1}}, 3);
    EXPECT_EQ(a, rows({{1, -2, 1}, {-2, 4, -2}, {1, -2, 1}}));
    EXPECT_EQ(form_value(a, Vec{1, 1, 1}), 0);
    EXPECT_EQ(copos::kernel_residual(a, Vec{1, 1, 1}), (Vec{0, 0, 0}));
}

TEST(KernelResidual, NamesTheViolatedPrecondition) {
    try {
        copos::kernel_residual(Sym::unit(2, 0, 0), Vec{1, 1});
        FAIL() << "expected precondition_violated";
    } catch (const copos::precondition_violated& e) {
        EXPECT_NE(std::string(e.what()).find("xi^T a xi"), std::string::npos);
    }
    try {
        copos::kernel_residual(rows({{1, -1}, {-1, 1}}), Vec{1, 0});
        FAIL() << "expected precondition_violated";
    } catch (const copos::precondition_violated& e) {
        EXPECT_NE(std::string(e.what()).find("strictly positive"), std::string::npos);
    }
    // xi^T a xi = 0 with xi > 0, but a is not copositive
    try {
        copos::kernel_residual(rows({{0, 1, -1}, {1, 0, 0}, {-1, 0, 0}}), Vec{1, 1, 1});
        FAIL() << "expected precondition_violated";
    } catch (const copos::precondition_violated& e) {
        EXPECT_NE(std::string(e.what()).find("not copositive"), std::string::npos);
    }
}

// ---------------------------------------------------------------- generators

TEST(SampleAt, ShapeAndDeterminism) {
    for (const auto& m : copos::sample_A_t(2, 0, 5, 10)) {
        EXPECT_EQ(m(0, 0), 0);
        EXPECT_GT(m(0, 1), 0);
        EXPECT_GT(m(1, 1), 0);
    }
    for (const auto& m : copos::sample_A_t(1, 0, 5, 3)) EXPECT_EQ(m, Sym(1));
    EXPECT_EQ(copos::sample_A_t(4, 2, 9, 5), copos::sample_A_t(4, 2, 9, 5));
    EXPECT_NE(copos::sample_A_t(4, 2, 9, 5), copos::sample_A_t(4, 2, 10, 5));
    EXPECT_THROW(copos::sample_A_t(3, 3, 0, 1), copos::dimension_error);
}

TEST(SampleAt, EverySampleIsOnTheBoundary) {
    for (std::size_t n = 1; n <= 5; ++n)
        for (std::size_t t = 0; t < n; ++t)
            for (const auto& m : copos::sample_A_t(n, t, 100 * n + t, 5)) {
                ASSERT_TRUE(is<Boundary>(copos::boundary_status(m)));
                ASSERT_FALSE(copos::zero_support_rays(m).empty());
            }
}

TEST(RandomCopositive, CopositiveAndDeterministic) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const std::size_t n = 1 + s % 6;
        const Sym a = copos::random_copositive(n, s);
        ASSERT_TRUE(copos::is_copositive(a).copositive) << copos::format_matrix(a);
        ASSERT_EQ(a, copos::random_copositive(n, s));
    }
    EXPECT_GE(copos::random_copositive(1, 3)(0, 0), 0);
}

TEST(RandomBoundary, ConstructionAndContract) {
    EXPECT_EQ(copos::gram_matrix({{1, -1}}, 2), rows({{1, -1}, {-1, 1}}));
    for (std::uint64_t s = 0; s < 50; ++s) {
        const std::size_t n = 2 + s % 5;
        const auto b = copos::random_boundary(n, s);
        for (const auto& x : b.xi) ASSERT_GT(x, 0);
        ASSERT_EQ(form_value(b.matrix, b.xi), 0);
        ASSERT_TRUE(is<Boundary>(copos::boundary_status(b.matrix)));
        for (const auto& v : copos::kernel_residual(b.matrix, b.xi)) ASSERT_EQ(v, 0);
        ASSERT_EQ(b.matrix, copos::random_boundary(n, s).matrix);
    }
    EXPECT_EQ(copos::random_boundary(1, 4).matrix, Sym(1));
}

// ---------------------------------------------------------------- properties

TEST(Property, MinimumIsBelowRandomSamplesAndAchieved) {
    for (std::uint64_t s = 0; s < 120; ++s) {
        const std::size_t n = 1 + s % 5;
        const Sym a = random_symmetric(n, 7000 + s);
        const auto m = copos::simplex_minimize(a);
        ASSERT_TRUE(on_simplex(m.minimizer));
        ASSERT_EQ(form_value(a, m.minimizer), m.value);
        for (std::size_t i = 0; i < n; ++i) {
            const bool in_support = std::find(m.support.begin(), m.support.end(), i) != m.support.end();
            ASSERT_EQ(sgn(m.minimizer[i]) > 0, in_support);
        }
        ASSERT_LE(m.value, random_point_minimum(a, 2000, s).value) << copos::format_matrix(a);
    }
}

TEST(Property, PositiveScaling) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const std::size_t n = 1 + s % 5;
        const Sym a = random_symmetric(n, 8000 + s);
        const rational lambda = r(1 + static_cast<long>(s % 7), 1 + static_cast<long>(s % 4));
        const auto m = copos::simplex_minimize(a);
        const auto ms = copos::simplex_minimize(lambda * a);
        ASSERT_EQ(ms.value, lambda * m.value);
        ASSERT_EQ(form_value(lambda * a, m.minimizer), ms.value);
        ASSERT_EQ(form_value(a, ms.minimizer), m.value);
    }
}

TEST(Property, SumOfCopositiveIsCopositive) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const std::size_t n = 1 + s % 5;
        const Sym a = copos::random_copositive(n, 2 * s);
        const Sym b = s % 2 ? copos::random_boundary(n, 2 * s + 1).matrix : copos::random_copositive(n, 2 * s + 1);
        ASSERT_TRUE(copos::is_copositive(a + b).copositive);
    }
}

TEST(Property, PermutationEquivariance) {
    copos::seeded_rng rng(17);
    for (std::uint64_t s = 0; s < 80; ++s) {
        const std::size_t n = 2 + s % 4;
        Sym a;
        switch (s % 4) {
            case 0: a = random_symmetric(n, 9000 + s); break;
            case 1: a = copos::random_boundary(n, s).matrix; break;
            case 2: a = copos::sample_A_t(n, s % n, s, 1).front(); break;
            default: a = copos::random_copositive(n, s); break;
        }
        const auto p = permutation_matrix(rng.permutation(n));
        ASSERT_EQ(copos::boundary_status(a).index(), copos::boundary_status(a.congruence(p)).index());
    }
    const auto p = permutation_matrix({3, 0, 4, 1, 2});
    EXPECT_TRUE(is<Boundary>(copos::boundary_status(copos::horn_matrix().congruence(p))));
}

TEST(Property, SingularProneMatricesAgreeWithGrid) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::size_t n = 2 + s % 4;
        const Sym a = random_symmetric(n, 11000 + s, -1, 1, 1);
        const auto m = copos::simplex_minimize(a);
        const auto g = grid_minimum(a, n <= 3 ? 60 : 24);
        ASSERT_LE(m.value, g.value) << copos::format_matrix(a);
        ASSERT_EQ(form_value(a, m.minimizer), m.value);
        ASSERT_TRUE(on_simplex(m.minimizer));
        ASSERT_EQ(copos::is_copositive(a).copositive, sgn(m.value) >= 0);
    }
}

// ---------------------------------------------------------------- float mode

TEST(FloatMode, AgreesWithExactMode) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const std::size_t n = 1 + s % 5;
        const Sym a = random_symmetric(n, 12000 + s);
        const auto exact = copos::simplex_minimize(a);
        const auto approx = copos::simplex_minimize(copos::convert_matrix<double>(a));
        ASSERT_NEAR(approx.value, exact.value.get_d(), 1e-9);
    }
}

TEST(FloatMode, ClassifiesNearZeroAsBoundary) {
    const auto a = copos::sym_matrix<double>::from_rows({{1.0, -1.0}, {-1.0, 1.0 + 1e-12}});
    EXPECT_TRUE(std::holds_alternative<copos::cone_boundary<double>>(copos::boundary_status(a)));
    const auto b = copos::sym_matrix<double>::from_rows({{1.0, -3.0}, {-3.0, 1.0}});
    EXPECT_FALSE(copos::is_copositive(b).copositive);
}

}  // namespace
