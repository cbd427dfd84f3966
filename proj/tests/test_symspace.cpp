#include <gtest/gtest.h>

#include <copos/symspace.hpp>

#include "oracles.hpp"

namespace {

using copos::basis_size;
using copos::lin_op;
using copos::rational;
using Sym = copos::sym_matrix<rational>;
using Op = lin_op<rational>;

rational r(long p, long q = 1) {
    rational x(p, q);
    x.canonicalize();
    return x;
}

Sym rows(std::vector<std::vector<rational>> v) { return Sym::from_rows(v); }

Op swap_congruence() {
    return copos::op_from_basis_images<rational>(2, {Sym::unit(2, 1, 1), Sym::unit(2, 0, 0), Sym::unit(2, 0, 1)});
}

Op scale_e11(const rational& s) {
    return copos::op_from_basis_images<rational>(
        2, {copos::scaled_unit(2, 0, 0, s), Sym::unit(2, 1, 1), Sym::unit(2, 0, 1)});
}

TEST(Basis, OrderIsDiagonalThenLexicographicPairs) {
    EXPECT_EQ(basis_size(3), 6u);
    EXPECT_EQ(copos::basis_position(3, 0, 1), 3u);
    EXPECT_EQ(copos::basis_position(3, 0, 2), 4u);
    EXPECT_EQ(copos::basis_position(3, 2, 1), 5u);
    for (std::size_t n = 1; n <= 7; ++n) {
        for (std::size_t k = 0; k < basis_size(n); ++k) {
            const auto b = copos::basis_index(n, k);
            EXPECT_EQ(copos::basis_position(n, b.i, b.j), k);
        }
    }
    EXPECT_THROW(copos::basis_index(2, 3), copos::dimension_error);
}

TEST(Vectorize, ReadsEntriesUnderBasisConvention) {
    EXPECT_EQ(copos::vectorize(rows({{1, 2}, {2, 3}})), (std::vector<rational>{1, 3, 2}));
    EXPECT_EQ(copos::vectorize(Sym::unit(2, 0, 0)), (std::vector<rational>{1, 0, 0}));
    EXPECT_EQ(copos::vectorize(Sym::unit(3, 0, 2)), (std::vector<rational>{0, 0, 0, 0, 1, 0}));
}

TEST(Vectorize, RoundTripsOnRandomMatrices) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const std::size_t n = 1 + s % 6;
        const Sym a = copos::testing::random_symmetric(n, s, -100, 100, 100);
        ASSERT_EQ(copos::devectorize(n, copos::vectorize(a)), a);
    }
}

TEST(SymMatrix, RejectsAsymmetricInput) {
    EXPECT_THROW(rows({{1, 2}, {3, 1}}), copos::asymmetric_matrix);
    EXPECT_THROW(rows({{1, 2}, {2}}), copos::dimension_error);
    EXPECT_THROW(Sym::from_row_major(2, {1, 2, 2}), copos::dimension_error);
}

TEST(OpFromBasisImages, BuildsOperators) {
    const Op twice = copos::op_from_basis_images<rational>(1, {rows({{2}})});
    EXPECT_EQ(twice(rows({{r(3, 7)}})), rows({{r(6, 7)}}));

    const Op swap = swap_congruence();
    EXPECT_EQ(swap.image(0), Sym::unit(2, 1, 1));
    EXPECT_EQ(swap.image(2), Sym::unit(2, 0, 1));

    const Op degenerate =
        copos::op_from_basis_images<rational>(2, {Sym::unit(2, 0, 0), Sym::unit(2, 0, 0), Sym::unit(2, 0, 1)});
    EXPECT_EQ(degenerate.image(1), Sym::unit(2, 0, 0));
}

TEST(OpFromBasisImages, RejectsWrongCountOrSize) {
    EXPECT_THROW(copos::op_from_basis_images<rational>(2, {Sym::unit(2, 0, 0)}), copos::dimension_error);
    EXPECT_THROW(copos::op_from_basis_images<rational>(2, {Sym::unit(2, 0, 0), Sym::unit(2, 1, 1), Sym::unit(3, 0, 1)}),
                 copos::dimension_error);
}

TEST(Apply, Examples) {
    const Sym a = rows({{1, 2}, {2, 3}});
    EXPECT_EQ(copos::apply(Op::identity(2), a), a);
    EXPECT_EQ(copos::apply(swap_congruence(), a), rows({{3, 2}, {2, 1}}));
    EXPECT_EQ(copos::apply(scale_e11(4), Sym::unit(2, 0, 0)), rows({{4, 0}, {0, 0}}));
    EXPECT_THROW(copos::apply(Op::identity(3), a), copos::dimension_error);
}

TEST(Invert, Examples) {
    EXPECT_EQ(copos::invert(Op::identity(3)), Op::identity(3));

    // diagonal congruence c = (1, 2): e11 -> e11, e22 -> 4 e22, e12 -> 2 e12
    const Op c12 = copos::op_from_basis_images<rational>(
        2, {Sym::unit(2, 0, 0), copos::scaled_unit(2, 1, 1, r(4)), copos::scaled_unit(2, 0, 1, r(2))});
    const Op c1half = copos::op_from_basis_images<rational>(
        2, {Sym::unit(2, 0, 0), copos::scaled_unit(2, 1, 1, r(1, 4)), copos::scaled_unit(2, 0, 1, r(1, 2))});
    EXPECT_EQ(copos::invert(c12), c1half);

    const Op singular =
        copos::op_from_basis_images<rational>(2, {Sym::unit(2, 0, 0), Sym::unit(2, 0, 0), Sym::unit(2, 0, 1)});
    EXPECT_THROW(copos::invert(singular), copos::singular_operator);
}

TEST(Compose, Examples) {
    const Op swap = swap_congruence();
    EXPECT_EQ(copos::compose(Op::identity(2), swap), swap);
    EXPECT_EQ(copos::compose(swap, swap), Op::identity(2));
    EXPECT_EQ(copos::compose(scale_e11(4), scale_e11(r(1, 4))), Op::identity(2));
    EXPECT_THROW(copos::compose(Op::identity(2), Op::identity(3)), copos::dimension_error);
}

Op random_operator(std::size_t n, std::uint64_t seed) {
    const std::size_t big_n = basis_size(n);
    copos::seeded_rng rng(seed);
    copos::dense_matrix<rational> c(big_n, big_n);
    for (std::size_t i = 0; i < big_n; ++i)
        for (std::size_t j = 0; j < big_n; ++j) c(i, j) = rng.fraction(-5, 5, 5);
    return Op(n, std::move(c));
}

TEST(Invert, ComposesToIdentityOnRandomOperators) {
    int tested = 0;
    for (std::uint64_t s = 0; s < 60; ++s) {
        const std::size_t n = 1 + s % 4;
        const Op op = random_operator(n, s);
        Op inv;
        try {
            inv = copos::invert(op);
        } catch (const copos::singular_operator&) {
            continue;
        }
        ++tested;
        EXPECT_EQ(copos::compose(inv, op), Op::identity(n));
        EXPECT_EQ(copos::compose(op, inv), Op::identity(n));
    }
    EXPECT_GT(tested, 50);
}

TEST(Apply, IsLinear) {
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::size_t n = 1 + s % 5;
        const Op op = random_operator(n, 1000 + s);
        const Sym a = copos::testing::random_symmetric(n, 2 * s);
        const Sym b = copos::testing::random_symmetric(n, 2 * s + 1);
        const Sym lhs = op(rational(2) * a - rational(3) * b);
        const Sym rhs = rational(2) * op(a) - rational(3) * op(b);
        ASSERT_EQ(lhs, rhs);
    }
}

TEST(Apply, AgreesWithComposition) {
    for (std::uint64_t s = 0; s < 50; ++s) {
        const std::size_t n = 1 + s % 4;
        const Op f = random_operator(n, 3 * s);
        const Op g = random_operator(n, 3 * s + 1);
        const Sym a = copos::testing::random_symmetric(n, 3 * s + 2);
        ASSERT_EQ(copos::compose(f, g)(a), f(g(a)));
    }
}

TEST(FloatMode, UsesToleranceForEquality) {
    using D = copos::sym_matrix<double>;
    EXPECT_NO_THROW(D::from_rows({{1.0, 0.5}, {0.5 + 1e-12, 2.0}}));
    EXPECT_THROW(D::from_rows({{1.0, 0.5}, {0.6, 2.0}}), copos::asymmetric_matrix);
    const auto op = copos::convert_operator<double>(scale_e11(r(1, 3)));
    const auto inv = copos::invert(op);
    EXPECT_EQ(copos::compose(inv, op), lin_op<double>::identity(2));
}

TEST(Scalar, ParsesRationalText) {
    EXPECT_EQ(copos::parse_rational("3/6"), r(1, 2));
    EXPECT_EQ(copos::parse_rational("-4"), r(-4));
    EXPECT_EQ(copos::parse_rational("0.25"), r(1, 4));
    EXPECT_EQ(copos::parse_rational("-1.5"), r(-3, 2));
    EXPECT_EQ(copos::parse_rational("2/-4"), r(-1, 2));
    EXPECT_THROW(copos::parse_rational("1/0"), copos::parse_error);
    EXPECT_THROW(copos::parse_rational("x"), copos::parse_error);
    EXPECT_THROW(copos::parse_rational("1e3"), copos::parse_error);
    EXPECT_EQ(copos::to_string(r(-6, 4)), "-3/2");
}

TEST(Scalar, ExactSquareRoots) {
    using T = copos::scalar_traits<rational>;
    EXPECT_EQ(*T::sqrt(r(9, 4)), r(3, 2));
    EXPECT_FALSE(T::sqrt(r(2)).has_value());
    EXPECT_FALSE(T::sqrt(r(-1)).has_value());
}

}  // namespace
