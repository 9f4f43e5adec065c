#include <gtest/gtest.h>

#include "symtrans/numeric.hpp"

using namespace symtrans;

constexpr std::size_t kTrials = 500;

TEST(Scalar, TextRoundTrip) {
  EXPECT_EQ(to_string(parse_scalar("3/6")), "1/2");
  EXPECT_EQ(to_string(Scalar(-4)), "-4");
  EXPECT_EQ(parse_scalar("6/4"), Scalar(3, 2));
  EXPECT_EQ(parse_scalar("-7"), Scalar(-7));
  EXPECT_EQ(parse_scalar("+2/3"), Scalar(2, 3));
}

TEST(Scalar, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "1/", "/2", "a", "1.5", "1/-2", "--1", "1 / 2"})
    EXPECT_THROW(parse_scalar(bad), ParseError) << bad;
}

TEST(Gaussian, FieldOperations) {
  const Gaussian i = Gaussian::imag_unit();
  EXPECT_EQ(i * i, Gaussian(-1));
  const Gaussian a(Scalar(1, 2), Scalar(-3));
  const Gaussian b(Scalar(2), Scalar(5, 7));
  EXPECT_EQ(a * b / b, a);
  EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
  EXPECT_EQ(a.norm(), Scalar(37, 4));
  EXPECT_THROW(a / Gaussian(0), Singular);
  EXPECT_EQ(to_string(Gaussian(Scalar(1), Scalar(-1, 2))), "1-1/2i");
}

TEST(Matrix, DeterminantAndInverse) {
  const Matrix<Scalar> m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  EXPECT_EQ(det(m), 18);
  EXPECT_EQ(m * inverse(m), Matrix<Scalar>::identity(3));
  const Matrix<Scalar> singular{{1, 2}, {2, 4}};
  EXPECT_EQ(det(singular), 0);
  EXPECT_THROW(inverse(singular), Singular);
  EXPECT_THROW(det(Matrix<Scalar>(2, 3)), NonSquare);
}

TEST(Matrix, DeterminantNeedsRowSwap) {
  const Matrix<Scalar> m{{0, 1}, {1, 0}};
  EXPECT_EQ(det(m), -1);
  EXPECT_EQ(det(Matrix<Scalar>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}), -1);
}

TEST(Matrix, KernelAndRank) {
  const Matrix<Scalar> m{{1, 2, 3}, {2, 4, 6}};
  EXPECT_EQ(rank(m), 1u);
  const Matrix<Scalar> k = kernel_basis(m);
  EXPECT_EQ(k.cols(), 2u);
  EXPECT_TRUE((m * k).is_zero());
}

TEST(Matrix, SolveParticular) {
  const Matrix<Scalar> m{{1, 1}, {1, -1}};
  const auto x = solve_particular(m, Vector<Scalar>{Scalar(3), Scalar(1)});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (Vector<Scalar>{Scalar(2), Scalar(1)}));
  EXPECT_FALSE(solve_particular(Matrix<Scalar>{{1, 1}, {1, 1}}, Vector<Scalar>{Scalar(1), Scalar(2)}));
}

TEST(Matrix, ShapeErrors) {
  EXPECT_THROW(Matrix<Scalar>(2, 3) * Matrix<Scalar>(2, 3), DimensionMismatch);
  EXPECT_THROW((Matrix<Scalar>{{1, 2}, {3}}), DimensionMismatch);
  EXPECT_THROW(trace(Matrix<Scalar>(1, 2)), NonSquare);
}

TEST(Subspace, EqualityComparesSpans) {
  const Subspace a = Subspace::span(3, {Vector<Scalar>{1, 0, 0}, Vector<Scalar>{0, 1, 0}});
  const Subspace b = Subspace::span(3, {Vector<Scalar>{1, 1, 0}, Vector<Scalar>{1, -1, 0}, Vector<Scalar>{2, 0, 0}});
  EXPECT_EQ(b.dim(), 2u);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.canonical_basis(), b.canonical_basis());
  EXPECT_TRUE(a.contains(Vector<Scalar>{5, -2, 0}));
  EXPECT_FALSE(a.contains(Vector<Scalar>{0, 0, 1}));
  EXPECT_EQ((a + Subspace::span(3, {Vector<Scalar>{0, 0, 1}})).dim(), 3u);
  EXPECT_EQ(Subspace::zero(3).dim(), 0u);
}

TEST(Subspace, ComplexSpan) {
  const Gaussian i = Gaussian::imag_unit();
  const ComplexSubspace w = ComplexSubspace::span(2, {Vector<Gaussian>{Gaussian(1), i}, Vector<Gaussian>{i, Gaussian(-1)}});
  EXPECT_EQ(w.dim(), 1u);
}

TEST(Sampler, DeterministicAndBounded) {
  RationalSampler a(42), b(42);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const Scalar x = a.scalar();
    EXPECT_EQ(x, b.scalar());
    EXPECT_LE(abs(x.get_num()), 10);
    EXPECT_GE(x.get_den(), 1);
    EXPECT_LE(x.get_den(), 10);
  }
  RationalSampler c(1);
  for (std::size_t t = 0; t < 50; ++t) EXPECT_NE(det(c.invertible_matrix(3)), 0);
}

TEST(NumericProperty, DeterminantIsMultiplicative) {
  RationalSampler rng(7);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto a = rng.matrix(3, 3);
    const auto b = rng.matrix(3, 3);
    EXPECT_EQ(det(a * b), det(a) * det(b));
  }
}

TEST(NumericProperty, RankNullity) {
  RationalSampler rng(8);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const std::size_t rows = 1 + rng.integer(0, 3);
    const std::size_t cols = 1 + rng.integer(0, 4);
    Matrix<Scalar> m = rng.matrix(rows, cols);
    if (rng.coin()) m = m * Matrix<Scalar>::identity(cols);
    if (rows > 1 && rng.coin())
      for (std::size_t c = 0; c < cols; ++c) m(rows - 1, c) = m(0, c) * 2;  // force a dependency
    const Matrix<Scalar> k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.cols(), cols);
    EXPECT_TRUE((m * k).is_zero());
  }
}

TEST(NumericProperty, InverseOfProduct) {
  RationalSampler rng(9);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const auto a = rng.invertible_matrix(3);
    const auto b = rng.invertible_matrix(3);
    EXPECT_EQ(inverse(a * b), inverse(b) * inverse(a));
  }
}

TEST(FloatBarrier, ConvertsExactly) {
  EXPECT_DOUBLE_EQ(to_double(Scalar(1, 4)), 0.25);
  EXPECT_EQ(to_complex(Gaussian(Scalar(1, 2), Scalar(-2))), std::complex<double>(0.5, -2.0));
}
