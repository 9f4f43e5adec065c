#include <gtest/gtest.h>

#include "symtrans/symplectic.hpp"

using namespace symtrans;

constexpr std::size_t kTrials = 500;

TEST(Darboux, GramMatrix) {
  const SymplecticSpace sp = SymplecticSpace::darboux(2);
  EXPECT_EQ(sp.dim(), 4u);
  EXPECT_EQ(omega_eval(sp, unit_vector<Scalar>(4, 0), unit_vector<Scalar>(4, 2)), 1);
  EXPECT_EQ(omega_eval(sp, unit_vector<Scalar>(4, 2), unit_vector<Scalar>(4, 0)), -1);
  EXPECT_EQ(omega_eval(sp, unit_vector<Scalar>(4, 0), unit_vector<Scalar>(4, 1)), 0);
  EXPECT_EQ(sp.omega() * sp.omega(), -Matrix<Scalar>::identity(4));
}

TEST(Darboux, RaiseInvertsOmega) {
  // omega(raise c, Z) = <c, Z>.
  const SymplecticSpace sp = SymplecticSpace::darboux(3);
  RationalSampler rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto c = rng.vector(6);
    const auto z = rng.vector(6);
    EXPECT_EQ(omega_eval(sp, sp.raise() * c, z), dot(c, z));
  }
}

TEST(Darboux, FromGramValidates) {
  EXPECT_THROW(SymplecticSpace::from_gram(Matrix<Scalar>{{1, 0}, {0, 1}}), InvalidDimension);
  EXPECT_THROW(SymplecticSpace::from_gram(Matrix<Scalar>(2, 2)), InvalidDimension);
  EXPECT_THROW(SymplecticSpace::from_gram(Matrix<Scalar>(3, 3)), InvalidDimension);
}

TEST(Isotropy, StandardSubspaces) {
  const SymplecticSpace sp = SymplecticSpace::darboux(2);
  EXPECT_TRUE(is_lagrangian(sp, standard_isotropic(sp, 2)));
  EXPECT_FALSE(is_lagrangian(sp, standard_isotropic(sp, 1)));
  const Subspace symplectic_pair = Subspace::span(4, {unit_vector<Scalar>(4, 0), unit_vector<Scalar>(4, 2)});
  EXPECT_FALSE(is_isotropic(sp, symplectic_pair));
  EXPECT_THROW(standard_isotropic(sp, 3), InvalidDimension);
  EXPECT_EQ(symplectic_complement(sp, standard_isotropic(sp, 2)), standard_isotropic(sp, 2));
}

TEST(Generators, AreSymplectic) {
  const SymplecticSpace sp = SymplecticSpace::darboux(2);
  const Matrix<Scalar> a{{2, 1}, {0, 3}};
  const Matrix<Scalar> s{{1, Scalar(1, 2)}, {Scalar(1, 2), -1}};
  EXPECT_TRUE(is_symplectic(sp, block_diagonal_generator(a)));
  EXPECT_TRUE(is_symplectic(sp, upper_shear_generator(s)));
  EXPECT_TRUE(is_symplectic(sp, lower_shear_generator(s)));
  EXPECT_TRUE(is_symplectic(sp, darboux_swap_generator(2)));
  EXPECT_FALSE(is_symplectic(sp, Scalar(2) * Matrix<Scalar>::identity(4)));
  EXPECT_THROW(upper_shear_generator(a), InvalidDimension);
}

TEST(SymplecticProperty, RandomMatricesPreserveOmega) {
  RationalSampler rng(11);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const SymplecticSpace sp = SymplecticSpace::darboux(1 + t % 3);
    const auto g = random_symplectic(sp, rng);
    ASSERT_TRUE(is_symplectic(sp, g));
    EXPECT_EQ(g * symplectic_inverse(sp, g), Matrix<Scalar>::identity(sp.dim()));
  }
}

TEST(SymplecticProperty, RandomIsotropicSubspaces) {
  RationalSampler rng(12);
  for (std::size_t t = 0; t < kTrials; ++t) {
    const SymplecticSpace sp = SymplecticSpace::darboux(1 + t % 4);
    const std::size_t k = rng.integer(0, static_cast<std::int64_t>(sp.n()));
    const Subspace w = random_isotropic(sp, k, rng);
    EXPECT_EQ(w.dim(), k);
    EXPECT_TRUE(is_isotropic(sp, w));
    EXPECT_EQ(symplectic_complement(sp, w).dim(), sp.dim() - k);
  }
  const SymplecticSpace sp = SymplecticSpace::darboux(2);
  EXPECT_THROW(random_isotropic(sp, 3, rng), InvalidDimension);
}

TEST(SymplecticProperty, RandomMatricesInANonDarbouxSpace) {
  // omega = [[0, D], [-D, 0]] with D = diag(1, -1).
  Matrix<Scalar> gram(4, 4);
  gram(0, 2) = 1;
  gram(2, 0) = -1;
  gram(1, 3) = -1;
  gram(3, 1) = 1;
  const SymplecticSpace sp = SymplecticSpace::from_gram(gram);
  const Matrix<Scalar> b = darboux_basis(sp);
  EXPECT_EQ(b.transpose() * gram * b, darboux_swap_generator(2));
  RationalSampler rng(13);
  for (int t = 0; t < 100; ++t) {
    EXPECT_TRUE(is_symplectic(sp, random_symplectic(sp, rng)));
    EXPECT_TRUE(is_isotropic(sp, random_isotropic(sp, 2, rng)));
  }
}

TEST(Extension, DualComplementAndExtension) {
  RationalSampler rng(14);
  for (int t = 0; t < 100; ++t) {
    const SymplecticSpace sp = SymplecticSpace::darboux(3);
    const std::size_t k = 1 + t % 3;
    const Subspace w = random_isotropic(sp, k, rng);
    const Matrix<Scalar> dual = isotropic_dual_complement(sp, w.basis());
    EXPECT_EQ(w.basis().transpose() * sp.omega() * dual, Matrix<Scalar>::identity(k));
    EXPECT_TRUE(is_isotropic(sp, Subspace::span(dual)));

    const Matrix<Scalar> h = rng.invertible_matrix(k);
    const Matrix<Scalar> g = extend_to_symplectic(sp, w.basis(), h);
    ASSERT_TRUE(is_symplectic(sp, g));
    // g w_i = sum_k h(k, i) w_k.
    EXPECT_EQ(g * w.basis(), w.basis() * h);
  }
  const SymplecticSpace sp = SymplecticSpace::darboux(1);
  EXPECT_THROW(isotropic_dual_complement(sp, Matrix<Scalar>::identity(2)), NotIsotropic);
}
