#pragma once

#include <cstdint>

#include "symtrans/numeric.hpp"

namespace symtrans {

/// A real symplectic vector space (R^{2n}, omega) given by its Gram matrix.
///
/// The canonical space is darboux(n): omega(e_i, e_{n+i}) = 1, every other
/// pair of basis vectors pairs to 0. Hermitian spaces of indefinite signature
/// build their own Gram matrix (see HermitianSpace) through from_gram.
class SymplecticSpace {
 public:
  static SymplecticSpace darboux(std::size_t n);
  /// Throws InvalidDimension unless gram is antisymmetric, invertible, of even size.
  static SymplecticSpace from_gram(Matrix<Scalar> gram);

  std::size_t n() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  const Matrix<Scalar>& omega() const { return omega_; }
  const Matrix<Scalar>& omega_inverse() const { return omega_inv_; }

  /// The map c -> v with omega(v, Z) = <c, Z> for all Z; this is -omega^{-1}.
  const Matrix<Scalar>& raise() const { return raise_; }

  friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b) { return a.omega_ == b.omega_; }

 private:
  SymplecticSpace() = default;

  std::size_t n_ = 0;
  Matrix<Scalar> omega_;
  Matrix<Scalar> omega_inv_;
  Matrix<Scalar> raise_;
};

/// x^T omega y.
Scalar omega_eval(const SymplecticSpace& sp, const Vector<Scalar>& x, const Vector<Scalar>& y);

bool is_isotropic(const SymplecticSpace& sp, const Subspace& w);
bool is_lagrangian(const SymplecticSpace& sp, const Subspace& w);

/// {x : omega(w, x) = 0 for all w in W}.
Subspace symplectic_complement(const SymplecticSpace& sp, const Subspace& w);

/// g^T omega g == omega.
bool is_symplectic(const SymplecticSpace& sp, const Matrix<Scalar>& g);

/// Inverse of a symplectic matrix, computed as omega^{-1} g^T omega.
Matrix<Scalar> symplectic_inverse(const SymplecticSpace& sp, const Matrix<Scalar>& g);

/// Columns b_1..b_2n with omega(b_i, b_{n+i}) = 1 and all other pairings 0.
Matrix<Scalar> darboux_basis(const SymplecticSpace& sp);

/// span{e_1, ..., e_k}; isotropic for every space built here.
Subspace standard_isotropic(const SymplecticSpace& sp, std::size_t k);

// Elementary generators of Sp(2n) in the Darboux normalization.
Matrix<Scalar> block_diagonal_generator(const Matrix<Scalar>& a);   // diag(A, A^{-T})
Matrix<Scalar> upper_shear_generator(const Matrix<Scalar>& sym);    // [[I, B], [0, I]]
Matrix<Scalar> lower_shear_generator(const Matrix<Scalar>& sym);    // [[I, 0], [C, I]]
Matrix<Scalar> darboux_swap_generator(std::size_t n);               // the Darboux Gram matrix

/// Random symplectic matrix: a product of elementary generators with random
/// rational parameters, conjugated into sp's basis when sp is not Darboux.
Matrix<Scalar> random_symplectic(const SymplecticSpace& sp, RationalSampler& rng);
Matrix<Scalar> random_symplectic(const SymplecticSpace& sp, std::uint64_t seed);

/// g * span{e_1..e_k} for a random symplectic g. Throws InvalidDimension if k > n.
Subspace random_isotropic(const SymplecticSpace& sp, std::size_t k, RationalSampler& rng);
Subspace random_isotropic(const SymplecticSpace& sp, std::size_t k, std::uint64_t seed);

/// Isotropic W' with omega(w_i, w'_j) = delta_ij for the given basis of an isotropic W.
Matrix<Scalar> isotropic_dual_complement(const SymplecticSpace& sp, const Matrix<Scalar>& w_basis);

/// Extension of h in GL(W) to a symplectic map of V preserving W.
///
/// h is given in the basis w_basis: h(w_i) = sum_k h(k, i) w_k. The extension
/// acts by h^{-T} on the dual complement and by the identity on the
/// omega-orthogonal of W + W'.
Matrix<Scalar> extend_to_symplectic(const SymplecticSpace& sp, const Matrix<Scalar>& w_basis,
                                    const Matrix<Scalar>& h);

}  // namespace symtrans
