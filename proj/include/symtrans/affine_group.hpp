#pragma once

#include <cstdint>
#include <optional>

#include "symtrans/cubic_form.hpp"

namespace symtrans {

/// The affine map v -> linear v + translation.
struct AffineMap {
  Matrix<Scalar> linear;
  Vector<Scalar> translation;

  static AffineMap identity(std::size_t d) { return {Matrix<Scalar>::identity(d), zero_vector<Scalar>(d)}; }

  Vector<Scalar> operator()(const Vector<Scalar>& v) const { return linear * v + translation; }

  /// (A, t)(B, s) = (AB, As + t).
  friend AffineMap operator*(const AffineMap& a, const AffineMap& b) {
    return {a.linear * b.linear, a.linear * b.translation + a.translation};
  }
  friend bool operator==(const AffineMap& a, const AffineMap& b) {
    return a.linear == b.linear && a.translation == b.translation;
  }
  friend bool operator!=(const AffineMap& a, const AffineMap& b) { return !(a == b); }

  /// g (A, t) g^{-1} for a linear g.
  AffineMap conjugated_by(const Matrix<Scalar>& g, const Matrix<Scalar>& g_inv) const {
    return {g * linear * g_inv, g * translation};
  }
};

/// The Abelian simply transitive group H attached to an in-variety cubic form,
/// charted by its Lie algebra V through X -> exp(rho(X)), rho(X) = (S_X, X).
class GroupChart {
 public:
  /// Throws NotInVariety (with the failing basis pair in the message) when
  /// the cubic form is not in C(sp(V)).
  explicit GroupChart(CubicForm cubic);

  const CubicForm& cubic() const { return cubic_; }
  const EndoFamily& family() const { return family_; }
  std::size_t dim() const { return cubic_.dim(); }

  /// The Lie algebra element rho(X) = (S_X, X).
  AffineMap rho(const Vector<Scalar>& x) const;

  /// exp(rho(x)) = (1 + S_x, x + S_x x / 2); exact since S_x^2 = 0.
  AffineMap exp_element(const Vector<Scalar>& x) const;

  /// exp(rho(x)) applied to the origin: x + S_x x / 2.
  Vector<Scalar> orbit_map(const Vector<Scalar>& x) const;
  /// y - S_y y / 2.
  Vector<Scalar> orbit_map_inverse(const Vector<Scalar>& y) const;

  /// Matrix of X -> X + S_X v, the differential of the orbit map at v.
  Matrix<Scalar> orbit_differential(const Vector<Scalar>& v) const;

  /// Kernel of X -> S_X, of dimension 2n - dim(support).
  Subspace translation_subgroup() const;

 private:
  CubicForm cubic_;
  EndoFamily family_;
};

struct TransitivityReport {
  bool pass = true;
  std::size_t checked = 0;
  /// First sampled point where det(X -> X + S_X v) != 1.
  std::optional<Vector<Scalar>> witness;
  std::optional<Scalar> witness_det;
};

/// Samples v and checks that X -> X + S_X v is unipotent (det 1), which is the
/// simple transitivity of the Lie algebra at v. Works for any cubic form.
TransitivityReport verify_simply_transitive(const CubicForm& s, std::size_t samples, RationalSampler& rng);
TransitivityReport verify_simply_transitive(const CubicForm& s, std::size_t samples, std::uint64_t seed);
/// Same check at explicitly given points.
TransitivityReport verify_simply_transitive_at(const CubicForm& s, const std::vector<Vector<Scalar>>& points);

/// Dimension of so(g)^(1): maps S with S_X Y = S_Y X and every S_X
/// skew-adjoint for the symmetric form `metric`. Zero for every nondegenerate
/// metric, so translations are the only such groups.
std::size_t orthogonal_prolongation_dim(const Matrix<Scalar>& metric);

}  // namespace symtrans
