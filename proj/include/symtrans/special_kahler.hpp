#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symtrans/cubic_form.hpp"
#include "symtrans/polynomial.hpp"

namespace symtrans {

/// The standard pseudo-Hermitian space C^n = R^{2n} of signature (p, q).
///
/// Real coordinates are (x_1..x_n, y_1..y_n) with z_a = x_a + i y_a.
/// J = [[0, -1], [1, 0]], g = diag(eta, eta) with eta = (+1 x p, -1 x q),
/// and omega(X, Y) = g(JX, Y), so the Gram matrix of omega is J^T g.
class HermitianSpace {
 public:
  /// Throws InvalidDimension if p + q == 0.
  HermitianSpace(std::size_t p, std::size_t q);

  std::size_t n() const { return p_ + q_; }
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  std::size_t dim() const { return 2 * n(); }
  /// +1 for the first p complex coordinates, -1 for the rest.
  int sign(std::size_t a) const { return a < p_ ? 1 : -1; }

  const Matrix<Scalar>& j() const { return j_; }
  const Matrix<Scalar>& g() const { return g_; }
  const Matrix<Scalar>& omega() const { return sp_.omega(); }
  const SymplecticSpace& symplectic() const { return sp_; }

  /// dz(X): the complex coordinates of a real vector.
  Vector<Gaussian> complex_coords(const Vector<Scalar>& x) const;
  /// Inverse of complex_coords.
  Vector<Scalar> real_coords(const Vector<Gaussian>& z) const;
  /// The real 2n x 2n matrix of a complex-linear map A + iB: [[A, -B], [B, A]].
  Matrix<Scalar> realify(const Matrix<Gaussian>& m) const;

  /// h(u, v) = sum_a eps_a u_a conj(v_a); g = Re h and omega = -Im h.
  Gaussian hermitian(const Vector<Gaussian>& u, const Vector<Gaussian>& v) const;
  bool is_isotropic(const ComplexSubspace& w) const;
  /// {u : h(u, w) = 0 for all w in W}.
  ComplexSubspace orthogonal(const ComplexSubspace& w) const;
  /// M^* eta M == eta.
  bool is_pseudo_unitary(const Matrix<Gaussian>& m) const;

  /// The J-invariant real subspace underlying a complex one.
  Subspace realify(const ComplexSubspace& w) const;
  /// The complex subspace dz(W) of a J-invariant real subspace.
  /// Throws InvalidDimension if W is not J-invariant.
  ComplexSubspace complexify(const Subspace& w) const;

 private:
  std::size_t p_;
  std::size_t q_;
  Matrix<Scalar> j_;
  Matrix<Scalar> g_;
  SymplecticSpace sp_;
};

/// Largest complex dimension of an isotropic subspace: min(p, q).
std::size_t max_isotropic_dim(const HermitianSpace& space);

/// Dense n x n x n array of Gaussian rationals.
struct ComplexTensor3 {
  std::size_t n = 0;
  std::vector<Gaussian> data;

  explicit ComplexTensor3(std::size_t dim = 0) : n(dim), data(dim * dim * dim) {}
  Gaussian& operator()(std::size_t a, std::size_t b, std::size_t c) { return data[(a * n + b) * n + c]; }
  const Gaussian& operator()(std::size_t a, std::size_t b, std::size_t c) const { return data[(a * n + b) * n + c]; }
  bool is_symmetric() const;
  bool is_zero() const;
};

/// A holomorphic polynomial potential f on a Hermitian space.
struct HoloPotential {
  HermitianSpace space;
  Polynomial poly;

  /// Throws DimensionMismatch unless poly has space.n() variables.
  HoloPotential(HermitianSpace s, Polynomial f);
};

/// The complex Hessian-of-Hessian d^3 f at z, by exact symbolic differentiation.
ComplexTensor3 third_derivative_tensor(const HoloPotential& f, const Vector<Gaussian>& z);

/// The real cubic form sigma(X, Y, Z) = 2 Re T(dz X, dz Y, dz Z), that is
/// d^3 f + its conjugate evaluated on X^{1,0} = (X - iJX)/2.
CubicForm realize_tensor(const HermitianSpace& space, const ComplexTensor3& t);
/// realize_tensor of d^3 f at the real point x.
CubicForm realize_s(const HoloPotential& f, const Vector<Scalar>& x);

/// Complex span of all S_X Y, read off T as span{eps . conj(T(., b, c))}.
ComplexSubspace holomorphic_support(const HermitianSpace& space, const ComplexTensor3& t);

/// Flat special Kahler data (V, J, g, nabla = D + S_f) from a potential.
///
/// Third and fourth derivatives of f are differentiated once, up front.
class SKStructure {
 public:
  explicit SKStructure(HoloPotential f);

  const HermitianSpace& space() const { return f_.space; }
  const HoloPotential& potential() const { return f_; }
  /// deg f <= 3, so S is constant (DS = 0).
  bool constant_cubic() const { return f_.poly.degree() <= 3; }

  ComplexTensor3 third_derivatives(const Vector<Gaussian>& z) const;
  /// S_f at a rational real point.
  CubicForm s_field(const Vector<Scalar>& x) const;
  /// (D_{e_l} sigma)(e_i, e_j, e_k), stored as ds[l] = cubic form in (i, j, k).
  /// Each slot is differentiated separately, so symmetry in l is not built in.
  std::vector<CubicForm> ds_field(const Vector<Scalar>& x) const;

  /// S_v w at a real floating-point point x.
  std::vector<double> apply_double(const std::vector<double>& x, const std::vector<double>& v,
                                   const std::vector<double>& w) const;

 private:
  std::vector<Gaussian> sorted_third_values(const Vector<Gaussian>& z) const;
  std::vector<std::complex<double>> sorted_third_values(const std::vector<std::complex<double>>& z) const;

  HoloPotential f_;
  /// d^3 f / dz_a dz_b dz_c for a <= b <= c, in lexicographic order.
  std::vector<Polynomial> third_;
  /// fourth_[l][t] = d/dz_l of third_[t].
  std::vector<std::vector<Polynomial>> fourth_;
  Matrix<double> raise_double_;
};

struct SKCondition {
  std::string name;
  bool pass = true;
  /// First failing point, with condition-specific basis indices.
  std::optional<Vector<Scalar>> point;
  std::vector<std::size_t> indices;
};

struct SKReport {
  std::size_t points_checked = 0;
  /// In a fixed order: symmetry, commutators, ds_symmetry, anticommutation,
  /// curvature, levi_civita, isotropic_support, support_type, then
  /// constant_cubic when deg f <= 3.
  std::vector<SKCondition> conditions;

  bool pass() const;
  const SKCondition& condition(const std::string& name) const;
};

/// Checks the flat special Kahler conditions at the given rational points:
/// symmetric S, commuting S_X, symmetric DS, S_X J = -J S_X, vanishing
/// curvature R(X, Y) = (D_X S)_Y - (D_Y S)_X + [S_X, S_Y], and
/// J (nabla_X J) = 2 S_X with nabla_X J = [S_X, J].
SKReport check_flat_sk(const SKStructure& s, const std::vector<Vector<Scalar>>& points);
SKReport check_flat_sk(const SKStructure& s, std::size_t samples, RationalSampler& rng);
SKReport check_flat_sk(const SKStructure& s, std::size_t samples, std::uint64_t seed);

struct TrivialFactorSplit {
  /// Flat factor, contained in ker S.
  ComplexSubspace flat;
  /// W + W' for the support W and an isotropic complement W'.
  ComplexSubspace core;
  Subspace flat_real;
  Subspace core_real;
};

/// h-orthogonal splitting V = V0 + V1 with V0 in ker S when the support has
/// real dimension below n, else nothing. Throws NonConstantCubic if deg f > 3
/// and NotIsotropic if the support is not isotropic.
std::optional<TrivialFactorSplit> trivial_factor_split(const SKStructure& s);

/// Isotropic W' with h(w_i, w'_j) = delta_ij for an isotropic basis of W.
Matrix<Gaussian> hermitian_dual_complement(const HermitianSpace& space, const Matrix<Gaussian>& w_basis);

/// Pseudo-unitary map acting by h on W (in the basis w_basis), by (h^*)^{-1}
/// on the dual complement and by the identity on their orthogonal.
Matrix<Gaussian> unitary_extension(const HermitianSpace& space, const Matrix<Gaussian>& w_basis,
                                   const Matrix<Gaussian>& h);

/// Random pseudo-unitary matrix (I + A)(I - A)^{-1} with A = eta K, K skew-Hermitian.
Matrix<Gaussian> random_pseudo_unitary(const HermitianSpace& space, RationalSampler& rng);

/// Random isotropic complex subspace of dimension k. Throws InvalidDimension if k > min(p, q).
ComplexSubspace random_isotropic_complex(const HermitianSpace& space, std::size_t k, RationalSampler& rng);

struct SampledPotential {
  HoloPotential potential;
  /// The isotropic W the pointwise support of d^3 f lies in.
  ComplexSubspace support;
};

/// f = P(l_1, ..., l_k) + (random terms of degree <= 2), where the linear
/// forms l_j are h-dual to a random isotropic W and P has degree in
/// [3, degree]. Pointwise support of d^3 f then lies in W.
/// Throws InvalidDimension if k > min(p, q).
SampledPotential sample_isotropic_potential(const HermitianSpace& space, std::size_t k, unsigned degree,
                                            RationalSampler& rng);

/// Certificate that C_J contains only 0 for a definite signature.
///
/// The linear constraints S_X J = -J S_X cut out a space L of cubic forms.
/// Members of C(sp(V)) have S_X S_Y = 0, so Q(S) = sum_i tr(S_{e_i}^2)
/// vanishes on them; if Q is positive definite on L the only member is 0.
struct RigidityCertificate {
  std::size_t anticommuting_dim = 0;
  bool gram_positive_definite = false;
  std::size_t max_isotropic = 0;
  bool trivial() const { return gram_positive_definite; }
};
RigidityCertificate rigidity_certificate(const HermitianSpace& space);

enum class Connection { Flat, Special };

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> points;
};

struct GeodesicResult {
  Trajectory numeric;
  /// Closed forms exist only for a constant cubic.
  std::optional<Trajectory> closed_form;
  std::optional<Trajectory> conjugated;
  /// max |closed - numeric| over all samples and coordinates.
  std::optional<double> sup_deviation;
};

/// RK4 on x'' + S_{x'} x' = 0 (x'' = 0 for the flat connection) with step dt,
/// plus closed forms when the cubic is constant. Throws InvalidDimension for
/// dt <= 0 or non-finite input.
GeodesicResult geodesic(const SKStructure& s, Connection c, const Vector<Scalar>& p0, const Vector<Scalar>& v0,
                        double t_end, double dt);

/// p0 + t v0 - (t^2 / 2) S_{v0} v0 (just p0 + t v0 for the flat connection).
/// Throws NonConstantCubic.
std::vector<double> closed_form_geodesic(const SKStructure& s, Connection c, const Vector<Scalar>& p0,
                                         const Vector<Scalar>& v0, double t);

/// phi^{-1}(phi(p0) + t dphi_{p0} v0) with phi(x) = x + S_x x / 2, the orbit
/// map that straightens nabla. Throws NonConstantCubic.
std::vector<double> conjugated_geodesic(const SKStructure& s, Connection c, const Vector<Scalar>& p0,
                                        const Vector<Scalar>& v0, double t);

}  // namespace symtrans
