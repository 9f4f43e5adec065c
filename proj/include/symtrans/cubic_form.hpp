#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "symtrans/symplectic.hpp"

namespace symtrans {

/// Dense d x d x d array, index (i, j, k) at (i * d + j) * d + k.
struct Tensor3 {
  std::size_t d = 0;
  std::vector<Scalar> data;

  explicit Tensor3(std::size_t dim = 0) : d(dim), data(dim * dim * dim, Scalar(0)) {}
  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return data[(i * d + j) * d + k]; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data[(i * d + j) * d + k]; }
  bool is_symmetric() const;
};

/// t'(i, j, k) = sum t(a, b, c) m(a, i) m(b, j) m(c, k), for m of shape t.d x out_dim.
Tensor3 transform(const Tensor3& t, const Matrix<Scalar>& m);

/// A totally symmetric trilinear form sigma on a symplectic space.
///
/// One coefficient is stored per sorted index triple (i <= j <= k), so total
/// symmetry holds by construction. The induced endomorphisms S_X are defined
/// by omega(S_X Y, Z) = sigma(X, Y, Z).
class CubicForm {
 public:
  using Triple = std::array<std::size_t, 3>;

  explicit CubicForm(SymplecticSpace space);

  /// Throws InvalidDimension if t is not totally symmetric or has the wrong size.
  static CubicForm from_tensor(SymplecticSpace space, const Tensor3& t);

  /// sigma(X, Y, Z) = sum c(a, b, c) omega(w_a, X) omega(w_b, Y) omega(w_c, Z).
  ///
  /// This is the element sum c_abc w_a w_b w_c of S^3 W read through omega;
  /// its support lies in W = span(w_basis columns).
  static CubicForm from_support_tensor(SymplecticSpace space, const Matrix<Scalar>& w_basis, const Tensor3& c);

  const SymplecticSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }

  Scalar coefficient(std::size_t i, std::size_t j, std::size_t k) const;
  void set(std::size_t i, std::size_t j, std::size_t k, Scalar value);
  const std::map<Triple, Scalar>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  Tensor3 tensor() const;
  Scalar evaluate(const Vector<Scalar>& x, const Vector<Scalar>& y, const Vector<Scalar>& z) const;

  friend bool operator==(const CubicForm& a, const CubicForm& b) {
    return a.space_ == b.space_ && a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const CubicForm& a, const CubicForm& b) { return !(a == b); }

 private:
  static Triple sorted(std::size_t i, std::size_t j, std::size_t k);

  SymplecticSpace space_;
  std::map<Triple, Scalar> coeffs_;
};

/// The linear map X -> S_X, stored on the basis: mats[i] = S_{e_i}.
struct EndoFamily {
  std::vector<Matrix<Scalar>> mats;

  std::size_t dim() const { return mats.size(); }
  Matrix<Scalar> at(const Vector<Scalar>& x) const;
  /// S_X Y.
  Vector<Scalar> apply(const Vector<Scalar>& x, const Vector<Scalar>& y) const;
};

EndoFamily endo_family(const CubicForm& s);

/// span{S_X Y}.
Subspace support(const CubicForm& s);
Subspace support(const EndoFamily& family);

struct StratumReport {
  Subspace support;
  std::size_t k = 0;
  bool isotropic = false;
  bool commutators_vanish = false;
  bool traces_vanish = false;
  bool in_variety = false;
  /// 2n - k, present only for in-variety forms.
  std::optional<std::size_t> translation_dim;
  /// First basis pair (i, j) with [S_{e_i}, S_{e_j}] != 0.
  std::optional<std::pair<std::size_t, std::size_t>> commutator_witness;
  /// First basis index with tr S_{e_i} != 0.
  std::optional<std::size_t> trace_witness;

  /// Commuting traceless families are exactly those with isotropic support.
  bool criteria_agree() const { return in_variety == isotropic; }
};

/// Membership in the cone C(sp(V)): [S_X, S_Y] = 0 and tr S_X = 0, checked on
/// basis pairs (bilinearity makes that sufficient).
StratumReport in_c_sp(const CubicForm& s);

/// First basis pair (i, j) with S_{e_i} S_{e_j} != 0, if any.
std::optional<std::pair<std::size_t, std::size_t>> product_witness(const EndoFamily& family);

/// First basis index i with S_{e_i} J + J S_{e_i} != 0, if any.
std::optional<std::size_t> anticommutation_witness(const EndoFamily& family, const Matrix<Scalar>& j);

/// Throws IncompatibleJ unless J^2 = -1 and omega(J., J.) = omega.
void require_compatible_j(const SymplecticSpace& sp, const Matrix<Scalar>& j);

/// Membership in C_J(sp(V)): in C(sp(V)) and S_X anticommutes with J.
bool in_c_j(const CubicForm& s, const Matrix<Scalar>& j);

/// (g.S)_X = g S_{g^{-1} X} g^{-1}. Throws NotSymplectic.
CubicForm act(const Matrix<Scalar>& g, const CubicForm& s);

/// Random S in S^3 W with support exactly W, for any subspace W.
/// Throws SamplingExhausted after 32 unlucky draws.
CubicForm sample_supported(const SymplecticSpace& sp, const Subspace& w, RationalSampler& rng);

/// Random element of S^3 W_reg for isotropic W. Throws NotIsotropic.
CubicForm sample_regular(const SymplecticSpace& sp, const Subspace& w, RationalSampler& rng);
CubicForm sample_regular(const SymplecticSpace& sp, const Subspace& w, std::uint64_t seed);

/// Random symmetric k x k x k coefficient tensor.
Tensor3 random_symmetric_tensor(std::size_t k, RationalSampler& rng);

}  // namespace symtrans
