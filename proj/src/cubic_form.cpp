#include "symtrans/cubic_form.hpp"

#include <algorithm>

namespace symtrans {

bool Tensor3::is_symmetric() const {
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = j; k < d; ++k) {
        const Scalar& v = (*this)(i, j, k);
        if ((*this)(i, k, j) != v || (*this)(j, i, k) != v || (*this)(j, k, i) != v || (*this)(k, i, j) != v ||
            (*this)(k, j, i) != v)
          return false;
      }
  return true;
}

Tensor3 transform(const Tensor3& t, const Matrix<Scalar>& m) {
  const std::size_t k = t.d;
  const std::size_t d = m.cols();
  if (m.rows() != k) throw DimensionMismatch("tensor transform: matrix has wrong height");
  // Contract one index at a time; buffers are indexed [first][second][third].
  std::vector<Scalar> t1(k * k * d, Scalar(0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c) {
        const Scalar& v = t(a, b, c);
        if (is_zero(v)) continue;
        for (std::size_t z = 0; z < d; ++z)
          if (!is_zero(m(c, z))) t1[(a * k + b) * d + z] += v * m(c, z);
      }
  std::vector<Scalar> t2(k * d * d, Scalar(0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t z = 0; z < d; ++z) {
        const Scalar& v = t1[(a * k + b) * d + z];
        if (is_zero(v)) continue;
        for (std::size_t y = 0; y < d; ++y)
          if (!is_zero(m(b, y))) t2[(a * d + y) * d + z] += v * m(b, y);
      }
  Tensor3 out(d);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z) {
        const Scalar& v = t2[(a * d + y) * d + z];
        if (is_zero(v)) continue;
        for (std::size_t x = 0; x < d; ++x)
          if (!is_zero(m(a, x))) out(x, y, z) += v * m(a, x);
      }
  return out;
}

CubicForm::CubicForm(SymplecticSpace space) : space_(std::move(space)) {}

CubicForm::Triple CubicForm::sorted(std::size_t i, std::size_t j, std::size_t k) {
  Triple t{i, j, k};
  std::sort(t.begin(), t.end());
  return t;
}

CubicForm CubicForm::from_tensor(SymplecticSpace space, const Tensor3& t) {
  if (t.d != space.dim()) throw InvalidDimension("cubic tensor has the wrong dimension");
  if (!t.is_symmetric()) throw InvalidDimension("cubic tensor is not totally symmetric");
  CubicForm s(std::move(space));
  for (std::size_t i = 0; i < t.d; ++i)
    for (std::size_t j = i; j < t.d; ++j)
      for (std::size_t k = j; k < t.d; ++k)
        if (!symtrans::is_zero(t(i, j, k))) s.coeffs_.emplace(Triple{i, j, k}, t(i, j, k));
  return s;
}

CubicForm CubicForm::from_support_tensor(SymplecticSpace space, const Matrix<Scalar>& w_basis, const Tensor3& c) {
  if (w_basis.rows() != space.dim() || w_basis.cols() != c.d)
    throw DimensionMismatch("support tensor: basis and coefficient tensor disagree");
  const Matrix<Scalar> forms = w_basis.transpose() * space.omega();  // row a: omega(w_a, .)
  Tensor3 t = transform(c, forms);
  return from_tensor(std::move(space), t);
}

Scalar CubicForm::coefficient(std::size_t i, std::size_t j, std::size_t k) const {
  auto it = coeffs_.find(sorted(i, j, k));
  return it == coeffs_.end() ? Scalar(0) : it->second;
}

void CubicForm::set(std::size_t i, std::size_t j, std::size_t k, Scalar value) {
  if (i >= dim() || j >= dim() || k >= dim()) throw DimensionMismatch("cubic form index out of range");
  const Triple t = sorted(i, j, k);
  if (symtrans::is_zero(value))
    coeffs_.erase(t);
  else
    coeffs_[t] = std::move(value);
}

Tensor3 CubicForm::tensor() const {
  Tensor3 t(dim());
  for (const auto& [idx, v] : coeffs_) {
    const auto [i, j, k] = idx;
    t(i, j, k) = v;
    t(i, k, j) = v;
    t(j, i, k) = v;
    t(j, k, i) = v;
    t(k, i, j) = v;
    t(k, j, i) = v;
  }
  return t;
}

Scalar CubicForm::evaluate(const Vector<Scalar>& x, const Vector<Scalar>& y, const Vector<Scalar>& z) const {
  if (x.size() != dim() || y.size() != dim() || z.size() != dim())
    throw DimensionMismatch("cubic form evaluated on vectors of the wrong dimension");
  const Tensor3 t = tensor();
  Scalar s(0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (symtrans::is_zero(x[i])) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (symtrans::is_zero(y[j])) continue;
      for (std::size_t k = 0; k < dim(); ++k) s += t(i, j, k) * x[i] * y[j] * z[k];
    }
  }
  return s;
}

Matrix<Scalar> EndoFamily::at(const Vector<Scalar>& x) const {
  if (x.size() != dim()) throw DimensionMismatch("S_X: vector has the wrong dimension");
  Matrix<Scalar> m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (!is_zero(x[i])) m += x[i] * mats[i];
  return m;
}

Vector<Scalar> EndoFamily::apply(const Vector<Scalar>& x, const Vector<Scalar>& y) const { return at(x) * y; }

EndoFamily endo_family(const CubicForm& s) {
  // S_{e_i} e_j = raise * sigma(e_i, e_j, .)
  const std::size_t d = s.dim();
  const Tensor3 t = s.tensor();
  const Matrix<Scalar>& raise = s.space().raise();
  EndoFamily f;
  f.mats.assign(d, Matrix<Scalar>(d, d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar& v = t(i, j, k);
        if (is_zero(v)) continue;
        for (std::size_t r = 0; r < d; ++r)
          if (!is_zero(raise(r, k))) f.mats[i](r, j) += raise(r, k) * v;
      }
  return f;
}

Subspace support(const EndoFamily& family) {
  const std::size_t d = family.dim();
  Matrix<Scalar> all(d, 0);
  for (const auto& m : family.mats) all = all.hconcat(m);
  return Subspace::span(all);
}

Subspace support(const CubicForm& s) { return support(endo_family(s)); }

StratumReport in_c_sp(const CubicForm& s) {
  const EndoFamily family = endo_family(s);
  const std::size_t d = family.dim();
  StratumReport r;
  r.support = support(family);
  r.k = r.support.dim();
  r.isotropic = is_isotropic(s.space(), r.support);
  for (std::size_t i = 0; i < d && !r.trace_witness; ++i)
    if (!is_zero(trace(family.mats[i]))) r.trace_witness = i;
  for (std::size_t i = 0; i < d && !r.commutator_witness; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (!commutator(family.mats[i], family.mats[j]).is_zero()) {
        r.commutator_witness = {i, j};
        break;
      }
  r.traces_vanish = !r.trace_witness;
  r.commutators_vanish = !r.commutator_witness;
  r.in_variety = r.traces_vanish && r.commutators_vanish;
  if (r.in_variety) r.translation_dim = d - r.k;
  return r;
}

std::optional<std::pair<std::size_t, std::size_t>> product_witness(const EndoFamily& family) {
  for (std::size_t i = 0; i < family.dim(); ++i)
    for (std::size_t j = 0; j < family.dim(); ++j)
      if (!(family.mats[i] * family.mats[j]).is_zero()) return std::make_pair(i, j);
  return std::nullopt;
}

std::optional<std::size_t> anticommutation_witness(const EndoFamily& family, const Matrix<Scalar>& j) {
  for (std::size_t i = 0; i < family.dim(); ++i)
    if (!(family.mats[i] * j + j * family.mats[i]).is_zero()) return i;
  return std::nullopt;
}

void require_compatible_j(const SymplecticSpace& sp, const Matrix<Scalar>& j) {
  const std::size_t d = sp.dim();
  if (j.rows() != d || j.cols() != d) throw IncompatibleJ("J has the wrong size");
  if (j * j != -Matrix<Scalar>::identity(d)) throw IncompatibleJ("J^2 != -1");
  if (!is_symplectic(sp, j)) throw IncompatibleJ("J does not preserve omega");
}

bool in_c_j(const CubicForm& s, const Matrix<Scalar>& j) {
  require_compatible_j(s.space(), j);
  const EndoFamily family = endo_family(s);
  if (anticommutation_witness(family, j)) return false;
  const StratumReport r = in_c_sp(s);
  if (!r.in_variety) return false;
  if (!r.isotropic) throw std::logic_error("C_J member with non-isotropic support");
  if (!r.support.contains(j * r.support)) throw std::logic_error("C_J member with non-J-invariant support");
  return true;
}

CubicForm act(const Matrix<Scalar>& g, const CubicForm& s) {
  if (!is_symplectic(s.space(), g)) throw NotSymplectic("act: g is not symplectic");
  const Matrix<Scalar> g_inv = symplectic_inverse(s.space(), g);
  return CubicForm::from_tensor(s.space(), transform(s.tensor(), g_inv));
}

Tensor3 random_symmetric_tensor(std::size_t k, RationalSampler& rng) {
  Tensor3 c(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b)
      for (std::size_t e = b; e < k; ++e) {
        const Scalar v = rng.scalar();
        c(a, b, e) = v;
        c(a, e, b) = v;
        c(b, a, e) = v;
        c(b, e, a) = v;
        c(e, a, b) = v;
        c(e, b, a) = v;
      }
  return c;
}

CubicForm sample_supported(const SymplecticSpace& sp, const Subspace& w, RationalSampler& rng) {
  if (w.ambient_dim() != sp.dim()) throw DimensionMismatch("sample: subspace lives in the wrong space");
  if (w.dim() == 0) return CubicForm(sp);
  constexpr int kMaxAttempts = 32;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    CubicForm s = CubicForm::from_support_tensor(sp, w.basis(), random_symmetric_tensor(w.dim(), rng));
    if (support(s) == w) return s;
  }
  throw SamplingExhausted("no regular cubic found after 32 draws");
}

CubicForm sample_regular(const SymplecticSpace& sp, const Subspace& w, RationalSampler& rng) {
  if (!is_isotropic(sp, w)) throw NotIsotropic("sample_regular: subspace is not isotropic");
  return sample_supported(sp, w, rng);
}

CubicForm sample_regular(const SymplecticSpace& sp, const Subspace& w, std::uint64_t seed) {
  RationalSampler rng(seed);
  return sample_regular(sp, w, rng);
}

}  // namespace symtrans
