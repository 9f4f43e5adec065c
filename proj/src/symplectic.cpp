#include "symtrans/symplectic.hpp"

namespace symtrans {

SymplecticSpace SymplecticSpace::darboux(std::size_t n) { return from_gram(darboux_swap_generator(n)); }

SymplecticSpace SymplecticSpace::from_gram(Matrix<Scalar> gram) {
  if (!gram.is_square() || gram.rows() % 2 != 0) throw InvalidDimension("symplectic Gram matrix must be 2n x 2n");
  if (gram.transpose() != -gram) throw InvalidDimension("symplectic Gram matrix must be antisymmetric");
  SymplecticSpace sp;
  sp.n_ = gram.rows() / 2;
  try {
    sp.omega_inv_ = inverse(gram);
  } catch (const Singular&) {
    throw InvalidDimension("symplectic Gram matrix must be invertible");
  }
  sp.raise_ = -sp.omega_inv_;
  sp.omega_ = std::move(gram);
  return sp;
}

Scalar omega_eval(const SymplecticSpace& sp, const Vector<Scalar>& x, const Vector<Scalar>& y) {
  if (x.size() != sp.dim() || y.size() != sp.dim()) throw DimensionMismatch("omega: vectors must have dimension 2n");
  return dot(x, sp.omega() * y);
}

bool is_isotropic(const SymplecticSpace& sp, const Subspace& w) {
  if (w.ambient_dim() != sp.dim()) throw DimensionMismatch("isotropy: subspace lives in the wrong space");
  const Matrix<Scalar>& b = w.basis();
  return (b.transpose() * sp.omega() * b).is_zero();
}

bool is_lagrangian(const SymplecticSpace& sp, const Subspace& w) { return w.dim() == sp.n() && is_isotropic(sp, w); }

Subspace symplectic_complement(const SymplecticSpace& sp, const Subspace& w) {
  if (w.ambient_dim() != sp.dim()) throw DimensionMismatch("complement: subspace lives in the wrong space");
  return kernel(Matrix<Scalar>(w.basis().transpose() * sp.omega()));
}

bool is_symplectic(const SymplecticSpace& sp, const Matrix<Scalar>& g) {
  if (g.rows() != sp.dim() || g.cols() != sp.dim()) return false;
  return g.transpose() * sp.omega() * g == sp.omega();
}

Matrix<Scalar> symplectic_inverse(const SymplecticSpace& sp, const Matrix<Scalar>& g) {
  return sp.omega_inverse() * g.transpose() * sp.omega();
}

Matrix<Scalar> darboux_basis(const SymplecticSpace& sp) {
  // Symplectic Gram-Schmidt on the standard basis.
  const std::size_t d = sp.dim();
  std::vector<Vector<Scalar>> pool;
  for (std::size_t i = 0; i < d; ++i) pool.push_back(unit_vector<Scalar>(d, i));
  std::vector<Vector<Scalar>> es, fs;
  while (!pool.empty()) {
    Vector<Scalar> e = pool.front();
    pool.erase(pool.begin());
    if (is_zero(e)) continue;
    std::size_t partner = pool.size();
    for (std::size_t j = 0; j < pool.size(); ++j)
      if (!is_zero(omega_eval(sp, e, pool[j]))) {
        partner = j;
        break;
      }
    if (partner == pool.size()) throw Error("darboux_basis: degenerate form");
    Vector<Scalar> f = pool[partner];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(partner));
    f = scaled(Scalar(1 / omega_eval(sp, e, f)), f);
    for (auto& v : pool) {
      // v <- v - omega(v, f) e + omega(v, e) f, making v orthogonal to e and f.
      const Scalar vf = omega_eval(sp, v, f);
      const Scalar ve = omega_eval(sp, v, e);
      v = v - scaled(vf, e) + scaled(ve, f);
    }
    es.push_back(std::move(e));
    fs.push_back(std::move(f));
  }
  es.insert(es.end(), fs.begin(), fs.end());
  return Matrix<Scalar>::from_columns(d, es);
}

Subspace standard_isotropic(const SymplecticSpace& sp, std::size_t k) {
  if (k > sp.n()) throw InvalidDimension("isotropic subspaces have dimension at most n");
  std::vector<Vector<Scalar>> cols;
  for (std::size_t i = 0; i < k; ++i) cols.push_back(unit_vector<Scalar>(sp.dim(), i));
  return Subspace::span(sp.dim(), cols);
}

Matrix<Scalar> block_diagonal_generator(const Matrix<Scalar>& a) {
  const std::size_t n = a.rows();
  const Matrix<Scalar> inv_t = inverse(a).transpose();
  Matrix<Scalar> g(2 * n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      g(r, c) = a(r, c);
      g(n + r, n + c) = inv_t(r, c);
    }
  return g;
}

Matrix<Scalar> upper_shear_generator(const Matrix<Scalar>& sym) {
  if (sym.transpose() != sym) throw InvalidDimension("shear parameter must be symmetric");
  const std::size_t n = sym.rows();
  Matrix<Scalar> g = Matrix<Scalar>::identity(2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g(r, n + c) = sym(r, c);
  return g;
}

Matrix<Scalar> lower_shear_generator(const Matrix<Scalar>& sym) {
  if (sym.transpose() != sym) throw InvalidDimension("shear parameter must be symmetric");
  const std::size_t n = sym.rows();
  Matrix<Scalar> g = Matrix<Scalar>::identity(2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g(n + r, c) = sym(r, c);
  return g;
}

Matrix<Scalar> darboux_swap_generator(std::size_t n) {
  Matrix<Scalar> m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, n + i) = 1;
    m(n + i, i) = -1;
  }
  return m;
}

Matrix<Scalar> random_symplectic(const SymplecticSpace& sp, RationalSampler& rng) {
  const std::size_t n = sp.n();
  Matrix<Scalar> g = block_diagonal_generator(rng.invertible_matrix(n));
  g = g * upper_shear_generator(rng.symmetric_matrix(n));
  if (rng.coin()) g = g * darboux_swap_generator(n);
  g = g * lower_shear_generator(rng.symmetric_matrix(n));
  g = g * upper_shear_generator(rng.symmetric_matrix(n));
  if (sp == SymplecticSpace::darboux(n)) return g;
  const Matrix<Scalar> b = darboux_basis(sp);
  return b * g * inverse(b);
}

Matrix<Scalar> random_symplectic(const SymplecticSpace& sp, std::uint64_t seed) {
  RationalSampler rng(seed);
  return random_symplectic(sp, rng);
}

Subspace random_isotropic(const SymplecticSpace& sp, std::size_t k, RationalSampler& rng) {
  if (k > sp.n()) throw InvalidDimension("isotropic subspaces have dimension at most n");
  if (k == 0) return Subspace::zero(sp.dim());
  return random_symplectic(sp, rng) * standard_isotropic(sp, k);
}

Subspace random_isotropic(const SymplecticSpace& sp, std::size_t k, std::uint64_t seed) {
  RationalSampler rng(seed);
  return random_isotropic(sp, k, rng);
}

Matrix<Scalar> isotropic_dual_complement(const SymplecticSpace& sp, const Matrix<Scalar>& w_basis) {
  const std::size_t k = w_basis.cols();
  const Matrix<Scalar> pairing = w_basis.transpose() * sp.omega();  // row i: omega(w_i, .)
  if (!(pairing * w_basis).is_zero()) throw NotIsotropic("dual complement needs an isotropic subspace");
  std::vector<Vector<Scalar>> us;
  for (std::size_t j = 0; j < k; ++j) {
    auto u = solve_particular(pairing, unit_vector<Scalar>(k, j));
    if (!u) throw InvalidDimension("dual complement: basis vectors are dependent");
    us.push_back(std::move(*u));
  }
  // u'_j = u_j - 1/2 sum_l omega(u_j, u_l) w_l is isotropic and keeps the pairing.
  std::vector<Vector<Scalar>> out;
  for (std::size_t j = 0; j < k; ++j) {
    Vector<Scalar> v = us[j];
    for (std::size_t l = 0; l < k; ++l) {
      const Scalar c = omega_eval(sp, us[j], us[l]) / 2;
      if (!is_zero(c)) v = v - scaled(c, w_basis.column(l));
    }
    out.push_back(std::move(v));
  }
  return Matrix<Scalar>::from_columns(sp.dim(), out);
}

Matrix<Scalar> extend_to_symplectic(const SymplecticSpace& sp, const Matrix<Scalar>& w_basis,
                                    const Matrix<Scalar>& h) {
  const std::size_t k = w_basis.cols();
  if (h.rows() != k || h.cols() != k) throw DimensionMismatch("extension: h must be k x k");
  const Matrix<Scalar> dual = isotropic_dual_complement(sp, w_basis);
  const Matrix<Scalar> pair_basis = w_basis.hconcat(dual);
  const Subspace rest = symplectic_complement(sp, Subspace::span(pair_basis));
  const Matrix<Scalar> basis = pair_basis.hconcat(rest.basis());

  const std::size_t d = sp.dim();
  const Matrix<Scalar> h_dual = inverse(h).transpose();
  Matrix<Scalar> block = Matrix<Scalar>::identity(d);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      block(r, c) = h(r, c);
      block(k + r, k + c) = h_dual(r, c);
    }
  return basis * block * inverse(basis);
}

}  // namespace symtrans
