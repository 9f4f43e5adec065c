#include "symtrans/special_kahler.hpp"

#include <array>
#include <cmath>

namespace symtrans {

namespace {

using Triple = std::array<std::size_t, 3>;

/// Sorted triples a <= b <= c over n indices, lexicographic.
std::vector<Triple> sorted_triples(std::size_t n) {
  std::vector<Triple> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = b; c < n; ++c) out.push_back({a, b, c});
  return out;
}

/// Dense n^3 table from an arbitrary index triple to its sorted position.
std::vector<std::size_t> triple_lookup(std::size_t n) {
  std::vector<std::size_t> table(n * n * n);
  const auto triples = sorted_triples(n);
  for (std::size_t t = 0; t < triples.size(); ++t) {
    auto [a, b, c] = triples[t];
    for (const Triple& p : {Triple{a, b, c}, Triple{a, c, b}, Triple{b, a, c}, Triple{b, c, a}, Triple{c, a, b},
                            Triple{c, b, a}})
      table[(p[0] * n + p[1]) * n + p[2]] = t;
  }
  return table;
}

/// 2 Re(t * i^m).
Scalar twice_rotated_real(const Gaussian& t, std::size_t m) {
  switch (m % 4) {
    case 0: return 2 * t.re;
    case 1: return -2 * t.im;
    case 2: return -2 * t.re;
    default: return 2 * t.im;
  }
}

Matrix<Gaussian> conj_transpose(const Matrix<Gaussian>& m) {
  Matrix<Gaussian> t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c).conj();
  return t;
}

Matrix<Gaussian> eta_matrix(const HermitianSpace& space) {
  Matrix<Gaussian> e(space.n(), space.n());
  for (std::size_t a = 0; a < space.n(); ++a) e(a, a) = Gaussian(space.sign(a));
  return e;
}

Matrix<Scalar> hermitian_omega(std::size_t p, std::size_t q) {
  const std::size_t n = p + q;
  if (n == 0) throw InvalidDimension("Hermitian space needs p + q > 0");
  Matrix<Scalar> w(2 * n, 2 * n);
  for (std::size_t a = 0; a < n; ++a) {
    const int eps = a < p ? 1 : -1;
    w(a, n + a) = eps;
    w(n + a, a) = -eps;
  }
  return w;
}

/// Real cubic form from sorted complex values T_t, rotated by i per y-index.
CubicForm assemble(const HermitianSpace& space, const std::vector<Gaussian>& values, const std::vector<std::size_t>& lookup,
                   std::size_t extra_rotation) {
  const std::size_t n = space.n();
  CubicForm s(space.symplectic());
  for (const auto& [i, j, k] : sorted_triples(space.dim())) {
    const std::size_t t = lookup[((i % n) * n + j % n) * n + k % n];
    const std::size_t m = (i >= n) + (j >= n) + (k >= n) + extra_rotation;
    s.set(i, j, k, twice_rotated_real(values[t], m));
  }
  return s;
}

}  // namespace

HermitianSpace::HermitianSpace(std::size_t p, std::size_t q)
    : p_(p), q_(q), sp_(SymplecticSpace::from_gram(hermitian_omega(p, q))) {
  const std::size_t nn = n();
  j_ = Matrix<Scalar>(2 * nn, 2 * nn);
  g_ = Matrix<Scalar>(2 * nn, 2 * nn);
  for (std::size_t a = 0; a < nn; ++a) {
    j_(a, nn + a) = -1;
    j_(nn + a, a) = 1;
    g_(a, a) = sign(a);
    g_(nn + a, nn + a) = sign(a);
  }
}

Vector<Gaussian> HermitianSpace::complex_coords(const Vector<Scalar>& x) const {
  if (x.size() != dim()) throw DimensionMismatch("complex_coords: vector has the wrong dimension");
  Vector<Gaussian> z(n());
  for (std::size_t a = 0; a < n(); ++a) z[a] = Gaussian(x[a], x[n() + a]);
  return z;
}

Vector<Scalar> HermitianSpace::real_coords(const Vector<Gaussian>& z) const {
  if (z.size() != n()) throw DimensionMismatch("real_coords: vector has the wrong dimension");
  Vector<Scalar> x(dim());
  for (std::size_t a = 0; a < n(); ++a) {
    x[a] = z[a].re;
    x[n() + a] = z[a].im;
  }
  return x;
}

Matrix<Scalar> HermitianSpace::realify(const Matrix<Gaussian>& m) const {
  if (m.rows() != n() || m.cols() != n()) throw DimensionMismatch("realify: matrix has the wrong size");
  const std::size_t nn = n();
  Matrix<Scalar> r(2 * nn, 2 * nn);
  for (std::size_t a = 0; a < nn; ++a)
    for (std::size_t b = 0; b < nn; ++b) {
      r(a, b) = m(a, b).re;
      r(a, nn + b) = -m(a, b).im;
      r(nn + a, b) = m(a, b).im;
      r(nn + a, nn + b) = m(a, b).re;
    }
  return r;
}

Gaussian HermitianSpace::hermitian(const Vector<Gaussian>& u, const Vector<Gaussian>& v) const {
  if (u.size() != n() || v.size() != n()) throw DimensionMismatch("hermitian: vectors have the wrong dimension");
  Gaussian s(0);
  for (std::size_t a = 0; a < n(); ++a) {
    Gaussian term = u[a] * v[a].conj();
    s += sign(a) > 0 ? term : -term;
  }
  return s;
}

bool HermitianSpace::is_isotropic(const ComplexSubspace& w) const {
  const auto basis = w.basis_vectors();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j)
      if (!symtrans::is_zero(hermitian(basis[i], basis[j]))) return false;
  return true;
}

ComplexSubspace HermitianSpace::orthogonal(const ComplexSubspace& w) const {
  if (w.ambient_dim() != n()) throw DimensionMismatch("orthogonal: subspace lives in the wrong space");
  const auto basis = w.basis_vectors();
  Matrix<Gaussian> rows(basis.size(), n());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t a = 0; a < n(); ++a) rows(i, a) = Gaussian(sign(a)) * basis[i][a].conj();
  return kernel(rows);
}

bool HermitianSpace::is_pseudo_unitary(const Matrix<Gaussian>& m) const {
  if (m.rows() != n() || m.cols() != n()) return false;
  const Matrix<Gaussian> eta = eta_matrix(*this);
  return conj_transpose(m) * eta * m == eta;
}

Subspace HermitianSpace::realify(const ComplexSubspace& w) const {
  if (w.ambient_dim() != n()) throw DimensionMismatch("realify: subspace lives in the wrong space");
  std::vector<Vector<Scalar>> vecs;
  for (const auto& u : w.basis_vectors()) {
    vecs.push_back(real_coords(u));
    vecs.push_back(real_coords(scaled(Gaussian::imag_unit(), u)));
  }
  return Subspace::span(dim(), vecs);
}

ComplexSubspace HermitianSpace::complexify(const Subspace& w) const {
  if (w.ambient_dim() != dim()) throw DimensionMismatch("complexify: subspace lives in the wrong space");
  if (!w.contains(j_ * w)) throw InvalidDimension("complexify: subspace is not J-invariant");
  std::vector<Vector<Gaussian>> vecs;
  for (const auto& x : w.basis_vectors()) vecs.push_back(complex_coords(x));
  return ComplexSubspace::span(n(), vecs);
}

std::size_t max_isotropic_dim(const HermitianSpace& space) { return std::min(space.p(), space.q()); }

bool ComplexTensor3::is_symmetric() const {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Gaussian& v = (*this)(a, b, c);
        if ((*this)(a, c, b) != v || (*this)(b, a, c) != v) return false;
      }
  return true;
}

bool ComplexTensor3::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](const Gaussian& g) { return symtrans::is_zero(g); });
}

HoloPotential::HoloPotential(HermitianSpace s, Polynomial f) : space(std::move(s)), poly(std::move(f)) {
  if (poly.nvars() != space.n()) throw DimensionMismatch("potential has the wrong number of variables");
}

ComplexTensor3 third_derivative_tensor(const HoloPotential& f, const Vector<Gaussian>& z) {
  return SKStructure(f).third_derivatives(z);
}

CubicForm realize_tensor(const HermitianSpace& space, const ComplexTensor3& t) {
  if (t.n != space.n()) throw DimensionMismatch("realize: tensor has the wrong dimension");
  if (!t.is_symmetric()) throw InvalidDimension("realize: tensor is not symmetric");
  const std::size_t n = space.n();
  const auto triples = sorted_triples(n);
  std::vector<Gaussian> values;
  values.reserve(triples.size());
  for (const auto& [a, b, c] : triples) values.push_back(t(a, b, c));
  return assemble(space, values, triple_lookup(n), 0);
}

CubicForm realize_s(const HoloPotential& f, const Vector<Scalar>& x) { return SKStructure(f).s_field(x); }

ComplexSubspace holomorphic_support(const HermitianSpace& space, const ComplexTensor3& t) {
  const std::size_t n = space.n();
  if (t.n != n) throw DimensionMismatch("support: tensor has the wrong dimension");
  std::vector<Vector<Gaussian>> vecs;
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = b; c < n; ++c) {
      Vector<Gaussian> v(n);
      for (std::size_t a = 0; a < n; ++a) v[a] = Gaussian(space.sign(a)) * t(a, b, c).conj();
      vecs.push_back(std::move(v));
    }
  return ComplexSubspace::span(n, vecs);
}

SKStructure::SKStructure(HoloPotential f)
    : f_(std::move(f)), raise_double_(to_double(f_.space.symplectic().raise())) {
  const std::size_t n = f_.space.n();
  std::vector<Polynomial> first;
  for (std::size_t a = 0; a < n; ++a) first.push_back(f_.poly.derivative(a));
  for (const auto& [a, b, c] : sorted_triples(n)) third_.push_back(first[a].derivative(b).derivative(c));
  fourth_.resize(n);
  for (std::size_t l = 0; l < n; ++l)
    for (const auto& t : third_) fourth_[l].push_back(t.derivative(l));
}

std::vector<Gaussian> SKStructure::sorted_third_values(const Vector<Gaussian>& z) const {
  std::vector<Gaussian> out;
  out.reserve(third_.size());
  for (const auto& p : third_) out.push_back(p.evaluate(z));
  return out;
}

std::vector<std::complex<double>> SKStructure::sorted_third_values(const std::vector<std::complex<double>>& z) const {
  std::vector<std::complex<double>> out;
  out.reserve(third_.size());
  for (const auto& p : third_) out.push_back(p.evaluate(z));
  return out;
}

ComplexTensor3 SKStructure::third_derivatives(const Vector<Gaussian>& z) const {
  const std::size_t n = space().n();
  if (z.size() != n) throw DimensionMismatch("third derivatives: point has the wrong dimension");
  const auto values = sorted_third_values(z);
  const auto lookup = triple_lookup(n);
  ComplexTensor3 t(n);
  for (std::size_t i = 0; i < t.data.size(); ++i) t.data[i] = values[lookup[i]];
  return t;
}

CubicForm SKStructure::s_field(const Vector<Scalar>& x) const {
  return assemble(space(), sorted_third_values(space().complex_coords(x)), triple_lookup(space().n()), 0);
}

std::vector<CubicForm> SKStructure::ds_field(const Vector<Scalar>& x) const {
  const std::size_t n = space().n();
  const Vector<Gaussian> z = space().complex_coords(x);
  const auto lookup = triple_lookup(n);
  std::vector<std::vector<Gaussian>> values(n);
  for (std::size_t l = 0; l < n; ++l)
    for (const auto& p : fourth_[l]) values[l].push_back(p.evaluate(z));
  std::vector<CubicForm> out;
  // d/dy_l = i d/dz_l on holomorphic functions.
  for (std::size_t l = 0; l < 2 * n; ++l) out.push_back(assemble(space(), values[l % n], lookup, l >= n));
  return out;
}

std::vector<double> SKStructure::apply_double(const std::vector<double>& x, const std::vector<double>& v,
                                              const std::vector<double>& w) const {
  const std::size_t n = space().n();
  const std::size_t d = 2 * n;
  if (x.size() != d || v.size() != d || w.size() != d) throw DimensionMismatch("apply: vectors have the wrong size");
  using C = std::complex<double>;
  std::vector<C> z(n), vz(n), wz(n);
  for (std::size_t a = 0; a < n; ++a) {
    z[a] = {x[a], x[n + a]};
    vz[a] = {v[a], v[n + a]};
    wz[a] = {w[a], w[n + a]};
  }
  const auto values = sorted_third_values(z);
  const auto lookup = triple_lookup(n);
  // tau_c = sum_ab T_abc V_a W_b, then sigma(v, w, e_k) = 2 Re(tau * dz(e_k)).
  std::vector<C> tau(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const C vw = vz[a] * wz[b];
      for (std::size_t c = 0; c < n; ++c) tau[c] += values[lookup[(a * n + b) * n + c]] * vw;
    }
  std::vector<double> form(d);
  for (std::size_t c = 0; c < n; ++c) {
    form[c] = 2 * tau[c].real();
    form[n + c] = -2 * tau[c].imag();
  }
  std::vector<double> out(d, 0.0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < d; ++k) out[r] += raise_double_(r, k) * form[k];
  return out;
}

bool SKReport::pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const SKCondition& c) { return c.pass; });
}

const SKCondition& SKReport::condition(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  throw std::out_of_range("no condition named " + name);
}

namespace {

void fail(SKCondition& c, const Vector<Scalar>& x, std::vector<std::size_t> indices) {
  if (!c.pass) return;
  c.pass = false;
  c.point = x;
  c.indices = std::move(indices);
}

}  // namespace

SKReport check_flat_sk(const SKStructure& s, const std::vector<Vector<Scalar>>& points) {
  const HermitianSpace& space = s.space();
  const std::size_t d = space.dim();
  const Matrix<Scalar>& j = space.j();
  const Matrix<Scalar>& raise = space.symplectic().raise();

  SKReport report;
  for (const char* name : {"symmetry", "commutators", "ds_symmetry", "anticommutation", "curvature", "levi_civita",
                           "isotropic_support", "support_type"})
    report.conditions.push_back(SKCondition{name, true, std::nullopt, {}});
  if (s.constant_cubic()) report.conditions.push_back(SKCondition{"constant_cubic", true, std::nullopt, {}});
  auto& symmetry = report.conditions[0];
  auto& commutators = report.conditions[1];
  auto& ds_symmetry = report.conditions[2];
  auto& anticommutation = report.conditions[3];
  auto& curvature = report.conditions[4];
  auto& levi_civita = report.conditions[5];
  auto& isotropic = report.conditions[6];
  auto& support_type = report.conditions[7];

  for (const auto& x : points) {
    ++report.points_checked;
    const ComplexTensor3 t = s.third_derivatives(space.complex_coords(x));
    const CubicForm sigma = s.s_field(x);
    if (!sigma.tensor().is_symmetric()) fail(symmetry, x, {});

    const EndoFamily family = endo_family(sigma);
    for (std::size_t a = 0; a < d && commutators.pass; ++a)
      for (std::size_t b = a + 1; b < d; ++b)
        if (!commutator(family.mats[a], family.mats[b]).is_zero()) {
          fail(commutators, x, {a, b});
          break;
        }

    const std::vector<CubicForm> ds = s.ds_field(x);
    for (std::size_t l = 0; l < d && ds_symmetry.pass; ++l)
      for (std::size_t i = l + 1; i < d && ds_symmetry.pass; ++i)
        for (std::size_t a = 0; a < d && ds_symmetry.pass; ++a)
          for (std::size_t b = a; b < d; ++b)
            if (ds[l].coefficient(i, a, b) != ds[i].coefficient(l, a, b)) {
              fail(ds_symmetry, x, {l, i, a, b});
              break;
            }

    if (auto w = anticommutation_witness(family, j)) fail(anticommutation, x, {*w});

    // (D_l S)_i as a matrix: entry (r, c) = sum_k raise(r, k) DS(l, i, c, k).
    std::vector<Tensor3> dst;
    for (const auto& f : ds) dst.push_back(f.tensor());
    auto derivative_endo = [&](std::size_t l, std::size_t i) {
      Matrix<Scalar> m(d, d);
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t k = 0; k < d; ++k) {
          const Scalar& v = dst[l](i, c, k);
          if (is_zero(v)) continue;
          for (std::size_t r = 0; r < d; ++r)
            if (!is_zero(raise(r, k))) m(r, c) += raise(r, k) * v;
        }
      return m;
    };
    for (std::size_t l = 0; l < d && curvature.pass; ++l)
      for (std::size_t i = l + 1; i < d; ++i) {
        const Matrix<Scalar> r =
            derivative_endo(l, i) - derivative_endo(i, l) + commutator(family.mats[l], family.mats[i]);
        if (!r.is_zero()) {
          fail(curvature, x, {l, i});
          break;
        }
      }

    for (std::size_t i = 0; i < d; ++i) {
      const Matrix<Scalar> nabla_j = commutator(family.mats[i], j);
      if (j * nabla_j != Scalar(2) * family.mats[i]) {
        fail(levi_civita, x, {i});
        break;
      }
    }

    const ComplexSubspace holo = holomorphic_support(space, t);
    if (!space.is_isotropic(holo)) fail(isotropic, x, {});
    if (space.realify(holo) != support(family)) fail(support_type, x, {});

    if (s.constant_cubic()) {
      auto& constant = report.conditions[8];
      for (std::size_t l = 0; l < d; ++l)
        if (!ds[l].is_zero()) {
          fail(constant, x, {l});
          break;
        }
    }
  }
  return report;
}

SKReport check_flat_sk(const SKStructure& s, std::size_t samples, RationalSampler& rng) {
  std::vector<Vector<Scalar>> points;
  for (std::size_t i = 0; i < samples; ++i) points.push_back(rng.vector(s.space().dim()));
  return check_flat_sk(s, points);
}

SKReport check_flat_sk(const SKStructure& s, std::size_t samples, std::uint64_t seed) {
  RationalSampler rng(seed);
  return check_flat_sk(s, samples, rng);
}

Matrix<Gaussian> hermitian_dual_complement(const HermitianSpace& space, const Matrix<Gaussian>& w_basis) {
  const std::size_t n = space.n();
  const std::size_t k = w_basis.cols();
  if (w_basis.rows() != n) throw DimensionMismatch("dual complement: basis has the wrong height");
  if (!space.is_isotropic(ComplexSubspace::span(w_basis))) throw NotIsotropic("dual complement: W is not isotropic");
  // h(w_i, u) = sum_a eps_a w_ia conj(u_a); solve for v = conj(u).
  Matrix<Gaussian> a(k, n);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < n; ++c) a(i, c) = Gaussian(space.sign(c)) * w_basis(c, i);
  std::vector<Vector<Gaussian>> u;
  for (std::size_t i = 0; i < k; ++i) {
    auto v = solve_particular(a, unit_vector<Gaussian>(k, i));
    if (!v) throw Singular("dual complement: basis of W is dependent");
    for (auto& c : *v) c = c.conj();
    u.push_back(std::move(*v));
  }
  // w'_i = u_i - (1/2) sum_l h(u_i, u_l) w_l is isotropic and still dual to W.
  std::vector<Vector<Gaussian>> out;
  for (std::size_t i = 0; i < k; ++i) {
    Vector<Gaussian> wi = u[i];
    for (std::size_t l = 0; l < k; ++l) {
      const Gaussian c = space.hermitian(u[i], u[l]) * Gaussian(Scalar(1, 2));
      wi = wi - scaled(c, w_basis.column(l));
    }
    out.push_back(std::move(wi));
  }
  return Matrix<Gaussian>::from_columns(n, out);
}

Matrix<Gaussian> unitary_extension(const HermitianSpace& space, const Matrix<Gaussian>& w_basis,
                                   const Matrix<Gaussian>& h) {
  const std::size_t n = space.n();
  const std::size_t k = w_basis.cols();
  if (h.rows() != k || h.cols() != k) throw DimensionMismatch("unitary extension: h has the wrong size");
  const Matrix<Gaussian> dual = hermitian_dual_complement(space, w_basis);
  const Matrix<Gaussian> core = w_basis.hconcat(dual);
  const Matrix<Gaussian> b = core.hconcat(space.orthogonal(ComplexSubspace::span(core)).basis());
  if (b.cols() != n) throw std::logic_error("unitary extension: splitting has the wrong dimension");
  const Matrix<Gaussian> h_dual = inverse(conj_transpose(h));
  Matrix<Gaussian> block = Matrix<Gaussian>::identity(n);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      block(r, c) = h(r, c);
      block(k + r, k + c) = h_dual(r, c);
    }
  return b * block * inverse(b);
}

Matrix<Gaussian> random_pseudo_unitary(const HermitianSpace& space, RationalSampler& rng) {
  const std::size_t n = space.n();
  const Matrix<Gaussian> id = Matrix<Gaussian>::identity(n);
  constexpr int kMaxAttempts = 32;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    // Small Gaussian integers keep the Cayley transform's heights modest.
    Matrix<Gaussian> a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      a(r, r) = Gaussian(Scalar(0), Scalar(rng.integer(-2, 2)));
      for (std::size_t c = r + 1; c < n; ++c) {
        const Gaussian z(Scalar(rng.integer(-2, 2)), Scalar(rng.integer(-2, 2)));
        a(r, c) = z;
        a(c, r) = -z.conj();
      }
    }
    for (std::size_t r = 0; r < n; ++r)
      if (space.sign(r) < 0)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = -a(r, c);
    try {
      return (id + a) * inverse(id - a);
    } catch (const Singular&) {
    }
  }
  throw SamplingExhausted("no invertible Cayley denominator after 32 draws");
}

ComplexSubspace random_isotropic_complex(const HermitianSpace& space, std::size_t k, RationalSampler& rng) {
  if (k > max_isotropic_dim(space)) throw InvalidDimension("isotropic dimension exceeds min(p, q)");
  const std::size_t n = space.n();
  Matrix<Gaussian> w(n, k);
  for (std::size_t i = 0; i < k; ++i) {
    w(i, i) = Gaussian(1);
    w(space.p() + i, i) = Gaussian(1);
  }
  return ComplexSubspace::span(random_pseudo_unitary(space, rng) * w);
}

SampledPotential sample_isotropic_potential(const HermitianSpace& space, std::size_t k, unsigned degree,
                                            RationalSampler& rng) {
  const std::size_t n = space.n();
  ComplexSubspace w = random_isotropic_complex(space, k, rng);
  Polynomial f(n);
  if (k > 0 && degree >= 3) {
    std::vector<Polynomial> forms;
    for (const auto& wj : w.basis_vectors()) {
      Vector<Gaussian> xi(n);
      for (std::size_t a = 0; a < n; ++a) xi[a] = Gaussian(space.sign(a)) * wj[a].conj();
      forms.push_back(Polynomial::linear(xi));
    }
    f = random_polynomial(k, 3, degree, rng).substitute(forms);
  }
  f += random_polynomial(n, 0, 2, rng);
  return {HoloPotential(space, std::move(f)), std::move(w)};
}

std::optional<TrivialFactorSplit> trivial_factor_split(const SKStructure& s) {
  if (!s.constant_cubic()) throw NonConstantCubic("trivial factor split needs deg f <= 3");
  const HermitianSpace& space = s.space();
  const std::size_t n = space.n();
  const ComplexSubspace w = holomorphic_support(space, s.third_derivatives(zero_vector<Gaussian>(n)));
  if (!space.is_isotropic(w)) throw NotIsotropic("trivial factor split: support is not isotropic");
  // Real support dimension 2k against the complex dimension n.
  if (2 * w.dim() >= n) return std::nullopt;
  ComplexSubspace core = ComplexSubspace::zero(n);
  if (w.dim() > 0) core = ComplexSubspace::span(w.basis().hconcat(hermitian_dual_complement(space, w.basis())));
  ComplexSubspace flat = space.orthogonal(core);
  TrivialFactorSplit out{flat, core, space.realify(flat), space.realify(core)};
  return out;
}

RigidityCertificate rigidity_certificate(const HermitianSpace& space) {
  const SymplecticSpace& sp = space.symplectic();
  const std::size_t d = space.dim();
  const Matrix<Scalar>& j = space.j();
  const auto triples = sorted_triples(d);

  // Column t: the anticommutators S_{e_i} J + J S_{e_i} of the unit form on triple t.
  std::vector<EndoFamily> unit_families;
  Matrix<Scalar> constraints(d * d * d, triples.size());
  for (std::size_t t = 0; t < triples.size(); ++t) {
    CubicForm unit(sp);
    unit.set(triples[t][0], triples[t][1], triples[t][2], Scalar(1));
    unit_families.push_back(endo_family(unit));
    for (std::size_t i = 0; i < d; ++i) {
      const Matrix<Scalar>& m = unit_families.back().mats[i];
      const Matrix<Scalar> anti = m * j + j * m;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) constraints((i * d + r) * d + c, t) = anti(r, c);
    }
  }
  const Matrix<Scalar> l = kernel_basis(constraints);

  std::vector<std::vector<Matrix<Scalar>>> families(l.cols(), std::vector<Matrix<Scalar>>(d, Matrix<Scalar>(d, d)));
  for (std::size_t b = 0; b < l.cols(); ++b)
    for (std::size_t t = 0; t < triples.size(); ++t) {
      if (is_zero(l(t, b))) continue;
      for (std::size_t i = 0; i < d; ++i) families[b][i] += l(t, b) * unit_families[t].mats[i];
    }
  Matrix<Scalar> gram(l.cols(), l.cols());
  for (std::size_t a = 0; a < l.cols(); ++a)
    for (std::size_t b = a; b < l.cols(); ++b) {
      Scalar q(0);
      for (std::size_t i = 0; i < d; ++i) q += trace(families[a][i] * families[b][i]);
      gram(a, b) = q;
      gram(b, a) = q;
    }

  RigidityCertificate cert;
  cert.anticommuting_dim = l.cols();
  cert.max_isotropic = max_isotropic_dim(space);
  cert.gram_positive_definite = true;
  // Sylvester: every leading principal minor positive.
  for (std::size_t m = 1; m <= l.cols() && cert.gram_positive_definite; ++m) {
    Matrix<Scalar> lead(m, m);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) lead(r, c) = gram(r, c);
    if (sgn(det(lead)) <= 0) cert.gram_positive_definite = false;
  }
  return cert;
}

namespace {

/// S_v w from a family of double matrices.
std::vector<double> apply_family(const std::vector<Matrix<double>>& mats, const std::vector<double>& v,
                                 const std::vector<double>& w) {
  const std::size_t d = v.size();
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    if (v[i] == 0.0) continue;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out[r] += v[i] * mats[i](r, c) * w[c];
  }
  return out;
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

/// Coordinates whose first columns span the support W of a constant S.
/// There S_X Y reads only the remaining coordinates and writes only the
/// first ones, and rounded matrices keep S_X S_Y = 0.
struct AdaptedFrame {
  Matrix<Scalar> from_standard;
  Matrix<double> to_standard;
  std::vector<Matrix<double>> mats;
};

AdaptedFrame adapted_frame(const SKStructure& s) {
  const std::size_t d = s.space().dim();
  const EndoFamily family = endo_family(s.s_field(zero_vector<Scalar>(d)));
  std::vector<Vector<Scalar>> cols = support(family).basis().columns();
  // Complete by unit vectors off the partial-pivoting rows.
  std::vector<Vector<Scalar>> work = cols;
  std::vector<bool> pivot(d, false);
  for (std::size_t c = 0; c < work.size(); ++c) {
    std::size_t best = d;
    for (std::size_t r = 0; r < d; ++r)
      if (!pivot[r] && work[c][r] != 0 && (best == d || abs(work[c][r]) > abs(work[c][best]))) best = r;
    pivot[best] = true;
    for (std::size_t c2 = c + 1; c2 < work.size(); ++c2) {
      const Scalar f = work[c2][best] / work[c][best];
      for (std::size_t r = 0; r < d; ++r) work[c2][r] -= f * work[c][r];
    }
  }
  for (std::size_t j = 0; j < d; ++j)
    if (!pivot[j]) cols.push_back(unit_vector<Scalar>(d, j));
  const auto b = Matrix<Scalar>::from_columns(d, cols);
  AdaptedFrame f{inverse(b), to_double(b), {}};
  for (std::size_t i = 0; i < d; ++i) f.mats.push_back(to_double(f.from_standard * family.at(b.column(i)) * b));
  return f;
}

}  // namespace

namespace {

/// Precomputed data for both closed forms of one (p0, v0).
///
/// The conjugated form phi^{-1}(y0 + t b) is a polynomial in t; its exact
/// rational coefficients alpha + t beta - t^2 gamma are composed up front.
struct ClosedForms {
  std::vector<double> p0, v0, accel;  // accel = S_{v0} v0
  std::vector<double> alpha, beta, gamma;
  bool special = false;

  ClosedForms(const SKStructure& s, Connection c, const Vector<Scalar>& p, const Vector<Scalar>& v)
      : p0(to_double(p)), v0(to_double(v)), special(c == Connection::Special) {
    if (!s.constant_cubic()) throw NonConstantCubic("closed-form geodesics need deg f <= 3");
    if (!special) return;
    const EndoFamily family = endo_family(s.s_field(zero_vector<Scalar>(s.space().dim())));
    auto half = [](Vector<Scalar> u) {
      for (auto& e : u) e /= 2;
      return u;
    };
    accel = to_double(family.apply(v, v));
    const Vector<Scalar> y0 = p + half(family.apply(p, p));
    const Vector<Scalar> b = v + family.apply(p, v);
    alpha = to_double(y0 - half(family.apply(y0, y0)));
    beta = to_double(b - family.apply(y0, b));
    gamma = to_double(half(family.apply(b, b)));
  }

  std::vector<double> closed(double t) const {
    std::vector<double> x = p0;
    axpy(x, t, v0);
    if (special) axpy(x, -0.5 * t * t, accel);
    return x;
  }

  std::vector<double> conjugated(double t) const {
    if (!special) return closed(t);
    std::vector<double> x = alpha;
    axpy(x, t, beta);
    axpy(x, -t * t, gamma);
    return x;
  }
};

}  // namespace

std::vector<double> closed_form_geodesic(const SKStructure& s, Connection c, const Vector<Scalar>& p0,
                                         const Vector<Scalar>& v0, double t) {
  return ClosedForms(s, c, p0, v0).closed(t);
}

std::vector<double> conjugated_geodesic(const SKStructure& s, Connection c, const Vector<Scalar>& p0,
                                        const Vector<Scalar>& v0, double t) {
  return ClosedForms(s, c, p0, v0).conjugated(t);
}

GeodesicResult geodesic(const SKStructure& s, Connection c, const Vector<Scalar>& p0, const Vector<Scalar>& v0,
                        double t_end, double dt) {
  const std::size_t d = s.space().dim();
  if (p0.size() != d || v0.size() != d) throw DimensionMismatch("geodesic: point or velocity has the wrong size");
  if (!(dt > 0) || !std::isfinite(dt) || !std::isfinite(t_end))
    throw InvalidDimension("geodesic: need a finite t_end and dt > 0");

  // A constant S is integrated in the adapted frame, everything else in standard coordinates.
  std::optional<AdaptedFrame> frame;
  if (c == Connection::Special && s.constant_cubic()) frame = adapted_frame(s);
  const std::vector<Matrix<double>> mats = frame ? frame->mats : std::vector<Matrix<double>>{};
  auto output = [&](const std::vector<double>& x) { return frame ? frame->to_standard * x : x; };
  auto accel = [&](const std::vector<double>& x, const std::vector<double>& v) {
    std::vector<double> a;
    if (c == Connection::Flat)
      a.assign(d, 0.0);
    else if (!mats.empty())
      a = apply_family(mats, v, v);
    else
      a = s.apply_double(x, v, v);
    for (auto& e : a) e = -e;
    return a;
  };

  const std::size_t steps = static_cast<std::size_t>(std::ceil(std::abs(t_end) / dt - 1e-9));
  const double h = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

  GeodesicResult result;
  std::vector<double> x = to_double(frame ? frame->from_standard * p0 : p0);
  std::vector<double> v = to_double(frame ? frame->from_standard * v0 : v0);
  result.numeric.times.push_back(0.0);
  result.numeric.points.push_back(output(x));
  std::vector<double> carry_x(d, 0.0), carry_v(d, 0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    // RK4 on (x, v) with x' = v, v' = accel(x, v).
    const auto k1x = v;
    const auto k1v = accel(x, v);
    auto x2 = x, v2 = v;
    axpy(x2, h / 2, k1x);
    axpy(v2, h / 2, k1v);
    const auto k2x = v2;
    const auto k2v = accel(x2, v2);
    auto x3 = x, v3 = v;
    axpy(x3, h / 2, k2x);
    axpy(v3, h / 2, k2v);
    const auto k3x = v3;
    const auto k3v = accel(x3, v3);
    auto x4 = x, v4 = v;
    axpy(x4, h, k3x);
    axpy(v4, h, k3v);
    const auto k4x = v4;
    const auto k4v = accel(x4, v4);
    // Kahan-compensated increments.
    auto add = [](double& sum, double& carry, double inc) {
      const double y = inc - carry;
      const double t = sum + y;
      carry = (t - sum) - y;
      sum = t;
    };
    for (std::size_t i = 0; i < d; ++i) {
      add(x[i], carry_x[i], h / 6 * (k1x[i] + 2 * k2x[i] + 2 * k3x[i] + k4x[i]));
      add(v[i], carry_v[i], h / 6 * (k1v[i] + 2 * k2v[i] + 2 * k3v[i] + k4v[i]));
    }
    result.numeric.times.push_back(h * static_cast<double>(k + 1));
    result.numeric.points.push_back(output(x));
  }

  if (s.constant_cubic()) {
    const ClosedForms forms(s, c, p0, v0);
    Trajectory closed, conj;
    double sup = 0.0;
    for (std::size_t k = 0; k < result.numeric.times.size(); ++k) {
      const double t = result.numeric.times[k];
      closed.times.push_back(t);
      conj.times.push_back(t);
      closed.points.push_back(forms.closed(t));
      conj.points.push_back(forms.conjugated(t));
      for (std::size_t i = 0; i < d; ++i) sup = std::max(sup, std::abs(closed.points[k][i] - result.numeric.points[k][i]));
    }
    result.closed_form = std::move(closed);
    result.conjugated = std::move(conj);
    result.sup_deviation = sup;
  }
  return result;
}

}  // namespace symtrans
