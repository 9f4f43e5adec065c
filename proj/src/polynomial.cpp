#include "symtrans/polynomial.hpp"

#include <numeric>

namespace symtrans {

Polynomial Polynomial::constant(std::size_t nvars, const Gaussian& c) {
  Polynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw DimensionMismatch("variable index out of range");
  Polynomial p(nvars);
  Exponents e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Gaussian(1));
  return p;
}

Polynomial Polynomial::linear(const Vector<Gaussian>& coeffs) {
  Polynomial p(coeffs.size());
  for (std::size_t a = 0; a < coeffs.size(); ++a) {
    Exponents e(coeffs.size(), 0);
    e[a] = 1;
    p.add_term(e, coeffs[a]);
  }
  return p;
}

Gaussian Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Gaussian(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const Gaussian& c) {
  if (e.size() != nvars_) throw DimensionMismatch("monomial has the wrong number of exponents");
  if (symtrans::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (symtrans::is_zero(it->second)) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  return d;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw DimensionMismatch("derivative: variable index out of range");
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents de = e;
    --de[var];
    out.add_term(de, Gaussian(Scalar(e[var])) * c);
  }
  return out;
}

Gaussian Polynomial::evaluate(const Vector<Gaussian>& z) const {
  if (z.size() != nvars_) throw DimensionMismatch("evaluate: point has the wrong dimension");
  Gaussian sum(0);
  for (const auto& [e, c] : terms_) {
    Gaussian term = c;
    for (std::size_t a = 0; a < nvars_; ++a)
      for (std::uint32_t k = 0; k < e[a]; ++k) term *= z[a];
    sum += term;
  }
  return sum;
}

std::complex<double> Polynomial::evaluate(const std::vector<std::complex<double>>& z) const {
  if (z.size() != nvars_) throw DimensionMismatch("evaluate: point has the wrong dimension");
  std::complex<double> sum = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> term = to_complex(c);
    for (std::size_t a = 0; a < nvars_; ++a)
      for (std::uint32_t k = 0; k < e[a]; ++k) term *= z[a];
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& q) const {
  if (q.size() != nvars_) throw DimensionMismatch("substitute: need one polynomial per variable");
  const std::size_t m = q.empty() ? 0 : q.front().nvars();
  for (const auto& qa : q)
    if (qa.nvars() != m) throw DimensionMismatch("substitute: polynomials disagree on variable count");
  // Cache powers of each substituted polynomial.
  std::vector<std::vector<Polynomial>> powers(nvars_);
  for (std::size_t a = 0; a < nvars_; ++a) powers[a].push_back(constant(m, Gaussian(1)));
  Polynomial out(m);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(m, c);
    for (std::size_t a = 0; a < nvars_; ++a) {
      while (powers[a].size() <= e[a]) powers[a].push_back(powers[a].back() * q[a]);
      if (e[a] > 0) term = term * powers[a][e[a]];
    }
    out += term;
  }
  return out;
}

Polynomial Polynomial::compose_linear(const Matrix<Gaussian>& m) const {
  if (m.rows() != nvars_ || m.cols() != nvars_) throw DimensionMismatch("compose_linear: matrix has the wrong size");
  std::vector<Polynomial> q;
  for (std::size_t a = 0; a < nvars_; ++a) q.push_back(linear(m.row(a)));
  return substitute(q);
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial out = constant(nvars_, Gaussian(1));
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw DimensionMismatch("polynomial sum: variable counts differ");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.nvars_ != nvars_) throw DimensionMismatch("polynomial difference: variable counts differ");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw DimensionMismatch("polynomial product: variable counts differ");
  Polynomial out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial operator*(const Gaussian& c, const Polynomial& p) {
  Polynomial out(p.nvars_);
  for (const auto& [e, v] : p.terms_) out.add_term(e, c * v);
  return out;
}

std::vector<Exponents> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Exponents> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Exponents e(nvars, 0);
  // Recursive fill of the remaining budget over variables a..n-1.
  auto fill = [&](auto&& self, std::size_t a, unsigned budget) -> void {
    if (a + 1 == nvars) {
      e[a] = budget;
      out.push_back(e);
      return;
    }
    for (unsigned k = budget + 1; k-- > 0;) {
      e[a] = k;
      self(self, a + 1, budget - k);
    }
  };
  fill(fill, 0, d);
  return out;
}

Polynomial random_polynomial(std::size_t nvars, unsigned min_degree, unsigned max_degree, RationalSampler& rng) {
  Polynomial p(nvars);
  for (unsigned d = min_degree; d <= max_degree; ++d)
    for (const auto& e : monomials_of_degree(nvars, d)) p.add_term(e, rng.gaussian());
  return p;
}

}  // namespace symtrans
