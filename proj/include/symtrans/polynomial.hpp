#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "symtrans/numeric.hpp"

namespace symtrans {

using Exponents = std::vector<std::uint32_t>;

/// Multivariate polynomial in z_1..z_n with Q(i) coefficients.
///
/// Holomorphic by construction: there are no conjugate variables. Zero
/// coefficients are never stored.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Gaussian& c);
  static Polynomial variable(std::size_t nvars, std::size_t i);
  /// sum_a coeffs[a] z_a.
  static Polynomial linear(const Vector<Gaussian>& coeffs);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Gaussian>& terms() const { return terms_; }
  Gaussian coefficient(const Exponents& e) const;
  /// Adds c * z^e to the polynomial.
  void add_term(const Exponents& e, const Gaussian& c);

  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;

  Polynomial derivative(std::size_t var) const;
  Gaussian evaluate(const Vector<Gaussian>& z) const;
  std::complex<double> evaluate(const std::vector<std::complex<double>>& z) const;

  /// p(q_1(w), ..., q_n(w)); every q_a must share one variable count.
  Polynomial substitute(const std::vector<Polynomial>& q) const;
  /// p(M w) for a square matrix M.
  Polynomial compose_linear(const Matrix<Gaussian>& m) const;
  Polynomial pow(unsigned k) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Gaussian& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  std::size_t nvars_;
  std::map<Exponents, Gaussian> terms_;
};

/// Random polynomial with one random Q(i) coefficient per monomial of total
/// degree in [min_degree, max_degree].
Polynomial random_polynomial(std::size_t nvars, unsigned min_degree, unsigned max_degree, RationalSampler& rng);

/// All exponent vectors of total degree exactly d, in descending lexicographic order.
std::vector<Exponents> monomials_of_degree(std::size_t nvars, unsigned d);

}  // namespace symtrans
