#include "symtrans/numeric.hpp"

#include <cctype>

namespace symtrans {

Matrix<Scalar> multiply_rational(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  const std::size_t n = a.rows(), inner = a.cols(), m = b.cols();
  std::vector<mpz_class> row_den(n, 1), col_den(m, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) mpz_lcm(row_den[i].get_mpz_t(), row_den[i].get_mpz_t(), a(i, k).get_den_mpz_t());
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < inner; ++k) mpz_lcm(col_den[j].get_mpz_t(), col_den[j].get_mpz_t(), b(k, j).get_den_mpz_t());
  std::vector<mpz_class> ai(n * inner), bi(inner * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) ai[i * inner + k] = a(i, k).get_num() * (row_den[i] / a(i, k).get_den());
  for (std::size_t k = 0; k < inner; ++k)
    for (std::size_t j = 0; j < m; ++j) bi[k * m + j] = b(k, j).get_num() * (col_den[j] / b(k, j).get_den());
  Matrix<Scalar> out(n, m);
  mpz_class acc;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < inner; ++k) {
        const mpz_class& x = ai[i * inner + k];
        if (sgn(x) != 0) mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), bi[k * m + j].get_mpz_t());
      }
      if (sgn(acc) == 0) continue;
      Scalar& r = out(i, j);
      r.get_num() = acc;
      r.get_den() = row_den[i] * col_den[j];
      r.canonicalize();
    }
  return out;
}

std::string to_string(const Scalar& s) {
  if (s.get_den() == 1) return s.get_num().get_str();
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

std::string to_string(const Gaussian& g) {
  if (is_zero(g.im)) return to_string(g.re);
  std::string out;
  if (!is_zero(g.re)) out = to_string(g.re) + (sgn(g.im) > 0 ? "+" : "");
  return out + to_string(g.im) + "i";
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << to_string(g); }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view digits = num;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits) || !all_digits(den)) throw ParseError("malformed rational '" + std::string(text) + "'");
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

Scalar RationalSampler::scalar() {
  std::uniform_int_distribution<long> num(-max_num_, max_num_);
  std::uniform_int_distribution<long> den(1, max_den_);
  const long p = num(rng_);
  const long q = den(rng_);
  Scalar s(p, q);
  s.canonicalize();
  return s;
}

Scalar RationalSampler::nonzero_scalar() {
  for (;;) {
    Scalar s = scalar();
    if (!is_zero(s)) return s;
  }
}

Gaussian RationalSampler::gaussian() {
  Scalar re = scalar();
  Scalar im = scalar();
  return {std::move(re), std::move(im)};
}

Vector<Scalar> RationalSampler::vector(std::size_t n) {
  Vector<Scalar> v(n);
  for (auto& x : v) x = scalar();
  return v;
}

Matrix<Scalar> RationalSampler::matrix(std::size_t rows, std::size_t cols) {
  Matrix<Scalar> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar();
  return m;
}

Matrix<Scalar> RationalSampler::symmetric_matrix(std::size_t n) {
  Matrix<Scalar> m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      m(r, c) = scalar();
      m(c, r) = m(r, c);
    }
  return m;
}

Matrix<Scalar> RationalSampler::invertible_matrix(std::size_t n) {
  for (;;) {
    Matrix<Scalar> m = matrix(n, n);
    if (!is_zero(det(m))) return m;
  }
}

std::int64_t RationalSampler::integer(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
}

bool RationalSampler::coin() { return integer(0, 1) == 1; }

double to_double(const Scalar& s) { return s.get_d(); }

std::complex<double> to_complex(const Gaussian& g) { return {g.re.get_d(), g.im.get_d()}; }

std::vector<double> to_double(const Vector<Scalar>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

Matrix<double> to_double(const Matrix<Scalar>& m) {
  Matrix<double> out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c).get_d();
  return out;
}

}  // namespace symtrans
