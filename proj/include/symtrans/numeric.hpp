#pragma once

// Exact scalars, dense matrices and subspaces over Q and Q(i).
//
// Everything here is exact. The only way out to floating point is the
// explicit to_double family at the bottom of the file.

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <type_traits>
#include <vector>

#include "symtrans/errors.hpp"

namespace symtrans {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Scalar = mpq_class;

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

/// Element of Q(i).
struct Gaussian {
  Scalar re;
  Scalar im;

  Gaussian() : re(0), im(0) {}
  Gaussian(int v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Scalar r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian imag_unit() { return {Scalar(0), Scalar(1)}; }

  Gaussian conj() const { return {re, -im}; }
  Scalar norm() const { return Scalar(re * re + im * im); }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Scalar r = re * o.re - im * o.im;
    Scalar i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    Scalar d = o.norm();
    if (is_zero(d)) throw Singular("division by zero in Q(i)");
    Scalar r = (re * o.re + im * o.im) / d;
    Scalar i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {Scalar(-a.re), Scalar(-a.im)}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

inline bool is_zero(const Gaussian& g) { return is_zero(g.re) && is_zero(g.im); }

/// Canonical text form: "p/q", or "p" when q = 1.
std::string to_string(const Scalar& s);
std::string to_string(const Gaussian& g);

/// Strict parser for "p", "-p", "p/q" with q > 0. Non-reduced input is reduced.
Scalar parse_scalar(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Gaussian& g);

template <typename T>
using Vector = std::vector<T>;

template <typename T>
Vector<T> zero_vector(std::size_t n) {
  return Vector<T>(n, T(0));
}

template <typename T>
Vector<T> unit_vector(std::size_t n, std::size_t i) {
  Vector<T> v(n, T(0));
  v.at(i) = T(1);
  return v;
}

template <typename T>
bool is_zero(const Vector<T>& v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return is_zero(x); });
}

template <typename T>
Vector<T> operator+(const Vector<T>& a, const Vector<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum: sizes differ");
  Vector<T> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

template <typename T>
Vector<T> operator-(const Vector<T>& a, const Vector<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference: sizes differ");
  Vector<T> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

template <typename T>
Vector<T> scaled(const T& c, const Vector<T>& v) {
  Vector<T> r(v);
  for (auto& x : r) x *= c;
  return r;
}

/// Dense row-major matrix.
template <typename T>
class Matrix;

/// Rational product with denominators cleared per row and column, so the
/// inner products run over integers.
Matrix<Scalar> multiply_rational(const Matrix<Scalar>& a, const Matrix<Scalar>& b);

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_columns(std::size_t rows, const std::vector<Vector<T>>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw DimensionMismatch("column has wrong length");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector<T> column(std::size_t c) const {
    Vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  std::vector<Vector<T>> columns() const {
    std::vector<Vector<T>> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
    return out;
  }
  Vector<T> row(std::size_t r) const { return Vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return symtrans::is_zero(x); });
  }

  /// Columns of *this followed by the columns of other.
  Matrix hconcat(const Matrix& other) const {
    if (other.rows_ != rows_) throw DimensionMismatch("hconcat: row counts differ");
    Matrix m(rows_, cols_ + other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c);
      for (std::size_t c = 0; c < other.cols_; ++c) m(r, cols_ + c) = other(r, c);
    }
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(const T& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend Matrix operator*(const T& c, Matrix a) { return a *= c; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
    if constexpr (std::is_same_v<T, Scalar>) return multiply_rational(a, b);
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (symtrans::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend Vector<T> operator*(const Matrix& a, const Vector<T>& v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector product: sizes differ");
    Vector<T> r(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (!symtrans::is_zero(v[k])) r[i] += a(i, k) * v[k];
    return r;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void check_same_shape(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
T dot(const Vector<T>& a, const Vector<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: sizes differ");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <typename T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

template <typename T>
T trace(const Matrix<T>& m) {
  if (!m.is_square()) throw NonSquare("trace of a non-square matrix");
  T s(0);
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

template <typename T>
struct RrefResult {
  Matrix<T> reduced;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <typename T>
RrefResult<T> rref(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    const T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      const T f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

/// Basis (as columns) of {x : m x = 0}, one vector per free column.
template <typename T>
Matrix<T> kernel_basis(const Matrix<T>& m) {
  const auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red(r, free);
    basis.push_back(std::move(v));
  }
  return Matrix<T>::from_columns(m.cols(), basis);
}

/// Determinant by Bareiss fraction-free elimination.
template <typename T>
T det(Matrix<T> m) {
  if (!m.is_square()) throw NonSquare("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  T sign(1);
  T prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return T(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(m(p, c), m(k, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& m) {
  if (!m.is_square()) throw NonSquare("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  auto [red, pivots] = rref(m.hconcat(Matrix<T>::identity(n)));
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Singular("matrix is singular");
  Matrix<T> inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = red(r, n + c);
  return inv;
}

/// One particular solution of m x = b, or nothing if inconsistent.
template <typename T>
std::optional<Vector<T>> solve_particular(const Matrix<T>& m, const Vector<T>& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("solve: rhs has wrong length");
  Matrix<T> aug = m.hconcat(Matrix<T>::from_columns(m.rows(), {b}));
  const auto [red, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vector<T> x(m.cols(), T(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = red(r, m.cols());
  return x;
}

/// A subspace of T^ambient, held as a matrix of independent columns.
///
/// Equality compares spans, not bases.
template <typename T>
class BasicSubspace {
 public:
  BasicSubspace() = default;

  /// Span of the given columns; dependent columns are dropped.
  static BasicSubspace span(std::size_t ambient, const std::vector<Vector<T>>& vectors) {
    return span(Matrix<T>::from_columns(ambient, vectors));
  }

  static BasicSubspace span(const Matrix<T>& columns) {
    const auto pivots = rref(columns).pivots;
    std::vector<Vector<T>> independent;
    independent.reserve(pivots.size());
    for (auto p : pivots) independent.push_back(columns.column(p));
    BasicSubspace s;
    s.ambient_ = columns.rows();
    s.basis_ = Matrix<T>::from_columns(columns.rows(), independent);
    return s;
  }

  static BasicSubspace zero(std::size_t ambient) {
    BasicSubspace s;
    s.ambient_ = ambient;
    s.basis_ = Matrix<T>(ambient, 0);
    return s;
  }

  static BasicSubspace full(std::size_t ambient) { return span(Matrix<T>::identity(ambient)); }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const Matrix<T>& basis() const { return basis_; }
  std::vector<Vector<T>> basis_vectors() const { return basis_.columns(); }

  /// Basis in reduced echelon form; identical for equal subspaces.
  Matrix<T> canonical_basis() const {
    const auto [red, pivots] = rref(basis_.transpose());
    Matrix<T> out(ambient_, pivots.size());
    for (std::size_t r = 0; r < pivots.size(); ++r)
      for (std::size_t c = 0; c < ambient_; ++c) out(c, r) = red(r, c);
    return out;
  }

  bool contains(const Vector<T>& v) const {
    if (v.size() != ambient_) throw DimensionMismatch("subspace membership: vector has wrong length");
    return rank(basis_.hconcat(Matrix<T>::from_columns(ambient_, {v}))) == dim();
  }

  bool contains(const BasicSubspace& other) const {
    check_ambient(other);
    return rank(basis_.hconcat(other.basis_)) == dim();
  }

  BasicSubspace operator+(const BasicSubspace& other) const {
    check_ambient(other);
    return span(basis_.hconcat(other.basis_));
  }

  /// Image under a square matrix acting on the ambient space.
  friend BasicSubspace operator*(const Matrix<T>& g, const BasicSubspace& w) {
    if (g.cols() != w.ambient_) throw DimensionMismatch("subspace image: matrix has wrong width");
    return span(g * w.basis_);
  }

  friend bool operator==(const BasicSubspace& a, const BasicSubspace& b) {
    if (a.ambient_ != b.ambient_ || a.dim() != b.dim()) return false;
    return rank(a.basis_.hconcat(b.basis_)) == a.dim();
  }
  friend bool operator!=(const BasicSubspace& a, const BasicSubspace& b) { return !(a == b); }

 private:
  void check_ambient(const BasicSubspace& other) const {
    if (other.ambient_ != ambient_) throw DimensionMismatch("subspaces live in different spaces");
  }

  std::size_t ambient_ = 0;
  Matrix<T> basis_;
};

using Subspace = BasicSubspace<Scalar>;
using ComplexSubspace = BasicSubspace<Gaussian>;

template <typename T>
BasicSubspace<T> kernel(const Matrix<T>& m) {
  return BasicSubspace<T>::span(kernel_basis(m));
}

/// Seeded generator of bounded random rationals.
///
/// Numerators are uniform in [-max_num, max_num], denominators in [1, max_den].
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed, long max_num = 10, long max_den = 10)
      : rng_(seed), max_num_(max_num), max_den_(max_den) {}

  Scalar scalar();
  Scalar nonzero_scalar();
  Gaussian gaussian();
  Vector<Scalar> vector(std::size_t n);
  Matrix<Scalar> matrix(std::size_t rows, std::size_t cols);
  Matrix<Scalar> symmetric_matrix(std::size_t n);
  /// Random invertible matrix (retries on singular draws).
  Matrix<Scalar> invertible_matrix(std::size_t n);
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  bool coin();
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  long max_num_;
  long max_den_;
};

// Conversion barrier to floating point. Only the geodesic integrator uses these.
double to_double(const Scalar& s);
std::complex<double> to_complex(const Gaussian& g);
std::vector<double> to_double(const Vector<Scalar>& v);
Matrix<double> to_double(const Matrix<Scalar>& m);


}  // namespace symtrans
