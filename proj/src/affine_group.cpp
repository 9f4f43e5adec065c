#include "symtrans/affine_group.hpp"

#include <string>

namespace symtrans {

GroupChart::GroupChart(CubicForm cubic) : cubic_(std::move(cubic)) {
  const StratumReport r = in_c_sp(cubic_);
  if (!r.in_variety) {
    std::string why = "cubic form is not in C(sp(V))";
    if (r.commutator_witness)
      why += ": [S_e" + std::to_string(r.commutator_witness->first) + ", S_e" +
             std::to_string(r.commutator_witness->second) + "] != 0";
    else if (r.trace_witness)
      why += ": tr S_e" + std::to_string(*r.trace_witness) + " != 0";
    throw NotInVariety(why);
  }
  family_ = endo_family(cubic_);
}

AffineMap GroupChart::rho(const Vector<Scalar>& x) const { return {family_.at(x), x}; }

AffineMap GroupChart::exp_element(const Vector<Scalar>& x) const {
  const Matrix<Scalar> sx = family_.at(x);
  Vector<Scalar> half_sxx = sx * x;
  for (auto& c : half_sxx) c /= 2;
  return {Matrix<Scalar>::identity(dim()) + sx, x + half_sxx};
}

Vector<Scalar> GroupChart::orbit_map(const Vector<Scalar>& x) const { return exp_element(x).translation; }

Vector<Scalar> GroupChart::orbit_map_inverse(const Vector<Scalar>& y) const {
  Vector<Scalar> half = family_.apply(y, y);
  for (auto& c : half) c /= 2;
  return y - half;
}

Matrix<Scalar> GroupChart::orbit_differential(const Vector<Scalar>& v) const {
  const std::size_t d = dim();
  Matrix<Scalar> m = Matrix<Scalar>::identity(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Vector<Scalar> col = family_.mats[i] * v;
    for (std::size_t r = 0; r < d; ++r) m(r, i) += col[r];
  }
  return m;
}

Subspace GroupChart::translation_subgroup() const {
  // X -> S_X as a (d*d) x d matrix: column i is S_{e_i} flattened.
  const std::size_t d = dim();
  Matrix<Scalar> flat(d * d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) flat(r * d + c, i) = family_.mats[i](r, c);
  Subspace ker = kernel(flat);
  if (2 * (d - ker.dim()) > d) throw std::logic_error("support dimension exceeds n for an in-variety form");
  return ker;
}

TransitivityReport verify_simply_transitive_at(const CubicForm& s, const std::vector<Vector<Scalar>>& points) {
  const EndoFamily family = endo_family(s);
  const std::size_t d = s.dim();
  TransitivityReport report;
  for (const auto& v : points) {
    Matrix<Scalar> m = Matrix<Scalar>::identity(d);
    for (std::size_t i = 0; i < d; ++i) {
      const Vector<Scalar> col = family.mats[i] * v;
      for (std::size_t r = 0; r < d; ++r) m(r, i) += col[r];
    }
    ++report.checked;
    Scalar dt = det(m);
    if (dt != 1) {
      report.pass = false;
      report.witness = v;
      report.witness_det = std::move(dt);
      break;
    }
  }
  return report;
}

TransitivityReport verify_simply_transitive(const CubicForm& s, std::size_t samples, RationalSampler& rng) {
  std::vector<Vector<Scalar>> points;
  points.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) points.push_back(rng.vector(s.dim()));
  return verify_simply_transitive_at(s, points);
}

TransitivityReport verify_simply_transitive(const CubicForm& s, std::size_t samples, std::uint64_t seed) {
  RationalSampler rng(seed);
  return verify_simply_transitive(s, samples, rng);
}

std::size_t orthogonal_prolongation_dim(const Matrix<Scalar>& metric) {
  if (!metric.is_square()) throw NonSquare("metric must be square");
  const std::size_t d = metric.rows();
  // Unknowns T(r; i, j) = (S_{e_i} e_j)_r with i <= j.
  std::vector<std::size_t> pair_index(d * d);
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      pair_index[i * d + j] = pairs;
      pair_index[j * d + i] = pairs;
      ++pairs;
    }
  auto unknown = [&](std::size_t r, std::size_t i, std::size_t j) { return r * pairs + pair_index[i * d + j]; };
  // For each X = e_i and each (j, l) with j <= l: g(S_i e_j, e_l) + g(e_j, S_i e_l) = 0.
  std::vector<Vector<Scalar>> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = j; l < d; ++l) {
        Vector<Scalar> row(d * pairs, Scalar(0));
        for (std::size_t r = 0; r < d; ++r) {
          row[unknown(r, i, j)] += metric(r, l);
          row[unknown(r, i, l)] += metric(j, r);
        }
        rows.push_back(std::move(row));
      }
  return d * pairs - rank(Matrix<Scalar>::from_columns(d * pairs, rows).transpose());
}

}  // namespace symtrans
