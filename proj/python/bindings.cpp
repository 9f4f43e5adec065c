#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "symtrans/affine_group.hpp"
#include "symtrans/cli.hpp"
#include "symtrans/io.hpp"

namespace py = pybind11;
using namespace symtrans;

namespace {

// Rationals cross the boundary as fractions.Fraction; anything whose str()
// parses as "p" or "p/q" is accepted on the way in.
py::object fraction(const Scalar& s) { return py::module_::import("fractions").attr("Fraction")(to_string(s)); }

py::list fractions(const Vector<Scalar>& v) {
  py::list out;
  for (const auto& x : v) out.append(fraction(x));
  return out;
}

py::list fraction_matrix(const Matrix<Scalar>& m) {
  py::list rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.append(fractions(m.row(r)));
  return rows;
}

Vector<Scalar> rational_vector(const py::sequence& seq) {
  Vector<Scalar> v;
  for (const auto& item : seq) v.push_back(parse_scalar(py::str(item).cast<std::string>()));
  return v;
}

py::list subspace_basis(const Subspace& w) {
  py::list out;
  const auto b = w.canonical_basis();
  for (std::size_t c = 0; c < b.cols(); ++c) out.append(fractions(b.column(c)));
  return out;
}

py::dict check_cubic(const std::string& text) {
  const CubicForm s = parse_cubic(text);
  const StratumReport r = in_c_sp(s);
  py::dict d;
  d["in_variety"] = r.in_variety;
  d["isotropic"] = r.isotropic;
  d["k"] = r.k;
  d["translation_dim"] = r.translation_dim ? py::cast(*r.translation_dim) : py::none();
  d["support"] = subspace_basis(r.support);
  d["commutator_witness"] = r.commutator_witness ? py::cast(*r.commutator_witness) : py::none();
  return d;
}

py::dict sk_verify(const std::string& text, std::size_t points, std::uint64_t seed) {
  const SKStructure s(parse_potential(text));
  const SKReport r = check_flat_sk(s, points, seed);
  py::dict d;
  for (const auto& c : r.conditions) d[py::str(c.name)] = c.pass;
  return d;
}

py::dict geodesic_py(const std::string& text, const py::sequence& p0, const py::sequence& v0, double t_end,
                     double dt, const std::string& connection) {
  const SKStructure s(parse_potential(text));
  const Connection c = connection == "D" ? Connection::Flat : Connection::Special;
  const GeodesicResult g = geodesic(s, c, rational_vector(p0), rational_vector(v0), t_end, dt);
  py::dict d;
  d["times"] = g.numeric.times;
  d["points"] = g.numeric.points;
  d["closed_form"] = g.closed_form ? py::cast(g.closed_form->points) : py::none();
  d["sup_deviation"] = g.sup_deviation ? py::cast(*g.sup_deviation) : py::none();
  return d;
}

py::tuple run_cli(const std::string& command, const std::vector<std::string>& inputs, std::uint64_t seed,
                  std::size_t trials, bool structured) {
  cli::RunConfig config;
  const auto cmd = cli::parse_command(command);
  if (!cmd) throw py::value_error("unknown command: " + command);
  config.command = *cmd;
  config.inputs = inputs;
  config.seed = seed;
  config.trials = trials;
  config.format = structured ? cli::Format::Structured : cli::Format::Text;
  std::ostringstream out, err;
  const int code = cli::run(config, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(symtrans, m) {
  m.doc() = "Symplectic cubic forms, their simply transitive affine groups and flat special Kahler structures";

  py::register_exception<Error>(m, "SymtransError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("check", &check_cubic, py::arg("cubic_text"), "Membership of a cubic form file in C(sp(V)).");
  m.def(
      "sample_cubic",
      [](std::size_t n, std::size_t k, std::uint64_t seed) {
        RationalSampler rng(seed);
        const SymplecticSpace sp = SymplecticSpace::darboux(n);
        return write_cubic(sample_regular(sp, random_isotropic(sp, k, rng), rng));
      },
      py::arg("n"), py::arg("k"), py::arg("seed") = 0, "Regular cubic form on a random isotropic k-plane.");
  m.def(
      "sample_potential",
      [](std::size_t p, std::size_t q, std::size_t k, unsigned degree, std::uint64_t seed) {
        RationalSampler rng(seed);
        return write_potential(sample_isotropic_potential(HermitianSpace(p, q), k, degree, rng).potential);
      },
      py::arg("p"), py::arg("q"), py::arg("k"), py::arg("degree") = 3, py::arg("seed") = 0);
  m.def(
      "exp_element",
      [](const std::string& text, const py::sequence& x) {
        const AffineMap a = GroupChart(parse_cubic(text)).exp_element(rational_vector(x));
        return py::make_tuple(fraction_matrix(a.linear), fractions(a.translation));
      },
      py::arg("cubic_text"), py::arg("x"), "exp(rho(x)) as (linear part, translation).");
  m.def(
      "orbit_map",
      [](const std::string& text, const py::sequence& x) {
        return fractions(GroupChart(parse_cubic(text)).orbit_map(rational_vector(x)));
      },
      py::arg("cubic_text"), py::arg("x"));
  m.def(
      "orbit_map_inverse",
      [](const std::string& text, const py::sequence& y) {
        return fractions(GroupChart(parse_cubic(text)).orbit_map_inverse(rational_vector(y)));
      },
      py::arg("cubic_text"), py::arg("y"));
  m.def("sk_verify", &sk_verify, py::arg("potential_text"), py::arg("points") = 5, py::arg("seed") = 0,
        "Pass/fail per flat special Kahler condition.");
  m.def("geodesic", &geodesic_py, py::arg("potential_text"), py::arg("p0"), py::arg("v0"), py::arg("t_end") = 1.0,
        py::arg("dt") = 1e-3, py::arg("connection") = "nabla");
  m.def(
      "max_isotropic_dim", [](std::size_t p, std::size_t q) { return max_isotropic_dim(HermitianSpace(p, q)); },
      py::arg("p"), py::arg("q"));
  m.def(
      "rigidity",
      [](std::size_t p, std::size_t q) {
        const RigidityCertificate c = rigidity_certificate(HermitianSpace(p, q));
        py::dict d;
        d["anticommuting_dim"] = c.anticommuting_dim;
        d["gram_positive_definite"] = c.gram_positive_definite;
        d["trivial"] = c.trivial();
        return d;
      },
      py::arg("p"), py::arg("q"));
  m.def("run", &run_cli, py::arg("command"), py::arg("inputs"), py::arg("seed") = 0, py::arg("trials") = 100,
        py::arg("structured") = true, "Run a CLI command; returns (exit code, stdout, stderr).");
}
