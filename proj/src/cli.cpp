#include "symtrans/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "symtrans/affine_group.hpp"
#include "symtrans/io.hpp"

namespace symtrans::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::Check, "check"},   {Command::Stratum, "stratum"},   {Command::Group, "group"},
    {Command::Orbit, "orbit"},   {Command::Transitivity, "transitivity"}, {Command::SkVerify, "sk-verify"},
    {Command::Geodesic, "geodesic"}, {Command::Sample, "sample"},
};

json to_json(const Vector<Scalar>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

json to_json(const Vector<Gaussian>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

template <typename T>
json basis_json(const BasicSubspace<T>& w) {
  json a = json::array();
  const auto b = w.canonical_basis();
  for (std::size_t c = 0; c < b.cols(); ++c) a.push_back(to_json(b.column(c)));
  return a;
}

json doubles_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

class Builder {
 public:
  explicit Builder(Report& r) : r_(r) {}
  void fact(const std::string& key, json value) { r_.facts[key] = std::move(value); }
  void verdict(std::string check, bool pass, json witness = nullptr) {
    r_.verdicts.push_back({std::move(check), pass, pass ? json(nullptr) : std::move(witness)});
  }

 private:
  Report& r_;
};

const std::string& first_input(const RunConfig& c) {
  if (c.inputs.empty()) throw ParseError("missing input file");
  return c.inputs.front();
}

CubicForm load_cubic(const RunConfig& c) { return parse_cubic(read_text_file(first_input(c))); }
HoloPotential load_potential(const RunConfig& c) { return parse_potential(read_text_file(first_input(c))); }

json membership_witness(const StratumReport& r) {
  const std::size_t d = r.support.ambient_dim();
  if (r.commutator_witness)
    return {{"X", to_json(unit_vector<Scalar>(d, r.commutator_witness->first))},
            {"Y", to_json(unit_vector<Scalar>(d, r.commutator_witness->second))},
            {"reason", "[S_X, S_Y] != 0"}};
  if (r.trace_witness) return {{"X", to_json(unit_vector<Scalar>(d, *r.trace_witness))}, {"reason", "tr S_X != 0"}};
  return nullptr;
}

void stratum_facts(Builder& b, const CubicForm& s, const StratumReport& r) {
  b.fact("n", s.space().n());
  b.fact("k", r.k);
  b.fact("isotropic", r.isotropic);
  b.fact("in_variety", r.in_variety);
  b.fact("translation_dim", r.translation_dim ? json(*r.translation_dim) : json(nullptr));
  b.fact("support", basis_json(r.support));
}

void run_check(const RunConfig& c, Builder& b) {
  const CubicForm s = load_cubic(c);
  const StratumReport r = in_c_sp(s);
  stratum_facts(b, s, r);
  b.verdict("in_variety", r.in_variety, membership_witness(r));
  b.verdict("criteria_agree", r.criteria_agree(), {{"in_variety", r.in_variety}, {"isotropic", r.isotropic}});
  if (r.in_variety) b.verdict("stratum_bound", r.k <= s.space().n(), {{"k", r.k}, {"n", s.space().n()}});
}

void run_stratum(const RunConfig& c, Builder& b) {
  const CubicForm s = load_cubic(c);
  const StratumReport r = in_c_sp(s);
  stratum_facts(b, s, r);
  b.fact("lagrangian", r.isotropic && r.k == s.space().n());
  b.verdict("in_variety", r.in_variety, membership_witness(r));
  if (!r.in_variety) return;
  b.verdict("stratum_bound", r.k <= s.space().n(), {{"k", r.k}, {"n", s.space().n()}});
  const Subspace translations = GroupChart(s).translation_subgroup();
  b.fact("translations", basis_json(translations));
  b.verdict("translation_dim", translations.dim() == s.dim() - r.k,
            {{"kernel_dim", translations.dim()}, {"expected", s.dim() - r.k}});
}

/// GroupChart or a fail verdict carrying the membership witness.
std::optional<GroupChart> chart_or_fail(const CubicForm& s, Builder& b) {
  const StratumReport r = in_c_sp(s);
  b.fact("k", r.k);
  b.verdict("in_variety", r.in_variety, membership_witness(r));
  if (!r.in_variety) return std::nullopt;
  return GroupChart(s);
}

void run_group(const RunConfig& c, Builder& b) {
  const CubicForm s = load_cubic(c);
  const auto chart = chart_or_fail(s, b);
  if (!chart) return;
  const std::size_t d = s.dim();
  RationalSampler rng(c.seed);
  json law_witness = nullptr, comm_witness = nullptr;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto x = rng.vector(d);
    const auto y = rng.vector(d);
    const AffineMap ex = chart->exp_element(x);
    const AffineMap ey = chart->exp_element(y);
    if (law_witness.is_null() && ex * ey != chart->exp_element(x + y)) law_witness = {{"x", to_json(x)}, {"y", to_json(y)}};
    if (comm_witness.is_null() && ex * ey != ey * ex) comm_witness = {{"x", to_json(x)}, {"y", to_json(y)}};
  }
  b.verdict("group_law", law_witness.is_null(), law_witness);
  b.verdict("commutativity", comm_witness.is_null(), comm_witness);
  const auto product = product_witness(chart->family());
  b.verdict("nilpotency", !product,
            product ? json{{"X", to_json(unit_vector<Scalar>(d, product->first))},
                           {"Y", to_json(unit_vector<Scalar>(d, product->second))},
                           {"reason", "S_X S_Y != 0"}}
                    : json(nullptr));
  const std::size_t k = support(chart->family()).dim();
  const std::size_t kernel_dim = chart->translation_subgroup().dim();
  b.fact("translation_dim", kernel_dim);
  b.verdict("translation_dim", kernel_dim == d - k && k <= s.space().n(),
            {{"kernel_dim", kernel_dim}, {"k", k}, {"n", s.space().n()}});
}

void run_orbit(const RunConfig& c, Builder& b) {
  const CubicForm s = load_cubic(c);
  const auto chart = chart_or_fail(s, b);
  if (!chart) return;
  RationalSampler rng(c.seed);
  json fwd = nullptr, back = nullptr;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto x = rng.vector(s.dim());
    if (fwd.is_null() && chart->orbit_map_inverse(chart->orbit_map(x)) != x) fwd = {{"x", to_json(x)}};
    if (back.is_null() && chart->orbit_map(chart->orbit_map_inverse(x)) != x) back = {{"y", to_json(x)}};
  }
  b.verdict("inverse_after_orbit", fwd.is_null(), fwd);
  b.verdict("orbit_after_inverse", back.is_null(), back);
}

void run_transitivity(const RunConfig& c, Builder& b) {
  const CubicForm s = load_cubic(c);
  RationalSampler rng(c.seed);
  const TransitivityReport r = verify_simply_transitive(s, c.trials, rng);
  b.fact("points_checked", r.checked);
  b.verdict("unipotent_differential", r.pass,
            r.witness ? json{{"v", to_json(*r.witness)}, {"det", to_string(*r.witness_det)}} : json(nullptr));
}

void run_sk_verify(const RunConfig& c, Builder& b) {
  const SKStructure s(load_potential(c));
  const HermitianSpace& space = s.space();
  b.fact("n", space.n());
  b.fact("signature", json::array({space.p(), space.q()}));
  b.fact("degree", s.potential().poly.degree());
  b.fact("constant_cubic", s.constant_cubic());
  b.fact("max_isotropic_dim", max_isotropic_dim(space));

  RationalSampler rng(c.seed);
  std::vector<Vector<Scalar>> points;
  for (std::size_t t = 0; t < c.trials; ++t) points.push_back(rng.vector(space.dim()));
  const SKReport r = check_flat_sk(s, points);
  b.fact("points_checked", r.points_checked);
  for (const auto& cond : r.conditions) {
    json w = nullptr;
    if (!cond.pass) {
      w = {{"point", to_json(*cond.point)}};
      if (!cond.indices.empty()) w["indices"] = cond.indices;
    }
    b.verdict(cond.name, cond.pass, w);
  }

  // Complex support dimension against min(p, q) wherever the support is isotropic.
  std::size_t max_dim = 0;
  json bound_witness = nullptr;
  for (const auto& x : points) {
    const ComplexSubspace w = holomorphic_support(space, s.third_derivatives(space.complex_coords(x)));
    if (!space.is_isotropic(w)) continue;
    max_dim = std::max(max_dim, w.dim());
    if (w.dim() > max_isotropic_dim(space) && bound_witness.is_null())
      bound_witness = {{"point", to_json(x)}, {"support_dim", w.dim()}};
  }
  b.fact("max_support_dim", max_dim);
  b.verdict("stratification_bound", bound_witness.is_null(), bound_witness);

  if (s.constant_cubic() && r.condition("isotropic_support").pass) {
    const auto split = trivial_factor_split(s);
    b.fact("trivial_factor", split.has_value());
    if (split) {
      b.fact("flat_factor", basis_json(split->flat));
      b.fact("core_factor", basis_json(split->core));
    }
  }
}

Vector<Scalar> vector_or_random(const std::optional<std::string>& text, std::size_t d, RationalSampler& rng,
                                const char* what) {
  if (!text) return rng.vector(d);
  Vector<Scalar> v = parse_vector(*text);
  if (v.size() != d)
    throw DimensionMismatch(std::string(what) + " needs " + std::to_string(d) + " coordinates");
  return v;
}

void run_geodesic(const RunConfig& c, Builder& b) {
  const SKStructure s(load_potential(c));
  const std::size_t d = s.space().dim();
  RationalSampler rng(c.seed);
  const Vector<Scalar> p0 = vector_or_random(c.point, d, rng, "--point");
  const Vector<Scalar> v0 = vector_or_random(c.velocity, d, rng, "--velocity");
  const GeodesicResult g = geodesic(s, c.connection, p0, v0, c.t_end, c.dt);

  b.fact("connection", c.connection == Connection::Flat ? "D" : "nabla");
  b.fact("p0", to_json(p0));
  b.fact("v0", to_json(v0));
  b.fact("steps", g.numeric.times.size() - 1);
  b.fact("end_point", doubles_json(g.numeric.points.back()));
  b.fact("constant_cubic", s.constant_cubic());
  if (g.sup_deviation) {
    b.fact("sup_deviation", *g.sup_deviation);
    b.verdict("closed_form_agreement", *g.sup_deviation < c.tolerance,
              {{"sup_deviation", *g.sup_deviation}, {"tolerance", c.tolerance}});
    double sup_conj = 0.0;
    for (std::size_t k = 0; k < g.numeric.times.size(); ++k)
      for (std::size_t i = 0; i < d; ++i)
        sup_conj = std::max(sup_conj, std::abs(g.conjugated->points[k][i] - g.numeric.points[k][i]));
    b.verdict("conjugated_form_agreement", sup_conj < c.tolerance,
              {{"sup_deviation", sup_conj}, {"tolerance", c.tolerance}});
    // Completeness: the closed form is a polynomial in t, defined for every t.
    bool finite = true;
    for (double t : {1e6, -1e6})
      for (double x : closed_form_geodesic(s, c.connection, p0, v0, t)) finite = finite && std::isfinite(x);
    b.verdict("completeness", finite, {{"t", json::array({1e6, -1e6})}});
  } else {
    b.fact("closed_form", "unavailable for a non-constant cubic");
  }
  if (c.output) {
    write_text_file(*c.output, trajectory_csv(g.numeric));
    b.fact("csv", *c.output);
  }
}

void run_sample(const RunConfig& c, Builder& b, Report& report) {
  RationalSampler rng(c.seed);
  std::string text;
  if (c.signature) {
    const auto [p, q] = *c.signature;
    if (c.n && *c.n != p + q) throw InvalidDimension("--n disagrees with --signature");
    const HermitianSpace space(p, q);
    const std::size_t k = c.k.value_or(max_isotropic_dim(space));
    const SampledPotential sp = sample_isotropic_potential(space, k, c.degree, rng);
    text = write_potential(sp.potential);
    const HoloPotential back = parse_potential(text);
    b.fact("signature", json::array({p, q}));
    b.fact("k", k);
    b.fact("degree", back.poly.degree());
    b.verdict("round_trip", back.poly == sp.potential.poly && write_potential(back) == text);
    const SKStructure s(back);
    const Vector<Scalar> x = rng.vector(space.dim());
    const ComplexSubspace w = holomorphic_support(space, s.third_derivatives(space.complex_coords(x)));
    b.verdict("support_in_isotropic_subspace", sp.support.contains(w) && space.is_isotropic(sp.support),
              {{"point", to_json(x)}});
  } else {
    if (!c.n) throw InvalidDimension("sample needs --n (or --signature)");
    const std::size_t n = *c.n;
    if (n == 0) throw InvalidDimension("--n must be positive");
    const std::size_t k = c.k.value_or(n);
    if (k > n) throw InvalidDimension("--k must not exceed --n");
    const SymplecticSpace sp = SymplecticSpace::darboux(n);
    const Subspace w = random_isotropic(sp, k, rng);
    const CubicForm s = sample_regular(sp, w, rng);
    text = write_cubic(s);
    const CubicForm back = parse_cubic(text);
    const StratumReport r = in_c_sp(back);
    b.fact("n", n);
    b.fact("k", k);
    b.verdict("round_trip", back == s && write_cubic(back) == text);
    b.verdict("stratum", r.in_variety && r.k == k, {{"k", r.k}, {"expected", k}, {"in_variety", r.in_variety}});
  }
  if (c.output) {
    write_text_file(*c.output, text);
    b.fact("output", *c.output);
  } else {
    report.payload = std::move(text);
  }
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, s] : kCommands)
    if (s == name) return c;
  return std::nullopt;
}

std::string command_name(Command c) {
  for (const auto& [cc, s] : kCommands)
    if (cc == c) return std::string(s);
  return "unknown";
}

std::uint64_t resolve_seed(const std::optional<std::string>& flag, const char* env_value) {
  std::string text;
  if (flag)
    text = *flag;
  else if (env_value && *env_value)
    text = env_value;
  else
    return 0;
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw ParseError("seed must be a 64-bit unsigned integer");
  return v;
}

std::pair<std::size_t, std::size_t> parse_signature(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("signature must look like p,q");
  std::size_t p = 0, q = 0;
  const auto a = text.substr(0, comma);
  const auto b = text.substr(comma + 1);
  const auto [pa, ea] = std::from_chars(a.data(), a.data() + a.size(), p);
  const auto [pb, eb] = std::from_chars(b.data(), b.data() + b.size(), q);
  if (ea != std::errc() || eb != std::errc() || pa != a.data() + a.size() || pb != b.data() + b.size())
    throw ParseError("signature must look like p,q");
  if (p + q == 0) throw ParseError("signature needs p + q > 0");
  return {p, q};
}

bool Report::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Report execute(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.command = command_name(config.command);
  Builder b(report);
  switch (config.command) {
    case Command::Check: run_check(config, b); break;
    case Command::Stratum: run_stratum(config, b); break;
    case Command::Group: run_group(config, b); break;
    case Command::Orbit: run_orbit(config, b); break;
    case Command::Transitivity: run_transitivity(config, b); break;
    case Command::SkVerify: run_sk_verify(config, b); break;
    case Command::Geodesic: run_geodesic(config, b); break;
    case Command::Sample: run_sample(config, b, report); break;
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string render(const Report& report, const RunConfig& config) {
  std::string out;
  std::size_t failed = 0;
  for (const auto& v : report.verdicts) failed += !v.pass;

  if (config.format == Format::Structured) {
    json header = {{"schema", "symtrans-report"}, {"version", 1},         {"command", report.command},
                   {"seed", config.seed},         {"trials", config.trials}, {"inputs", config.inputs}};
    out += header.dump() + "\n";
    json facts = {{"type", "facts"}};
    for (const auto& [key, value] : report.facts.items()) facts[key] = value;
    out += facts.dump() + "\n";
    for (const auto& v : report.verdicts) {
      json line = {{"type", "verdict"}, {"check", v.check}, {"pass", v.pass}};
      if (!v.pass && !v.witness.is_null()) line["witness"] = v.witness;
      out += line.dump() + "\n";
    }
    json summary = {{"type", "summary"}, {"pass", report.pass()}, {"verdicts", report.verdicts.size()}, {"failed", failed}};
    out += summary.dump() + "\n";
    return out;
  }

  out += "symtrans " + report.command + "  seed=" + std::to_string(config.seed) +
         "  trials=" + std::to_string(config.trials) + "\n";
  for (const auto& [key, value] : report.facts.items())
    out += "  " + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  for (const auto& v : report.verdicts) {
    out += (v.pass ? "PASS " : "FAIL ") + v.check;
    if (!v.pass && !v.witness.is_null()) out += "  witness=" + v.witness.dump();
    out += "\n";
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu checks, %zu failed (%.3f s)\n", report.verdicts.size(), failed,
                report.elapsed_seconds);
  out += buf;
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    report = execute(config);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidDimension& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatch& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (report.payload)
    out << *report.payload;
  else
    out << render(report, config);
  return report.pass() ? 0 : 1;
}

}  // namespace symtrans::cli
