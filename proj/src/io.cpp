#include "symtrans/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace symtrans {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

/// Non-comment, non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] != '#') out.emplace_back(number, std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) throw ParseError("expected a nonnegative integer, got '" + tok + "'", line);
  return v;
}

/// "key=value" with the expected key.
std::size_t parse_field(const std::string& tok, std::string_view key, std::size_t line) {
  const std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0) throw ParseError("expected " + prefix + "<count>", line);
  return parse_count(tok.substr(prefix.size()), line);
}

Scalar parse_scalar_at(const std::string& tok, std::size_t line) {
  try {
    return parse_scalar(tok);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

std::string write_cubic(const CubicForm& s) {
  std::ostringstream os;
  os << "cubicform v1 dim=" << s.dim() << "\n";
  for (const auto& [t, v] : s.coefficients()) os << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << to_string(v) << "\n";
  return os.str();
}

CubicForm parse_cubic(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty cubic form file", 1);
  const auto header = split_ws(lines[0].second);
  if (header.size() != 3 || header[0] != "cubicform" || header[1] != "v1")
    throw ParseError("expected header 'cubicform v1 dim=<2n>'", lines[0].first);
  const std::size_t dim = parse_field(header[2], "dim", lines[0].first);
  if (dim == 0 || dim % 2 != 0) throw ParseError("dimension must be even and positive", lines[0].first);

  CubicForm s(SymplecticSpace::darboux(dim / 2));
  std::set<CubicForm::Triple> seen;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& [number, line] = lines[l];
    const auto tok = split_ws(line);
    if (tok.size() != 4) throw ParseError("expected 'i j k value'", number);
    const std::size_t i = parse_count(tok[0], number);
    const std::size_t j = parse_count(tok[1], number);
    const std::size_t k = parse_count(tok[2], number);
    if (k >= dim) throw ParseError("index out of range", number);
    if (i > j || j > k) throw ParseError("triple is not sorted (need i <= j <= k)", number);
    if (!seen.insert({i, j, k}).second) throw ParseError("repeated triple", number);
    s.set(i, j, k, parse_scalar_at(tok[3], number));
  }
  return s;
}

std::string write_potential(const HoloPotential& f) {
  std::ostringstream os;
  os << "potential v1 n=" << f.space.n() << " p=" << f.space.p() << " q=" << f.space.q() << "\n";
  for (const auto& [e, c] : f.poly.terms()) {
    for (std::size_t a = 0; a < e.size(); ++a) os << (a ? " " : "") << e[a];
    os << "  " << to_string(c.re) << "  " << to_string(c.im) << "\n";
  }
  return os.str();
}

HoloPotential parse_potential(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty potential file", 1);
  const auto header = split_ws(lines[0].second);
  if (header.size() != 5 || header[0] != "potential" || header[1] != "v1")
    throw ParseError("expected header 'potential v1 n=<n> p=<p> q=<q>'", lines[0].first);
  const std::size_t n = parse_field(header[2], "n", lines[0].first);
  const std::size_t p = parse_field(header[3], "p", lines[0].first);
  const std::size_t q = parse_field(header[4], "q", lines[0].first);
  if (n == 0 || p + q != n) throw ParseError("signature must satisfy p + q = n > 0", lines[0].first);

  Polynomial poly(n);
  std::set<Exponents> seen;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& [number, line] = lines[l];
    const auto tok = split_ws(line);
    if (tok.size() != n + 2) throw ParseError("expected " + std::to_string(n) + " exponents then re and im", number);
    Exponents e(n);
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t v = parse_count(tok[a], number);
      if (v > 64) throw ParseError("exponent too large", number);
      e[a] = static_cast<std::uint32_t>(v);
    }
    if (!seen.insert(e).second) throw ParseError("repeated monomial", number);
    poly.add_term(e, Gaussian(parse_scalar_at(tok[n], number), parse_scalar_at(tok[n + 1], number)));
  }
  return HoloPotential(HermitianSpace(p, q), std::move(poly));
}

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "t";
  const std::size_t d = t.points.empty() ? 0 : t.points.front().size();
  for (std::size_t i = 1; i <= d; ++i) out += ",x_" + std::to_string(i);
  out += "\n";
  char buf[32];
  for (std::size_t k = 0; k < t.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", t.times[k]);
    out += buf;
    for (double x : t.points[k]) {
      std::snprintf(buf, sizeof buf, ",%.17g", x);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

Vector<Scalar> parse_vector(std::string_view text) {
  Vector<Scalar> v;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    std::string_view tok = text.substr(pos, end - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    v.push_back(parse_scalar(tok));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return v;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string(), 0);
  out << text;
}

}  // namespace symtrans
