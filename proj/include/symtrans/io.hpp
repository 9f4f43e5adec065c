#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "symtrans/special_kahler.hpp"

namespace symtrans {

// Cubic form files:
//
//   cubicform v1 dim=<2n>
//   i j k p/q
//
// One line per nonzero coefficient with 0-based indices i <= j <= k, sorted.
// Potential files:
//
//   potential v1 n=<n> p=<p> q=<q>
//   a_1 ... a_n  re  im
//
// One line per monomial z^a. Blank lines and lines starting with '#' are
// skipped by both parsers.

std::string write_cubic(const CubicForm& s);
/// Throws ParseError on malformed headers, unsorted or repeated triples, and
/// out-of-range indices. Zero coefficients are accepted and dropped.
CubicForm parse_cubic(std::string_view text);

std::string write_potential(const HoloPotential& f);
/// Throws ParseError on malformed headers, p + q != n, repeated monomials
/// and lines of the wrong length.
HoloPotential parse_potential(std::string_view text);

/// Columns t, x_1 .. x_{2n}; numbers printed with 17 significant digits.
std::string trajectory_csv(const Trajectory& t);

/// Comma-separated rationals, e.g. "1/2,0,-3".
Vector<Scalar> parse_vector(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace symtrans
