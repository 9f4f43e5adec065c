#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "symtrans/special_kahler.hpp"

namespace symtrans::cli {

enum class Command { Check, Stratum, Group, Orbit, Transitivity, SkVerify, Geodesic, Sample };
enum class Format { Text, Structured };

std::optional<Command> parse_command(std::string_view name);
std::string command_name(Command c);

struct RunConfig {
  Command command = Command::Check;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  Format format = Format::Text;

  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<std::pair<std::size_t, std::size_t>> signature;
  unsigned degree = 3;

  double dt = 1e-3;
  double t_end = 1.0;
  double tolerance = 1e-8;
  Connection connection = Connection::Special;
  /// Comma-separated rationals; drawn from the seed when absent.
  std::optional<std::string> point;
  std::optional<std::string> velocity;

  /// sample: file to write (stdout when absent). geodesic: CSV trajectory path.
  std::optional<std::string> output;
};

/// Seed from the flag, else the SYMTRANS_SEED value, else 0.
/// Throws ParseError on a malformed value.
std::uint64_t resolve_seed(const std::optional<std::string>& flag, const char* env_value);

/// "p,q" -> (p, q). Throws ParseError.
std::pair<std::size_t, std::size_t> parse_signature(std::string_view text);

struct Verdict {
  std::string check;
  bool pass = true;
  /// Exact rationals as strings; empty for passes.
  nlohmann::ordered_json witness;
};

struct Report {
  std::string command;
  /// Named data such as k, translation_dim and support bases, in insertion order.
  nlohmann::ordered_json facts = nlohmann::ordered_json::object();
  std::vector<Verdict> verdicts;
  double elapsed_seconds = 0.0;
  /// Content written by `sample` when no output path is given.
  std::optional<std::string> payload;

  bool pass() const;
};

/// Runs one command. Throws ParseError, InvalidDimension or DimensionMismatch
/// on bad input; every mathematical failure becomes a fail verdict instead.
Report execute(const RunConfig& config);

/// Text or JSON-lines rendering. Structured output carries no timings, so
/// equal configs render byte-identically.
std::string render(const Report& report, const RunConfig& config);

/// execute + render; returns 0 on all-pass, 1 on any fail, 2 on input error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace symtrans::cli
