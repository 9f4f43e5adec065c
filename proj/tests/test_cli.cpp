#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "symtrans/cli.hpp"
#include "symtrans/io.hpp"

using namespace symtrans;
using namespace symtrans::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("symtrans_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    write_text_file(p, text);
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static RunConfig config(Command c, std::vector<std::string> inputs = {}) {
    RunConfig r;
    r.command = c;
    r.inputs = std::move(inputs);
    r.seed = 5;
    r.trials = 20;
    return r;
  }

  struct Outcome {
    int code;
    std::string out;
    std::string err;
  };
  static Outcome invoke(const RunConfig& c) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

const Verdict& verdict(const Report& r, const std::string& name) {
  for (const auto& v : r.verdicts)
    if (v.check == name) return v;
  throw std::out_of_range(name);
}

}  // namespace

TEST_F(CliTest, ZeroCubicPasses) {
  const Report r = execute(config(Command::Check, {file("z.txt", "cubicform v1 dim=4\n")}));
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.facts["k"], 0);
  EXPECT_EQ(r.facts["translation_dim"], 4);
}

TEST_F(CliTest, N1ExampleStratum) {
  const Report r = execute(config(Command::Stratum, {file("n1.txt", "cubicform v1 dim=2\n1 1 1 1\n")}));
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.facts["k"], 1);
  EXPECT_EQ(r.facts["translation_dim"], 1);
  EXPECT_TRUE(r.facts["lagrangian"].get<bool>());
  EXPECT_TRUE(verdict(r, "translation_dim").pass);
}

TEST_F(CliTest, EveryCubicCommandPassesOnTheN1Example) {
  const std::string f = file("n1.txt", "cubicform v1 dim=2\n1 1 1 1\n");
  for (Command c : {Command::Check, Command::Stratum, Command::Group, Command::Orbit, Command::Transitivity})
    EXPECT_EQ(invoke(config(c, {f})).code, 0) << command_name(c);
}

TEST_F(CliTest, NonVarietyFormFailsWithWitness) {
  const std::string f = file("bad.txt", "cubicform v1 dim=2\n0 0 1 1\n0 1 1 1\n");
  const Report r = execute(config(Command::Check, {f}));
  EXPECT_FALSE(r.pass());
  const Verdict& v = verdict(r, "in_variety");
  EXPECT_FALSE(v.pass);
  EXPECT_TRUE(v.witness.contains("X"));
  EXPECT_TRUE(verdict(r, "criteria_agree").pass);
  EXPECT_EQ(invoke(config(Command::Check, {f})).code, 1);
  EXPECT_EQ(invoke(config(Command::Group, {f})).code, 1);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  const std::string corrupted = file("c.txt", "cubicform v1 dim=2\n1 0 0 1\n");
  const Outcome o = invoke(config(Command::Check, {corrupted}));
  EXPECT_EQ(o.code, 2);
  EXPECT_FALSE(o.err.empty());
  EXPECT_EQ(invoke(config(Command::Check, {path("missing.txt")})).code, 2);
  EXPECT_EQ(invoke(config(Command::Check)).code, 2);
  RunConfig s = config(Command::Sample);
  s.n = 2;
  s.k = 3;
  EXPECT_EQ(invoke(s).code, 2);
  s.k.reset();
  s.signature = {2, 1};
  s.k = 2;
  EXPECT_EQ(invoke(s).code, 2);
}

TEST_F(CliTest, SampleExtremesRoundTrip) {
  for (std::size_t k : {0u, 3u}) {
    RunConfig s = config(Command::Sample);
    s.n = 3;
    s.k = k;
    s.output = path("s" + std::to_string(k) + ".txt");
    const Report r = execute(s);
    EXPECT_TRUE(r.pass()) << k;
    const Report c = execute(config(Command::Stratum, {*s.output}));
    EXPECT_TRUE(c.pass());
    EXPECT_EQ(c.facts["k"], k);
    EXPECT_EQ(c.facts["lagrangian"].get<bool>(), k == 3);
  }
}

TEST_F(CliTest, SampleIsSeedDeterministic) {
  RunConfig s = config(Command::Sample);
  s.n = 2;
  s.k = 1;
  s.output = path("a.txt");
  execute(s);
  s.output = path("b.txt");
  execute(s);
  EXPECT_EQ(read_text_file(path("a.txt")), read_text_file(path("b.txt")));
  s.seed = 6;
  s.output = path("c.txt");
  execute(s);
  EXPECT_NE(read_text_file(path("a.txt")), read_text_file(path("c.txt")));
  // Without --output the file goes to stdout.
  s.output.reset();
  const Outcome o = invoke(s);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("cubicform v1 dim=4"), std::string::npos);
}

TEST_F(CliTest, SampledPotentialVerifies) {
  RunConfig s = config(Command::Sample);
  s.signature = {1, 1};
  s.k = 1;
  s.degree = 4;
  s.output = path("f.txt");
  EXPECT_TRUE(execute(s).pass());
  RunConfig v = config(Command::SkVerify, {*s.output});
  v.trials = 3;
  const Report r = execute(v);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(verdict(r, "levi_civita").pass);
  EXPECT_TRUE(verdict(r, "stratification_bound").pass);
}

TEST_F(CliTest, SkVerifyReportsTrivialFactor) {
  const std::string f = file("f.txt", "potential v1 n=3 p=2 q=1\n3 0 0  1  0\n2 0 1  3  0\n1 0 2  3  0\n0 0 3  1  0\n");
  RunConfig v = config(Command::SkVerify, {f});
  v.trials = 3;
  const Report r = execute(v);
  EXPECT_TRUE(r.pass());
  EXPECT_TRUE(r.facts["trivial_factor"].get<bool>());
}

TEST_F(CliTest, GeodesicWritesCsv) {
  const std::string f = file("f.txt", "potential v1 n=2 p=1 q=1\n3 0  1  0\n2 1  3  0\n1 2  3  0\n0 3  1  0\n");
  RunConfig g = config(Command::Geodesic, {f});
  g.point = "0,0,0,0";
  g.velocity = "1,0,0,1";
  g.dt = 0.01;
  g.output = path("traj.csv");
  const Report r = execute(g);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.facts["steps"], 100);
  const std::string csv = read_text_file(*g.output);
  EXPECT_EQ(csv.rfind("t,x_1,x_2,x_3,x_4\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 102);
  g.velocity = "1,0";
  EXPECT_EQ(invoke(g).code, 2);
}

TEST_F(CliTest, StructuredOutputIsByteIdentical) {
  const std::string f = file("n1.txt", "cubicform v1 dim=2\n1 1 1 1\n");
  RunConfig c = config(Command::Group, {f});
  c.format = Format::Structured;
  const Outcome a = invoke(c);
  const Outcome b = invoke(c);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("elapsed"), std::string::npos);
  std::istringstream lines(a.out);
  std::string first, last, line;
  std::getline(lines, first);
  while (std::getline(lines, line)) last = line;
  const auto header = nlohmann::json::parse(first);
  EXPECT_EQ(header["schema"], "symtrans-report");
  EXPECT_EQ(header["version"], 1);
  EXPECT_EQ(nlohmann::json::parse(last)["type"], "summary");
}

TEST_F(CliTest, TextOutputShowsVerdicts) {
  const Outcome o = invoke(config(Command::Check, {file("z.txt", "cubicform v1 dim=2\n")}));
  EXPECT_NE(o.out.find("PASS in_variety"), std::string::npos);
  EXPECT_NE(o.out.find(" s)"), std::string::npos);
}

TEST(CliParsing, SeedsSignaturesAndCommands) {
  EXPECT_EQ(resolve_seed(std::string("7"), "9"), 7u);
  EXPECT_EQ(resolve_seed(std::nullopt, "9"), 9u);
  EXPECT_EQ(resolve_seed(std::nullopt, nullptr), 0u);
  EXPECT_THROW(resolve_seed(std::string("x"), nullptr), ParseError);
  EXPECT_THROW(resolve_seed(std::nullopt, "-1"), ParseError);
  EXPECT_EQ(parse_signature("2,1"), (std::pair<std::size_t, std::size_t>{2, 1}));
  EXPECT_THROW(parse_signature("2"), ParseError);
  EXPECT_THROW(parse_signature("a,b"), ParseError);
  for (Command c : {Command::Check, Command::Stratum, Command::Group, Command::Orbit, Command::Transitivity,
                    Command::SkVerify, Command::Geodesic, Command::Sample})
    EXPECT_EQ(parse_command(command_name(c)), c);
  EXPECT_FALSE(parse_command("frobnicate"));
}
