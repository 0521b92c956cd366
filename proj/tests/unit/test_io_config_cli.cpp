#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinorq/commands.hpp"
#include "spinorq/config.hpp"
#include "spinorq/errors.hpp"
#include "spinorq/io.hpp"
#include "spinorq/scaling.hpp"

using namespace spinorq;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("spinorq_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

cli::Context small_context(const fs::path& out) {
  cli::Context ctx;
  ctx.out_dir = out;
  auto& c = ctx.config;
  c.set("model.n_atoms", "200");
  c.set("ground_scan.q_step", "0.5");
  c.set("evolve.t_max", "20");
  c.set("evolve.points", "201");
  c.set("map.step", "2");
  c.set("eth.sizes", "200,300,400,600");
  c.set("eth.width", "40");
  c.set("pr.sizes", "200,300,400,600");
  c.set("timescales.sizes", "200,300,400,500,600");
  return ctx;
}

}  // namespace

TEST(Csv, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-2.0), "-2");
  EXPECT_EQ(format_number(NAN), "");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Csv, RoundTrip) {
  std::stringstream s;
  {
    CsvWriter w(s, {"a", "b", "label"});
    w.row({1.5, std::int64_t{3}, std::string("x")});
    w.row({NAN, std::int64_t{-4}, std::string("y")});
  }
  const auto t = read_csv(s);
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b", "label"}));
  ASSERT_EQ(t.rows.size(), 2u);
  const auto a = t.column("a");
  EXPECT_EQ(a[0], 1.5);
  EXPECT_TRUE(std::isnan(a[1]));
  EXPECT_EQ(t.column("b")[1], -4.0);
  EXPECT_THROW(t.column("missing"), InvalidArgument);
}

TEST(Csv, WriterRejectsWrongWidth) {
  std::stringstream s;
  CsvWriter w(s, {"a", "b"});
  EXPECT_THROW(w.row({1.0}), InvalidArgument);
}

TEST(Json, SchemaVersionFirst) {
  Json doc = json_document();
  doc["z"] = 1;
  EXPECT_EQ(doc.begin().key(), "schema_version");
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
}

TEST(Config, Defaults) {
  const RunConfig c;
  EXPECT_EQ(c.get_int("model.n_atoms"), 2000);
  EXPECT_EQ(c.get_double("quench.q_initial"), -3.0);
  EXPECT_EQ(c.get_string("quench.initial"), "ground");
  EXPECT_EQ(c.get_int_list("timescales.sizes"), default_size_ladder());
}

TEST(Config, ParsesIniAndRejectsUnknownKeys) {
  std::istringstream good("[model]\nn_atoms = 600\nc1_sign = 1\n[quench]\nq_final = 2.5\n");
  const auto c = RunConfig::from_stream(good);
  EXPECT_EQ(c.get_int("model.n_atoms"), 600);
  EXPECT_EQ(c.get_double("quench.q_final"), 2.5);
  EXPECT_EQ(c.get_double("quench.q_initial"), -3.0);

  std::istringstream typo("[model]\nn_atom = 600\n");
  EXPECT_THROW(RunConfig::from_stream(typo), InvalidArgument);
  RunConfig d;
  EXPECT_THROW(d.set("nosuch.key", "1"), InvalidArgument);
  d.set("model.n_atoms", "abc");
  EXPECT_THROW(d.get_int("model.n_atoms"), InvalidArgument);
  d.set("quench.q_final", "nan");
  EXPECT_THROW(d.get_double("quench.q_final"), InvalidArgument);
}

TEST(Config, EchoRoundTrips) {
  RunConfig c;
  c.set("quench.q_final", "0.75");
  std::istringstream in(c.to_string());
  EXPECT_EQ(RunConfig::from_stream(in).to_string(), c.to_string());
}

TEST(Cli, CommandList) {
  const auto& names = cli::command_names();
  for (const char* n : {"ground-scan", "quench", "evolve", "quench-map", "eth-scan", "pr-scan",
                        "timescales", "fit", "lattice-params"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  }
  auto ctx = small_context(scratch("unknown"));
  EXPECT_THROW(cli::run_command("bogus", ctx), InvalidArgument);
}

TEST(Cli, EveryCommandIsDeterministic) {
  for (const auto& name : cli::command_names()) {
    if (name == "fit") continue;
    const auto a = scratch(name + "_a");
    const auto b = scratch(name + "_b");
    cli::run_command(name, small_context(a));
    cli::run_command(name, small_context(b));
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      ++files;
      const auto other = b / entry.path().filename();
      ASSERT_TRUE(fs::exists(other)) << other;
      EXPECT_EQ(slurp(entry.path()), slurp(other)) << name << " " << entry.path().filename();
    }
    EXPECT_GE(files, 3u) << name;
    fs::remove_all(a);
    fs::remove_all(b);
  }
}

TEST(Cli, QuenchOutputs) {
  const auto out = scratch("quench_outputs");
  cli::run_command("quench", small_context(out));
  const auto spectrum = read_csv(out / "quench_spectrum.csv");
  EXPECT_EQ(spectrum.header, (std::vector<std::string>{"alpha", "energy", "eon", "eev"}));
  EXPECT_EQ(spectrum.rows.size(), 101u);
  double total = 0.0;
  for (double w : spectrum.column("eon")) total += w;
  EXPECT_NEAR(total, 1.0, 1e-12);
  std::ifstream in(out / "quench_summary.json");
  const auto doc = Json::parse(in);
  EXPECT_EQ(doc["schema_version"], kSchemaVersion);
  EXPECT_TRUE(doc.contains("region"));
  fs::remove_all(out);
}

TEST(Cli, FitRoundTrip) {
  const auto out = scratch("fit");
  fs::create_directories(out);
  {
    std::ofstream csv(out / "data.csv");
    CsvWriter w(csv, {"n_atoms", "value"});
    for (int n : default_size_ladder()) w.row({double(n), 0.05 + 2.0 * std::pow(n, -0.6)});
  }
  auto ctx = small_context(out / "result");
  ctx.config.set("fit.input", (out / "data.csv").string());
  cli::run_command("fit", ctx);
  std::ifstream in(out / "result" / "fit.json");
  const auto doc = Json::parse(in);
  EXPECT_NEAR(doc["fit"]["exponent_gamma"].get<double>(), 0.6, 1e-6);
  EXPECT_NEAR(doc["fit"]["offset_a"].get<double>(), 0.05, 1e-6);

  ctx.config.set("fit.form", "cubic");
  EXPECT_THROW(cli::run_command("fit", ctx), InvalidArgument);
  fs::remove_all(out);
}

TEST(Cli, ErrorKinds) {
  EXPECT_EQ(cli::error_kind(InvalidArgument("x")), "InvalidArgument");
  EXPECT_EQ(cli::error_kind(NoValidWindow("x")), "NoValidWindow");
  EXPECT_EQ(cli::error_kind(FitError("x")), "FitError");
  EXPECT_EQ(cli::error_kind(std::runtime_error("x")), "InternalError");
}
