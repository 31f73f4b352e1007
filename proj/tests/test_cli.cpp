#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "srf/cli.hpp"
#include "srf/errors.hpp"

using namespace srf;

namespace {

RunConfig config(Command c, int n) {
  RunConfig cfg;
  cfg.command = c;
  cfg.n = n;
  return cfg;
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "srf-run");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, CommandNames) {
  EXPECT_EQ(parse_command("twirl-check"), Command::TwirlCheck);
  EXPECT_EQ(to_string(Command::HaarMoments), "haar-moments");
  EXPECT_FALSE(parse_command("bogus").has_value());
}

TEST(Cli, CapacityPayload) {
  RunConfig c = config(Command::Capacity, 16);
  c.delta = 0.0;
  const RunResult r = run(c);
  EXPECT_NEAR(r.payload["qPerfect"].get<double>(), std::log2(17.0), 1e-15);
  EXPECT_NEAR(r.payload["classicalUpper"].get<double>(), 15.0, 1e-12);
  EXPECT_EQ(r.toolVersion, kToolVersion);
  EXPECT_FALSE(r.wallClockSeconds.has_value());
  EXPECT_EQ(r.config["N"], 16);
}

TEST(Cli, MeanFIsByteReproducible) {
  RunConfig c = config(Command::MeanF, 12);
  c.alpha = 4.0;
  c.nSamples = 2000;
  c.seed = RngSeed{7};
  const std::string a = to_json(run(c)).dump(2);
  const std::string b = to_json(run(c)).dump(2);
  EXPECT_EQ(a, b);
  const RunResult r = run(c);
  ASSERT_TRUE(r.workspaceDescriptor.has_value());
  EXPECT_EQ((*r.workspaceDescriptor)["K"], 36);
  EXPECT_EQ(r.payload["seed"], 7);
}

TEST(Cli, OddNIsUsageError) {
  EXPECT_THROW(run(config(Command::TwirlCheck, 3)), UsageError);
  EXPECT_THROW(run(config(Command::Capacity, 0)), UsageError);
}

TEST(Cli, CommandSpecificValidation) {
  EXPECT_THROW(run(config(Command::HaarMoments, 4)), UsageError);
  RunConfig few = config(Command::MeanF, 12);
  few.nSamples = 10;
  EXPECT_THROW(run(few), UsageError);
  EXPECT_THROW(run(config(Command::TwirlCheck, 10)), UsageError);
  RunConfig net = config(Command::Net, 4);
  net.dimS = 5;
  EXPECT_THROW(run(net), UsageError);
}

TEST(Cli, InfeasibleParametersAreResults) {
  RunConfig ws = config(Command::Workspace, 12);
  ws.alpha = 50.0;
  const RunResult r = run(ws);
  EXPECT_EQ(r.payload["status"], "infeasible");
  EXPECT_FALSE(r.payload["reason"].get<std::string>().empty());

  RunConfig t = config(Command::Theorem1, 12);
  t.delta = 0.25;
  const RunResult tr = run(t);
  EXPECT_EQ(tr.payload["status"], "infeasible");
}

TEST(Cli, WorkspaceAndDecomposePayloads) {
  const RunResult w = run(config(Command::Workspace, 12));
  EXPECT_EQ(w.payload["K"], 72);
  EXPECT_NEAR(w.payload["asymptoticK"].get<double>(), 64.0, 1e-12);
  RunConfig d = config(Command::Decompose, 6);
  d.nSamples = 3;
  const RunResult dr = run(d);
  EXPECT_EQ(dr.payload["dimensionComplete"], true);
  EXPECT_LT(dr.payload["schurMaxDeviation"].get<double>(), 1e-9);
  EXPECT_EQ(dr.payload["irreps"].size(), 4u);
}

TEST(Cli, TwirlCheckPayload) {
  RunConfig c = config(Command::TwirlCheck, 4);
  c.nSamples = 3;
  const RunResult r = run(c);
  EXPECT_EQ(r.payload["agreement"], true);
  EXPECT_EQ(r.payload["quadratureExact"], true);
  c.quadrature = QuadratureSpec{2, 2, 2};
  EXPECT_EQ(run(c).payload["quadratureExact"], false);
}

TEST(EmitCurve, CapacityRows) {
  std::vector<RunResult> results;
  for (int n : {16, 4, 8}) results.push_back(run(config(Command::Capacity, n)));
  const std::string csv = emit_curve(results, "N", "qPerfect");
  std::stringstream expected;
  expected.precision(17);
  const nlohmann::json q4 = std::log2(5.0), q8 = std::log2(9.0), q16 = std::log2(17.0);
  EXPECT_EQ(csv, "N,qPerfect\r\n4," + q4.dump() + "\r\n8," + q8.dump() + "\r\n16," + q16.dump() + "\r\n");
}

TEST(EmitCurve, ConcentrationTails) {
  RunConfig c = config(Command::Concentration, 8);
  c.nSamples = 1000;
  c.gammas = {0.3, 0.1};
  const RunResult r = run(c);
  const std::string csv = emit_curve({r}, "gamma", "tail");
  EXPECT_EQ(csv.substr(0, 12), "gamma,tail\r\n");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_LT(csv.find("\r\n0.1,"), csv.find("\r\n0.3,"));
}

TEST(EmitCurve, EmptyMissingAndQuoted) {
  EXPECT_EQ(emit_curve({}, "N", "qPerfect"), "N,qPerfect\r\n");
  const RunResult r = run(config(Command::Capacity, 4));
  EXPECT_THROW(emit_curve({r}, "N", "nothing"), UsageError);
  EXPECT_THROW(emit_curve({r}, "N", "rankChain"), UsageError);
  RunResult q;
  q.payload = {{"x", 1}, {"y", "a,\"b\""}};
  EXPECT_EQ(emit_curve({q}, "x", "y"), "x,y\r\n1,\"a,\"\"b\"\"\"\r\n");
}

TEST(CliMain, ExitCodesAndErrorObject) {
  const std::string out = ::testing::TempDir() + "srf_cli_error.json";
  EXPECT_EQ(invoke({"--command", "twirl-check", "--n", "3", "--out", out}), 2);
  const nlohmann::json err = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(err["error"]["kind"], "usage");
  EXPECT_EQ(invoke({"--command", "nope", "--out", out}), 2);
  EXPECT_EQ(invoke({"--command", "workspace", "--n", "12", "--alpha", "0.5", "--out", out}), 3);
  EXPECT_EQ(nlohmann::json::parse(slurp(out))["error"]["kind"], "domain");
  EXPECT_EQ(invoke({"--command", "capacity", "--n", "4,8,16", "--format", "csv", "--out", out}), 0);
  EXPECT_EQ(slurp(out).substr(0, 12), "N,qPerfect\r\n");
  EXPECT_EQ(invoke({"--command", "capacity", "--n", "16", "--delta", "0", "--out", out}), 0);
  const nlohmann::json ok = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(ok["toolVersion"], kToolVersion);
  EXPECT_FALSE(ok.contains("wallClockSeconds"));
  EXPECT_EQ(invoke({"--command", "capacity", "--n", "16", "--timing", "--out", out}), 0);
  EXPECT_TRUE(nlohmann::json::parse(slurp(out)).contains("wallClockSeconds"));
  std::remove(out.c_str());
}

TEST(CliMain, ConfigFile) {
  const std::string cfg = ::testing::TempDir() + "srf_cli.toml";
  const std::string out = ::testing::TempDir() + "srf_cli_cfg.json";
  {
    std::ofstream f(cfg);
    f << "command = \"workspace\"\nn = \"12\"\nalpha = 4.0\n";
  }
  EXPECT_EQ(invoke({"--config", cfg, "--out", out}), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(out))["payload"]["K"], 36);
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}
