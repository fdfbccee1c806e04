#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

namespace gapforge {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json report_of(const Outcome& o) { return nlohmann::json::parse(o.out); }

nlohmann::json without_timing(nlohmann::json j) {
  j.erase("timing");
  return j;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(GAPFORGE_TEST_TMP) / ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write_text_file(path("c5.gr"), write_graph(oracle::cycle(5)));
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, ParamsMatchesLibrary) {
  const auto o = invoke({"params", "--k", "3", "--c", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto r = report_of(o);
  EXPECT_EQ(r.at("result"), to_json(derive_params_main(3, 1)));
  EXPECT_EQ(r.at("result").at("d").get<std::string>(), oracle::pow_decimal(480, 1332));
}

TEST_F(CliTest, Params32) {
  const auto o = invoke({"params", "--k", "3", "--epsilon", "0.9", "--delta", "0.4"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto r = report_of(o).at("result");
  EXPECT_EQ(r.at("d").get<std::string>(), "4096");
  EXPECT_EQ(r.at("t").get<std::string>(), "103");
}

TEST_F(CliTest, SolveDsOnC5) {
  const auto o = invoke({"solve-ds", "--in", path("c5.gr"), "--mode", "exact"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto r = report_of(o).at("result");
  EXPECT_EQ(r.at("size"), 2);
  EXPECT_EQ(r.at("vertices"), nlohmann::json({1, 3}));
  EXPECT_EQ(r.at("optimal"), true);
  EXPECT_EQ(r.at("lower_bound"), 2);
  for (const char* m : {"exact_enum", "greedy"}) {
    EXPECT_EQ(report_of(invoke({"solve-ds", "--in", path("c5.gr"), "--mode", m})).at("result").at("size"), 2);
  }
}

TEST_F(CliTest, GapDemoShowsGap) {
  const auto o = invoke({"gap-demo", "--s", "2", "--d", "3", "--t", "2", "--seed", "7"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto gap = report_of(o).at("gap");
  EXPECT_GT(gap.at("ds_no_value").get<std::size_t>(), gap.at("ds_yes_bound").get<std::size_t>());
  EXPECT_EQ(gap.at("ds_yes_bound"), 7);
  EXPECT_DOUBLE_EQ(gap.at("ratio").get<double>(),
                   gap.at("ds_no_value").get<double>() / gap.at("ds_yes_bound").get<double>());
}

TEST_F(CliTest, GapDemoMainReduction) {
  const auto o = invoke({"gap-demo", "--s", "1", "--d", "2", "--t", "1", "--c", "2", "--delta-dup", "2", "--seed", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto gap = report_of(o).at("gap");
  EXPECT_EQ(gap.at("ds_yes_bound"), 4 + 2 * 2);
  EXPECT_GT(gap.at("ds_no_value").get<std::size_t>(), 8u);
}

TEST_F(CliTest, ReportsAreReproducible) {
  const std::vector<std::string> args{"gap-demo", "--s", "2", "--d", "2", "--t", "1", "--seed", "4", "--out",
                                      path("demo.json")};
  ASSERT_EQ(invoke(args).code, 0);
  const auto first = nlohmann::json::parse(read_text_file(path("demo.json")));
  std::map<std::string, std::string> artifacts;
  for (const auto& p : first.at("outputs")) artifacts[p.get<std::string>()] = read_text_file(p.get<std::string>());
  ASSERT_EQ(invoke(args).code, 0);
  const auto second = nlohmann::json::parse(read_text_file(path("demo.json")));
  EXPECT_EQ(without_timing(first).dump(), without_timing(second).dump());
  for (const auto& [p, text] : artifacts) EXPECT_EQ(read_text_file(p), text) << p;
}

TEST_F(CliTest, ArtifactsCarryInputDigest) {
  ASSERT_EQ(invoke({"synth", "--s", "2", "--d", "3", "--left-pad", "1", "--seed", "2", "--out", path("yes.json")}).code, 0);
  const auto synth = nlohmann::json::parse(read_text_file(path("yes.json")));
  ASSERT_EQ(synth.at("outputs").size(), 1u);
  const std::string inst_path = synth.at("outputs")[0];
  const auto inst = nlohmann::json::parse(read_text_file(inst_path));
  EXPECT_EQ(inst.at("input_digest"), synth.at("inputs_digest"));

  const auto o = invoke({"reduce32", "--in", inst_path, "--t", "2", "--out", path("g.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto red = nlohmann::json::parse(read_text_file(path("g.json")));
  EXPECT_EQ(red.at("result").at("witness").at("size"), 3 + 2 * 2);
  const std::string digest = red.at("inputs_digest");
  for (const auto& p : red.at("outputs")) {
    const std::string file = p.get<std::string>();
    ASSERT_TRUE(fs::exists(file)) << file;
    EXPECT_NE(read_text_file(file).find(digest), std::string::npos) << file;
  }
  const std::string graph_path = red.at("outputs")[0];
  const auto g = read_graph_file(graph_path);
  EXPECT_EQ(g.num_vertices(), red.at("result").at("vertices").get<std::size_t>());

  const auto main = invoke({"reduce-main", "--in", inst_path, "--c", "1", "--delta-dup", "2", "--out", path("gc.json")});
  ASSERT_EQ(main.code, 0) << main.err;
  const auto redm = nlohmann::json::parse(read_text_file(path("gc.json")));
  EXPECT_EQ(redm.at("result").at("witness").at("size"), 3 + 4);
}

TEST_F(CliTest, VerifySubcommand) {
  EXPECT_EQ(invoke({"verify", "--in", path("c5.gr"), "--set", "1,3"}).code, 0);
  EXPECT_EQ(invoke({"verify", "--in", path("c5.gr"), "--set", "1,2"}).code, 1);
  ASSERT_EQ(invoke({"synth", "--promise", "no", "--s", "2", "--d", "2", "--a-size", "4", "--b-size", "4", "--seed", "1",
                    "--out", path("no.json")})
                .code,
            0);
  EXPECT_EQ(invoke({"verify", "--in", path("no.instance.json")}).code, 0);
  auto inst = nlohmann::json::parse(read_text_file(path("no.instance.json")));
  inst["no_threshold"] = 0;
  inst["edges"] = nlohmann::json::array({{1, 1}, {2, 1}});
  write_text_file(path("broken.json"), inst.dump());
  EXPECT_EQ(invoke({"verify", "--in", path("broken.json")}).code, 1);
  ASSERT_EQ(invoke({"gen-family", "--n", "8", "--k", "3", "--out", path("fam.json")}).code, 0);
  EXPECT_EQ(invoke({"verify", "--in", path("fam.family.json")}).code, 0);
}

TEST_F(CliTest, CliqueCircuitPreprocess) {
  const auto c = report_of(invoke({"clique", "--in", path("c5.gr"), "--k", "2"})).at("result");
  EXPECT_EQ(c.at("found"), true);
  EXPECT_EQ(c.at("witness"), nlohmann::json({1, 2}));
  EXPECT_EQ(report_of(invoke({"clique", "--in", path("c5.gr"), "--k", "3"})).at("result").at("found"), false);
  const auto circ = report_of(invoke({"circuit", "--in", path("c5.gr")})).at("result");
  EXPECT_EQ(circ.at("weight"), 2);
  EXPECT_EQ(circ.at("gamma"), 2);
  ASSERT_EQ(invoke({"preprocess", "--in", path("c5.gr"), "--k", "3", "--out", path("pre.json")}).code, 0);
  const auto pre = read_graph_file(path("pre.graph.gr"));
  EXPECT_EQ(pre.num_vertices(), 7u);
  write_text_file(path("f.circ"), "vars 3\nor 1 2\nor 2 3\n");
  EXPECT_EQ(report_of(invoke({"circuit", "--in", path("f.circ")})).at("result").at("weight"), 1);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(invoke({"solve-ds", "--in", path("missing.gr")}).code, 2);
  EXPECT_EQ(invoke({"solve-ds", "--in", path("c5.gr"), "--bogus", "1"}).code, 2);
  EXPECT_EQ(invoke({"no-such-command"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"solve-ds", "--in", path("c5.gr"), "--mode", "fast"}).code, 2);
  EXPECT_EQ(invoke({"params", "--c", "1"}).code, 2);
  write_text_file(path("bad.gr"), "p edge 2 1\ne 1 1\n");
  const auto o = invoke({"solve-ds", "--in", path("bad.gr")});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("line 2"), std::string::npos) << o.err;
  EXPECT_EQ(invoke({"reduce32", "--in", path("c5.gr"), "--t", "1"}).code, 2);
  const auto cap = invoke({"gap-demo", "--s", "2", "--d", "3", "--t", "2", "--cap-vertices", "10"});
  EXPECT_EQ(cap.code, 2);
  EXPECT_NE(cap.err.find("cap"), std::string::npos);
}

TEST_F(CliTest, SeedFallsBackToEnvironment) {
  ::setenv("GAPFORGE_SEED", "41", 1);
  const auto env = report_of(invoke({"synth", "--s", "2", "--d", "2", "--left-pad", "2"}));
  ::unsetenv("GAPFORGE_SEED");
  EXPECT_EQ(env.at("parameters").at("seed"), 41);
  EXPECT_EQ(env.at("result").at("seed_used"), 41);
  const auto flag = report_of(invoke({"synth", "--s", "2", "--d", "2", "--left-pad", "2", "--seed", "41"}));
  EXPECT_EQ(without_timing(env).dump(), without_timing(flag).dump());
}

}  // namespace
}  // namespace gapforge
