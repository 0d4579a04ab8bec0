#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "ramsey/colouring_io.hpp"
#include "ramsey/verifier.hpp"
#include "support.hpp"

using namespace ramsey;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("ramsey-cli-") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return path(name);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, HelpAndUsage) {
  EXPECT_EQ(invoke({"--help"}).code, cli::kSuccess);
  EXPECT_EQ(invoke({}).code, cli::kUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"search", "--n", "5"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"search", "--targets", "3,3"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"search", "--targets", "3", "--n", "5"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"search", "--targets", "3,3", "--n", "5", "--n-range", "3:5"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"search", "--targets", "3,3", "--n", "5", "--cooling-factor", "2"}).code, cli::kUsage);
}

TEST_F(CliTest, SearchCertifiesParty) {
  const Result r = invoke({"search", "--targets", "3,3", "--n", "5", "--seed", "1", "--out-dir", path("out")});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_NE(r.out.find("CERTIFIED: R(3,3) >= 6"), std::string::npos) << r.out;
  const Certificate cert = load_certificate(path("out/certificate_N5.txt"));
  EXPECT_EQ(cert.statement(), "R(3,3) >= 6");
  EXPECT_EQ(load_colouring(path("out/colouring_N5.txt")), cert.colouring());

  const auto manifest = nlohmann::json::parse(slurp(path("out/manifest.json")));
  EXPECT_EQ(manifest["subcommand"], "search");
  EXPECT_EQ(manifest["seed"], 1);
  EXPECT_EQ(manifest["config"]["seed"], "1");
}

TEST_F(CliTest, SearchExhaustsOnSixVertices) {
  const Result r = invoke({"search", "--targets", "3,3", "--n", "6", "--max-steps", "100000", "--restarts", "0",
                           "--seed", "2", "--out-dir", path("out")});
  EXPECT_EQ(r.code, cli::kSearchExhausted);
  const auto manifest = nlohmann::json::parse(slurp(path("out/manifest.json")));
  // Unit-weight floor is two triangles; at K = 1/3 that is 2/3.
  EXPECT_GE(manifest["outcome"]["best_energy_at_exhaustion"].get<double>(), 2.0 / 3.0 - 1e-12);
  EXPECT_FALSE(fs::exists(path("out/certificate_N6.txt")));
}

TEST_F(CliTest, SearchDrawsAndRecordsSeed) {
  const Result r = invoke({"search", "--targets", "3,3", "--n", "4", "--out-dir", path("out")});
  ASSERT_EQ(r.code, cli::kSuccess);
  const auto manifest = nlohmann::json::parse(slurp(path("out/manifest.json")));
  ASSERT_TRUE(manifest["seed"].is_number_unsigned());
  const Result again = invoke({"replay", path("out/manifest.json"), "--output", path("again")});
  ASSERT_EQ(again.code, cli::kSuccess) << again.err;
  EXPECT_EQ(slurp(path("again/colouring_N4.txt")), slurp(path("out/colouring_N4.txt")));
}

TEST_F(CliTest, RangeSearchAndReplay) {
  const Result r = invoke({"search", "--targets", "3,4", "--n-range", "5:8", "--seed", "7", "--progress-interval",
                           "0", "--out-dir", path("a")});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_NE(r.out.find("CERTIFIED: R(3,4) >= 9"), std::string::npos) << r.out;
  const Result replay = invoke({"replay", path("a/manifest.json"), "--output", path("b")});
  ASSERT_EQ(replay.code, cli::kSuccess);
  for (int n = 5; n <= 8; ++n) {
    const std::string name = "colouring_N" + std::to_string(n) + ".txt";
    EXPECT_EQ(slurp(path("b/" + name)), slurp(path("a/" + name))) << name;
  }
}

TEST_F(CliTest, ProgressGoesToStderr) {
  const Result r = invoke({"search", "--targets", "3,3", "--n", "6", "--max-steps", "1000", "--restarts", "0",
                           "--progress-interval", "100", "--seed", "3", "--out-dir", path("out")});
  EXPECT_EQ(r.code, cli::kSearchExhausted);
  EXPECT_NE(r.err.find("step=100 N=6 E="), std::string::npos) << r.err;
  EXPECT_EQ(r.out.find("step="), std::string::npos);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  const std::string cfg = write("anneal.cfg", "max_steps = 500\nrestarts = 0\nseed = 4\n");
  const Result r = invoke({"search", "--targets", "3,3", "--n", "6", "--config", cfg, "--max-steps", "700",
                           "--out-dir", path("out")});
  EXPECT_EQ(r.code, cli::kSearchExhausted);
  const auto manifest = nlohmann::json::parse(slurp(path("out/manifest.json")));
  EXPECT_EQ(manifest["config"]["max_steps"], "700");
  EXPECT_EQ(manifest["seed"], 4);
  EXPECT_EQ(manifest["outcome"]["attempts"][0]["steps"], 700);

  const std::string bad = write("bad.cfg", "max_steps 500\n");
  EXPECT_EQ(invoke({"search", "--targets", "3,3", "--n", "6", "--config", bad}).code, cli::kParse);
  const std::string unknown = write("unknown.cfg", "speed = 3\n");
  EXPECT_EQ(invoke({"search", "--targets", "3,3", "--n", "6", "--config", unknown}).code, cli::kUsage);
}

TEST_F(CliTest, VerifyOutcomes) {
  const std::string party = write("party.txt", to_canonical_string(test::party5()));
  Result r = invoke({"verify", party, "--targets", "3,3"});
  EXPECT_EQ(r.code, cli::kSuccess);
  EXPECT_EQ(r.out, "CLIQUE-FREE: R(3,3) >= 6\n");

  const std::string triangle = write("k3.txt", to_canonical_string(Colouring(3, 2)));
  r = invoke({"verify", triangle, "--targets", "3,3"});
  EXPECT_EQ(r.code, cli::kVerificationFailed);
  EXPECT_NE(r.out.find("{0,1,2} colour 0"), std::string::npos) << r.out;

  const std::string text = to_canonical_string(test::party5());
  const std::string truncated = write("cut.txt", text.substr(0, text.size() - 4));
  EXPECT_EQ(invoke({"verify", truncated, "--targets", "3,3"}).code, cli::kParse);
  EXPECT_EQ(invoke({"verify", path("missing.txt"), "--targets", "3,3"}).code, cli::kParse);
  EXPECT_EQ(invoke({"verify", party}).code, cli::kUsage);
  EXPECT_EQ(invoke({"verify", party, "--targets", "3,3,3"}).code, cli::kUsage);
}

TEST_F(CliTest, VerifyCertificate) {
  std::ostringstream cert;
  make_certificate(test::party5(), Problem({3, 3})).write(cert);
  const std::string good = write("cert.txt", cert.str());
  const Result r = invoke({"verify", good});
  EXPECT_EQ(r.code, cli::kSuccess);
  EXPECT_NE(r.out.find("CLIQUE-FREE: R(3,3) >= 6"), std::string::npos);

  std::string tampered = cert.str();
  tampered.replace(tampered.rfind("\n0\n"), 3, "\n1\n");
  EXPECT_EQ(invoke({"verify", write("bad.txt", tampered)}).code, cli::kVerificationFailed);
}

TEST_F(CliTest, ExtendKeepsPrefix) {
  const std::string party = write("party.txt", to_canonical_string(test::party5()));
  const Result r = invoke({"extend", party, "--seed", "5", "--out", path("six.txt")});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const Colouring six = load_colouring(path("six.txt"));
  ASSERT_EQ(six.n_vertices(), 6u);
  EXPECT_EQ(six.induced(std::vector<Vertex>{0, 1, 2, 3, 4}), test::party5());
  EXPECT_TRUE(fs::exists(path("six.txt.manifest.json")));

  ASSERT_EQ(invoke({"extend", path("six.txt"), "--seed", "5", "--out", path("seven.txt")}).code, cli::kSuccess);
  EXPECT_EQ(load_colouring(path("seven.txt")).n_vertices(), 7u);

  ASSERT_EQ(invoke({"replay", path("six.txt.manifest.json"), "--output", path("six-again.txt")}).code,
            cli::kSuccess);
  EXPECT_EQ(slurp(path("six-again.txt")), slurp(path("six.txt")));

  const std::string two = write("two.txt", to_canonical_string(Colouring(2, 2)));
  const Result grown = invoke({"extend", two, "--seed", "1"});
  ASSERT_EQ(grown.code, cli::kSuccess);
  EXPECT_EQ(parse_colouring(grown.out).n_vertices(), 3u);
}

TEST_F(CliTest, DosWritesHistogram) {
  const std::string party = write("party.txt", to_canonical_string(test::party5()));
  Result r = invoke({"dos", party, "--targets", "3,3"});
  ASSERT_EQ(r.code, cli::kSuccess);
  EXPECT_EQ(r.out, "1 1\n");
  EXPECT_EQ(r.err.find("warning"), std::string::npos);

  const std::string k4 = write("k4.txt", to_canonical_string(Colouring(4, 2)));
  r = invoke({"dos", k4, "--targets", "3,3", "--out", path("k4.dos")});
  ASSERT_EQ(r.code, cli::kSuccess);
  EXPECT_NE(r.err.find("off-manifold"), std::string::npos);
  EXPECT_EQ(slurp(path("k4.dos")), "2 1\n");
}

TEST_F(CliTest, CyclicModes) {
  Result r = invoke({"cyclic", "--targets", "3,3", "--n", "5", "--out", path("c5.txt")});
  ASSERT_EQ(r.code, cli::kSuccess);
  EXPECT_NE(r.out.find("classes: 0 1"), std::string::npos);
  EXPECT_TRUE(verify_clique_free(load_colouring(path("c5.txt")), Problem({3, 3})));

  r = invoke({"cyclic", "--targets", "3,3", "--n", "6"});
  EXPECT_EQ(r.code, cli::kSearchExhausted);

  r = invoke({"cyclic", "--targets", "4,4", "--n", "17", "--mode", "annealed", "--seed", "3", "--out",
              path("c17.txt")});
  ASSERT_EQ(r.code, cli::kSuccess);
  EXPECT_TRUE(verify_clique_free(load_colouring(path("c17.txt")), Problem({4, 4})));

  EXPECT_EQ(invoke({"cyclic", "--targets", "3,3,4", "--n", "29", "--budget", "100"}).code, cli::kUsage);
  EXPECT_EQ(invoke({"cyclic", "--targets", "3,3", "--n", "5", "--mode", "magic"}).code, cli::kUsage);
}

TEST_F(CliTest, ReplayRejectsBadManifest) {
  EXPECT_EQ(invoke({"replay", write("m.json", "{not json")}).code, cli::kParse);
  EXPECT_EQ(invoke({"replay", write("m2.json", "{}")}).code, cli::kParse);
}
