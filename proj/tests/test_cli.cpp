#include "ordlab/cli.hpp"
#include "ordlab/provenance.hpp"
#include "ordlab/structure_io.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ordlab;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  const auto help = run({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("Usage"), std::string::npos);
  const auto unknown = run({"check", "--family", "uniform", "--bogus"});
  EXPECT_EQ(unknown.code, kExitUsage);
  EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"gen", "girth"}).code, kExitUsage);  // --n is required
  EXPECT_EQ(run({"gen", "girth", "--n", "30", "--a", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"check", "--family", "nope"}).code, kExitUsage);
  EXPECT_EQ(run({"--workers", "0", "exp", "extension", "--k", "2", "--m", "1", "--n", "1"}).code, kExitUsage);
}

TEST(Cli, ExtensionPrintsRatio) {
  const auto r = run({"exp", "extension", "--k", "2", "--m", "1", "--n", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "1/5\n");
  const auto j = nlohmann::json::parse(run({"exp", "extension", "--k", "2", "--m", "1", "--n", "3", "--format", "json"}).out);
  EXPECT_EQ(j["result"]["conditional"], "2/5");
  EXPECT_EQ(j["meta"]["command"], "exp extension");
}

TEST(Cli, CheckUniformSucceeds) {
  const auto r = run({"check", "--family", "uniform", "--kind", "graph", "--nmax", "4"});
  EXPECT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["meta"]["verdicts"]["consistent"].get<bool>());
  EXPECT_TRUE(j["meta"].contains("seed"));
  const auto bad = run({"check", "--family", "degree-sorted", "--kind", "graph", "--nmax", "3"});
  EXPECT_EQ(bad.code, kExitVerificationFailed);
}

TEST(Cli, GirthWritesStructureAndProvenance) {
  test_support::TempDir dir;
  const auto out = dir.file("g.txt");
  const auto r = run({"gen", "girth", "--n", "30", "--r", "3", "--g", "4", "--seed", "7", "--out", out});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto g = std::get<Hypergraph>(read_structure(out));
  EXPECT_FALSE(hypergraph_girth(g, 4).has_value());
  const auto prov = read_json_file(provenance_path(out));
  EXPECT_EQ(prov["seed"], 7u);
  EXPECT_EQ(prov["version"], kVersion);
  EXPECT_TRUE(prov["verdicts"]["girth_at_least_g"].get<bool>());
  EXPECT_EQ(prov["payload_sha256"], sha256_hex(read_text_file(out)));
  EXPECT_EQ(prov["argv"][0], "gen");
}

TEST(Cli, ReplayIsIdenticalAcrossWorkers) {
  test_support::TempDir dir;
  const auto path = dir.file("p3.txt");
  write_text_file(path, format_hypergraph(make_path(3)));
  const auto out = dir.file("dist.json");
  ASSERT_EQ(run({"--seed", "3", "--workers", "8", "--samples", "20000", "--out", out, "sample", "--construction",
                 "gauss", "--input", path})
                .code,
            kExitOk);
  for (const char* w : {"1", "3"}) {
    const auto r = run({"replay", provenance_path(out), "--workers", w});
    EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
    EXPECT_TRUE(nlohmann::json::parse(r.out)["identical"].get<bool>());
  }
}

TEST(Cli, ReplayRejectsOtherVersions) {
  test_support::TempDir dir;
  const auto out = dir.file("e.txt");
  ASSERT_EQ(run({"exp", "extension", "--k", "2", "--m", "1", "--n", "2", "--out", out}).code, kExitOk);
  auto prov = read_json_file(provenance_path(out));
  prov["version"] = "0.0.0-other";
  write_text_file(provenance_path(out), prov.dump());
  EXPECT_EQ(run({"replay", provenance_path(out)}).code, kExitUsage);
}

TEST(Cli, ReplayDetectsTamperedDigest) {
  test_support::TempDir dir;
  const auto out = dir.file("e.txt");
  ASSERT_EQ(run({"exp", "extension", "--k", "2", "--m", "1", "--n", "2", "--out", out}).code, kExitOk);
  auto prov = read_json_file(provenance_path(out));
  prov["payload_sha256"] = sha256_hex("something else");
  write_text_file(provenance_path(out), prov.dump());
  const auto r = run({"replay", provenance_path(out)});
  EXPECT_EQ(r.code, kExitVerificationFailed);
  EXPECT_FALSE(nlohmann::json::parse(r.out)["identical"].get<bool>());
}

TEST(Cli, SweepCsv) {
  const auto r = run({"--format", "csv", "--samples", "5", "exp", "sweep", "--ns", "8,9", "--seeds", "1,2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,k,r,seed,samples,n_ind,capacity,capacity_deviation,delta,tv_bound");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Cli, TvFromDistributionsAndBound) {
  test_support::TempDir dir;
  const auto path = dir.file("p3.txt");
  write_text_file(path, format_hypergraph(make_path(3)));
  const auto a = dir.file("a.json");
  const auto b = dir.file("b.json");
  ASSERT_EQ(run({"--seed", "1", "--samples", "5000", "--out", a, "sample", "--construction", "uniform", "--input", path}).code,
            kExitOk);
  ASSERT_EQ(run({"--seed", "1", "--samples", "5000", "--out", b, "sample", "--construction", "uniform", "--input", path}).code,
            kExitOk);
  const auto same = nlohmann::json::parse(run({"tv", "--a", a, "--b", b}).out);
  EXPECT_EQ(same["result"]["tv"], 0.0);
  const auto bound = nlohmann::json::parse(run({"tv", "--delta", "1/12", "--k", "3"}).out);
  EXPECT_EQ(bound["result"]["bound"], "1/4");
}

TEST(Cli, AdmissibleAndQop) {
  test_support::TempDir dir;
  const auto v = dir.file("v.txt");
  write_text_file(v, format_structure(Structure(VectorSpace(2, 2))));
  const auto r = nlohmann::json::parse(run({"admissible", "--family", "VS_NATURAL", "--structure", v}).out);
  EXPECT_EQ(r["result"]["count"], 6);
  EXPECT_TRUE(r["result"]["order_transitive"].get<bool>());
  const auto c = dir.file("c5.txt");
  write_text_file(c, format_hypergraph(make_cycle(5)));
  const auto q = run({"exp", "qop", "--structure", c, "--subset", "0,1", "--sub-order", "0,1", "--order", "0,1,2,3,4"});
  ASSERT_EQ(q.code, kExitOk) << q.err;
  EXPECT_EQ(nlohmann::json::parse(q.out)["result"]["proportion"], "1/2");
  const auto qe = run({"exp", "qop", "--structure", c, "--subset", "0,1", "--sub-order", "0,1", "--order", "0,1,2,3,4",
                       "--mode", "embeddings"});
  ASSERT_EQ(qe.code, kExitOk) << qe.err;
  EXPECT_EQ(nlohmann::json::parse(qe.out)["result"]["proportion"], "1/2");
}

TEST(Cli, GeneratorsVerify) {
  test_support::TempDir dir;
  const auto x = dir.file("x.txt");
  write_text_file(x, "metric n=3\n0 1 1.2\n1 0 1\n1.2 1 0\n");
  const auto m = run({"--seed", "2", "gen", "metric", "--input", x, "--n", "20"});
  EXPECT_EQ(m.code, kExitOk) << m.err;
  EXPECT_EQ(m.out.rfind("metric n=20", 0), 0u);
  const auto k3 = dir.file("k3.txt");
  write_text_file(k3, format_hypergraph(make_complete(3)));
  const auto f = run({"--seed", "2", "gen", "forb", "--n", "30", "--forbid", k3});
  EXPECT_EQ(f.code, kExitOk) << f.err;
  const auto mc = run({"--seed", "2", "--samples", "2000", "exp", "mc", "--construction", "uniform", "--input", k3,
                       "--event", "0<1<2"});
  ASSERT_EQ(mc.code, kExitOk) << mc.err;
  const auto est = nlohmann::json::parse(mc.out)["result"];
  EXPECT_LE(est["ci_low"].get<double>(), 1.0 / 6);
  EXPECT_GE(est["ci_high"].get<double>(), 1.0 / 6);
}
