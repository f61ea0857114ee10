#include "hlmax/cli.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace hlmax;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hlmax");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("hlmax_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

const std::string kDelta1 = R"({"dim": 1, "support": [{"point": [0], "value": "1"}]})";

}  // namespace

TEST(CliCount, Examples) {
  EXPECT_EQ(run({"count", "--dim", "1", "--radius", "5"}).out, "11\n");
  EXPECT_EQ(run({"count", "--dim", "2", "--radius", "0"}).out, "1\n");
  EXPECT_EQ(run({"count", "--dim", "2", "--radius", "3"}).out, "25\n");
  auto e = run({"count", "--dim", "2", "--radius", "1", "--enumerate"});
  EXPECT_EQ(lines(e.out).size(), 6u);
  EXPECT_EQ(run({"count", "--dim", "0", "--radius", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"count", "--dim", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"count", "--dim", "6", "--radius", "40", "--enumerate"}).code, kExitCapExceeded);
}

TEST(CliMaxfn, DeltaCenteredRows) {
  auto in = temp_file("delta1.json", kDelta1);
  auto r = run({"maxfn", "--input", in, "--geometry", "centered1d", "--box", "2", "--digits", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "x1,value,decimal\n"
            "-2,1/5,0.2000\n"
            "-1,1/3,0.3333\n"
            "0,1,1.0000\n"
            "1,1/3,0.3333\n"
            "2,1/5,0.2000\n");
}

TEST(CliMaxfn, EmptySupportAndCubeOnOneDimension) {
  auto empty = temp_file("empty.json", R"({"dim": 2, "support": []})");
  auto r = run({"maxfn", "--input", empty, "--geometry", "l1", "--box", "1"});
  ASSERT_EQ(r.code, kExitOk);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 10u);
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_NE(ls[i].find(",0,0.000000000000"), std::string::npos);

  auto two = temp_file("two.json", R"({"dim": 1, "support": [{"point": [0], "value": "1"}, {"point": [3], "value": "5/2"}]})");
  auto cube = run({"maxfn", "--input", two, "--geometry", "cube", "--box", "9"});
  auto unc = run({"maxfn", "--input", two, "--geometry", "uncentered1d", "--box", "9"});
  EXPECT_EQ(cube.code, kExitOk);
  EXPECT_EQ(cube.out, unc.out);
}

TEST(CliMaxfn, Errors) {
  auto bad = temp_file("bad.json", "{\"dim\": 1,\n\"support\": [}");
  auto r = run({"maxfn", "--input", bad, "--geometry", "l1", "--box", "2"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_TRUE(r.out.empty());

  auto d2 = temp_file("d2.json", R"({"dim": 2, "support": [{"point": [0, 0], "value": "1"}]})");
  EXPECT_EQ(run({"maxfn", "--input", d2, "--geometry", "centered1d", "--box", "2"}).code, kExitDimension);
  EXPECT_EQ(run({"maxfn", "--input", d2, "--geometry", "ball", "--box", "2"}).code, kExitUsage);
}

TEST(CliConstant, Examples) {
  auto u1 = run({"constant", "--kind", "uncentered", "--dim", "1", "--terms", "10"});
  ASSERT_EQ(u1.code, kExitOk);
  EXPECT_NE(u1.out.find("[2, 2]"), std::string::npos);

  auto u2 = run({"constant", "--kind", "uncentered", "--dim", "2", "--terms", "999"});
  ASSERT_EQ(u2.code, kExitOk);
  EXPECT_NE(u2.out.find("enclosure: [1499/125, 12]"), std::string::npos) << u2.out;

  auto c2 = run({"constant", "--kind", "centered", "--dim", "2", "--terms", "0"});
  ASSERT_EQ(c2.code, kExitOk);
  EXPECT_NE(c2.out.find("enclosure: [4, "), std::string::npos) << c2.out;

  EXPECT_NE(run({"constant", "--kind", "centered", "--dim", "1", "--terms", "5"}).out.find("[2, 2]"),
            std::string::npos);
  EXPECT_EQ(run({"constant", "--kind", "sideways", "--dim", "2", "--terms", "5"}).code, kExitUsage);
  EXPECT_EQ(run({"constant", "--kind", "centered", "--dim", "0", "--terms", "5"}).code, kExitUsage);
}

TEST(CliVerify, DeltaInputPassesWithJson) {
  auto in = temp_file("vdelta.json", kDelta1);
  auto js = (std::filesystem::temp_directory_path() / "hlmax_cli_summary.json").string();
  auto r = run({"verify", "--input", in, "--geometry", "centered1d", "--epsilon", "1/1000", "--json", js});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("result: PASS"), std::string::npos);
  std::ifstream jf(js);
  std::string summary((std::istreambuf_iterator<char>(jf)), {});
  EXPECT_NE(summary.find("\"gap\""), std::string::npos);
  EXPECT_NE(summary.find("\"trace\""), std::string::npos);

  auto u = run({"verify", "--input", in, "--geometry", "uncentered1d", "--epsilon", "0.001"});
  EXPECT_EQ(u.code, kExitOk);
  EXPECT_NE(u.out.find("Var f <= 2 ||f||_1"), std::string::npos);
  EXPECT_EQ(run({"verify"}).code, kExitUsage);
}

TEST(CliVerify, Suites) {
  auto l = run({"verify", "--suite", "lemmas"});
  EXPECT_EQ(l.code, kExitOk);
  EXPECT_NE(l.out.find("suite lemmas: PASS"), std::string::npos);
  EXPECT_EQ(run({"verify", "--suite", "everything"}).code, kExitUsage);
}

TEST(CliScan, CsvAndErrors) {
  auto r = run({"scan", "--geometry", "centered1d", "--family", "two-point", "--radius", "2", "--box", "100"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto ls = lines(r.out);
  EXPECT_EQ(ls.front(), "rank,support,support_size,l1,ratio,bound,gap,gap_decimal,is_delta");
  EXPECT_EQ(ls.size(), 1u + 2 * 9 + 1);
  EXPECT_NE(ls[1].find(",true"), std::string::npos);
  EXPECT_NE(r.err.find("deltas on top: yes"), std::string::npos);

  auto d = run({"scan", "--geometry", "l1", "--family", "delta", "--box", "20"});
  ASSERT_EQ(d.code, kExitOk);
  ASSERT_EQ(lines(d.out).size(), 2u);
  EXPECT_EQ(lines(d.out)[1].substr(0, 13), "1,\"(0,0):1\",1");

  EXPECT_EQ(run({"scan", "--geometry", "l1", "--family", "three-point"}).code, kExitUsage);
}

TEST(CliBinary, ByteIdenticalRuns) {
  auto out = std::filesystem::temp_directory_path();
  auto cmd = [&](const std::string& file) {
    return std::string(HLMAX_BINARY) + " --threads 3 scan --geometry cube --family two-point --radius 2 --box 30 --output " +
           (out / file).string() + " 2>/dev/null";
  };
  int a = std::system(cmd("scan_a.csv").c_str());
  int b = std::system(cmd("scan_b.csv").c_str());
  ASSERT_EQ(WEXITSTATUS(a), 0);
  ASSERT_EQ(WEXITSTATUS(b), 0);
  std::ifstream fa(out / "scan_a.csv", std::ios::binary), fb(out / "scan_b.csv", std::ios::binary);
  std::string sa((std::istreambuf_iterator<char>(fa)), {}), sb((std::istreambuf_iterator<char>(fb)), {});
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, sb);
  EXPECT_EQ(WEXITSTATUS(std::system((std::string(HLMAX_BINARY) + " count --dim 2 >/dev/null 2>&1").c_str())), 2);
}
