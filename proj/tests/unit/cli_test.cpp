#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dlat/cli.hpp"
#include "dlat/json_io.hpp"

namespace dlat {
namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "dlat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, DplusPipesIntoDTable) {
  const CliRun gram = cli({"lattice", "dplus", "12"});
  ASSERT_EQ(gram.code, 0);
  const CliRun table = cli({"lattice", "d", "--json"}, gram.out);
  ASSERT_EQ(table.code, 0) << table.err;
  const Json j = Json::parse(table.out);
  ASSERT_EQ(j["classes"].size(), 1u);
  EXPECT_EQ(j["classes"][0]["d"], "-2");
}

TEST(Cli, LensSlice) {
  const CliRun r = cli({"lens", "slice", "9", "1", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["verdict"], "obstructed");
  EXPECT_EQ(Json::parse(cli({"lens", "slice", "9", "2", "--json"}).out)["verdict"], "passes-both");
}

TEST(Cli, TaitGraphsCompareWithNegativeSign) {
  const CliRun tait = cli({"link", "tait", "-"}, R"({"pd": [[1,4,2,5],[3,6,4,1],[5,2,6,3]]})");
  ASSERT_EQ(tait.code, 0) << tait.err;
  const Json graphs = Json::parse(tait.out);
  const std::string dir = ::testing::TempDir();
  for (const char* color : {"black", "white"}) {
    std::ofstream(dir + color + ".json") << graphs[color].dump();
  }
  const CliRun r = cli({"link", "dcompare", dir + "black.json", dir + "white.json", "--sign", "-1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "isomorphic");
  EXPECT_EQ(j["witness"]["sign"], -1);

  const CliRun flow = cli({"link", "flow", dir + "white.json"});
  ASSERT_EQ(flow.code, 0);
  EXPECT_EQ(gram_from_json(Json::parse(flow.out)).size(), 2u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, kExitInput);
  EXPECT_EQ(cli({"lens", "slice", "9", "3"}).code, kExitInput);
  EXPECT_EQ(cli({"lattice", "d"}, R"({"gram": [[1, 2], [3, 4]]})").code, kExitInput);
  EXPECT_EQ(cli({"lattice", "d"}, "not json").code, kExitInput);
  EXPECT_EQ(cli({"lattice", "d", "/nonexistent/file.json"}).code, kExitInput);
  EXPECT_EQ(cli({"lattice", "dplus", "6"}).code, kExitInput);

  const std::string e8 = R"({"gram": [[2,-1,0,0,0,0,0,0],[-1,2,-1,0,0,0,0,0],[0,-1,2,-1,0,0,0,-1],
    [0,0,-1,2,-1,0,0,0],[0,0,0,-1,2,-1,0,0],[0,0,0,0,-1,2,-1,0],[0,0,0,0,0,-1,2,0],[0,0,-1,0,0,0,0,2]]})";
  EXPECT_EQ(cli({"lattice", "embed", "--budget-nodes", "5"}, e8).code, kExitOk);
  EXPECT_EQ(cli({"lattice", "embed", "--budget-nodes", "5", "--strict"}, e8).code, kExitInconclusive);
  const CliRun done = cli({"lattice", "embed", "--json", "--strict"}, e8);
  EXPECT_EQ(done.code, kExitOk);
  EXPECT_EQ(Json::parse(done.out)["status"], "does-not-embed");
}

TEST(Cli, ErrorsNameTheField) {
  const CliRun r = cli({"lattice", "d"}, R"({"matrix": [[1]]})");
  EXPECT_EQ(r.code, kExitInput);
  EXPECT_NE(r.err.find("'gram'"), std::string::npos) << r.err;
  const CliRun bad_color = cli({"link", "flow", "--color", "green", "-"}, "{}");
  EXPECT_EQ(bad_color.code, kExitInput);
  EXPECT_NE(bad_color.err.find("color"), std::string::npos) << bad_color.err;
}

TEST(Cli, SweepSummary) {
  const CliRun r = cli({"lens", "sweep", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("p = 9: passing q = 2 4 5 7"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace dlat
