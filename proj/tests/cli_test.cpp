#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string command = std::string(PGROUND_BINARY) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pground_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string read(const std::string& name) {
    std::ifstream in(dir_ / name);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const char* kColoring =
    "col(X,red) | col(X,yellow) | col(X,green) :- node(X).\n"
    ":- edge(X,Y), col(X,C), col(Y,C).\n"
    "node(a). node(b). node(c). node(d).\n"
    "edge(a,b). edge(b,c). edge(b,d). edge(c,d).\n";

const char* kColoringGolden =
    ":- edge(a,b), col(a,green), col(b,green).\n"
    ":- edge(a,b), col(a,red), col(b,red).\n"
    ":- edge(a,b), col(a,yellow), col(b,yellow).\n"
    ":- edge(b,c), col(b,green), col(c,green).\n"
    ":- edge(b,c), col(b,red), col(c,red).\n"
    ":- edge(b,c), col(b,yellow), col(c,yellow).\n"
    ":- edge(b,d), col(b,green), col(d,green).\n"
    ":- edge(b,d), col(b,red), col(d,red).\n"
    ":- edge(b,d), col(b,yellow), col(d,yellow).\n"
    ":- edge(c,d), col(c,green), col(d,green).\n"
    ":- edge(c,d), col(c,red), col(d,red).\n"
    ":- edge(c,d), col(c,yellow), col(d,yellow).\n"
    "col(a,red) | col(a,yellow) | col(a,green) :- node(a).\n"
    "col(b,red) | col(b,yellow) | col(b,green) :- node(b).\n"
    "col(c,red) | col(c,yellow) | col(c,green) :- node(c).\n"
    "col(d,red) | col(d,yellow) | col(d,green) :- node(d).\n";

TEST_F(Cli, GroundGolden) {
  auto in = write("coloring.lp", kColoring);
  auto r = run("ground " + in);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, kColoringGolden);
}

TEST_F(Cli, ThreadCountsGiveIdenticalFiles) {
  auto gen = run("gen threecol --n 8");
  ASSERT_EQ(gen.status, 0);
  auto in = write("3col.lp", gen.out);
  ASSERT_EQ(run("ground " + in + " --threads 1 -o " + path("one.txt")).status, 0);
  ASSERT_EQ(run("ground " + in + " --threads 8 --w-seq 10 --w-hard 100 -o " + path("eight.txt")).status, 0);
  EXPECT_FALSE(read("one.txt").empty());
  EXPECT_EQ(read("one.txt"), read("eight.txt"));
}

TEST_F(Cli, UnsafeRuleExitsWithOne) {
  auto in = write("bad.lp", "e(a).\np(X,Y) :- e(X).\n");
  auto r = run("ground " + in);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("bad.lp:2:1: safety"), std::string::npos) << r.out;
}

TEST_F(Cli, SyntaxErrorLocation) {
  auto in = write("syntax.lp", ":- p(X Y).\n");
  auto r = run("ground " + in);
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("syntax.lp:1:8: expected"), std::string::npos) << r.out;
}

TEST_F(Cli, ResourceExhaustedExitsWithTwo) {
  auto in = write("coloring.lp", kColoring);
  EXPECT_EQ(run("ground " + in + " --max-ground 5").status, 2);
}

TEST_F(Cli, StatsJson) {
  auto in = write("coloring.lp", kColoring);
  ASSERT_EQ(run("ground " + in + " --stats " + path("s.json") + " --levels c,s --threads 2").status, 0);
  auto j = nlohmann::json::parse(read("s.json"));
  EXPECT_EQ(j["workers"], 2);
  EXPECT_EQ(j["levels"], "c,s");
  EXPECT_EQ(j["ground_rules"], 16);
  EXPECT_EQ(j["components"].size(), 2u);
  ASSERT_EQ(j["rules"].size(), 2u);
  const auto& c = j["rules"][1];
  EXPECT_EQ(c["order"].size(), 3u);
  EXPECT_EQ(c["costs"].size(), 3u);
  EXPECT_EQ(c["literals"][0]["size"].get<int>() > 0, true);
}

TEST_F(Cli, WithFactsAndDumpDeps) {
  auto in = write("r.lp", "reach(X,Y) :- edge(X,Y).\nreach(X,Y) :- reach(X,Z), edge(Z,Y).\nedge(1,2).\n");
  auto r = run("ground " + in + " --with-facts");
  EXPECT_EQ(r.out, "edge(1,2).\nreach(1,2) :- edge(1,2).\n");
  auto d = run("ground " + in + " --dump-deps");
  EXPECT_EQ(d.status, 0);
  EXPECT_NE(d.out.find("digraph"), std::string::npos);
}

TEST_F(Cli, OracleAnswerSets) {
  auto in = write("ab.lp", "a | b.\n");
  auto r = run("oracle answersets " + in);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "{a}\n{b}\n");
  auto big = write("coloring.lp", kColoring);
  EXPECT_EQ(run("oracle answersets " + big + " --cap 4").status, 2);
}

TEST_F(Cli, GenAndBench) {
  auto r = run("gen reach --tree-levels 3 --siblings 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("edge(3,7)."), std::string::npos);
  auto b = run("bench reach --levels-list 1,8 --threads-list 1,4 --runs 5 --json");
  ASSERT_EQ(b.status, 0) << b.out;
  auto j = nlohmann::json::parse(b.out);
  ASSERT_EQ(j["entries"].size(), 4u);
  for (const auto& e : j["entries"]) EXPECT_EQ(e["times_ms"].size(), 5u);
}

TEST_F(Cli, BadLevels) { EXPECT_EQ(run("ground x.lp --levels q").status, 1); }

}  // namespace
