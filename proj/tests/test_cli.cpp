#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wgcl/cli.hpp"

using namespace wgcl;

namespace {

struct Run {
  int code;
  std::string out, err;

  std::vector<std::string> lines() const {
    std::vector<std::string> v;
    std::istringstream in(out);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
  }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string program(const std::string& name) {
  return std::string(WGCL_PROGRAMS_DIR) + "/" + name + ".wgcl";
}

std::string temp_program(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("wgcl_test_" + name + ".wgcl");
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("wp over a grid") {
  auto r = run({"wp", program("ski_nd"), "--post", "one", "--grid", "n=0..8,y=0..8"});
  CHECK(r.code == exit_ok);
  auto lines = r.lines();
  REQUIRE(lines.size() == 81);
  for (int n = 0, i = 0; n <= 8; ++n)
    for (int y = 0; y <= 8; ++y, ++i)
      CHECK(lines[i] == "n=" + std::to_string(n) + ",y=" + std::to_string(y) + " | " +
                            std::to_string(std::min(n, y)) + " | exact");
}

TEST_CASE("wlp and wp on single states") {
  auto r = run({"wlp", program("ex410"), "--post", "int(0)", "--state", "x=2"});
  CHECK(r.code == exit_ok);
  CHECK(r.out == "x=2 | 0 | exact\n");

  auto f = run({"wp", program("fib"), "--post", "[m<=1] int(1)", "--state", "n=5,c=0,m=0"});
  CHECK(f.code == exit_ok);
  CHECK(f.out == "c=0,m=0,n=5 | 13 | exact\n");

  auto chain = run({"wlp", program("ex411"), "--post", "zero", "--state", "x=1",
                    "--strategy", "chain", "--fuel", "4"});
  CHECK(chain.code == exit_inexact);
  CHECK(chain.out.find("inexact") != std::string::npos);

  auto lasso = run({"wlp", program("ex411"), "--post", "zero", "--state", "x=1",
                    "--strategy", "lasso"});
  CHECK(lasso.out == "x=1 | {(b)^ω} | exact\n");
}

TEST_CASE("tsv output") {
  auto r = run({"wp", program("ex411"), "--state", "x=1", "--fuel", "3", "--format", "tsv"});
  CHECK(r.code == exit_inexact);
  CHECK(r.out == "x=1\t{a,ba,bba}\tinexact\n");
}

TEST_CASE("invariant checks") {
  auto fixed = run({"check", program("ex55_arctic"), "--post", "0", "--inv",
                    "[not (x>0 and y>0)] 0 (+) [x>0 and y>0] 2*(x-1)+y", "--grid",
                    "x=0..6,y=0..6", "--mode", "fixed"});
  CHECK(fixed.code == exit_ok);
  auto lines = fixed.lines();
  REQUIRE(lines.size() == 50);
  CHECK(lines[0] == "x=0,y=0 | 0 | 0 | holds | uct certain | wp = wlp = I");
  CHECK(lines[48] == "x=6,y=6 | 16 | 16 | holds | uct certain | wp = wlp = I");
  CHECK(lines[49].find("wp = wlp = I on the checked states") != std::string::npos);

  auto sub = run({"check", program("ex410"), "--post", "int(0)", "--inv", "zero", "--mode",
                  "sub", "--grid", "x=0..4"});
  CHECK(sub.code == exit_ok);

  auto super = run({"check", program("fib"), "--post", "[m<=1] int(1)", "--inv",
                    "[m<=1] ([c=0] fib(n+2) (+) [c>0] fib(n+1))", "--mode", "super", "--grid",
                    "n=0..5,c=0..1,m=0..1"});
  CHECK(super.code == exit_ok);

  auto fails = run({"check", program("fib"), "--post", "[m<=1] int(1)", "--inv", "zero",
                    "--mode", "super", "--state", "n=0"});
  CHECK(fails.code == exit_mismatch);
  CHECK(fails.out.find("fails") != std::string::npos);

  auto no_loop = run({"check", program("knapsack"), "--inv", "zero"});
  CHECK(no_loop.code == exit_error);
  CHECK(no_loop.err.find("not a loop") != std::string::npos);
}

TEST_CASE("oracle comparison") {
  auto r = run({"compare", program("knapsack"), "--post", "[t<=6 and r>=13] int(1)", "--state",
                "x=0", "--state", "x=8", "--state", "x=13"});
  CHECK(r.code == exit_ok);
  auto lines = r.lines();
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "x=0 | 1 | 1 | equal | transformer exact | oracle exact");
  CHECK(lines[1] == "x=8 | 2 | 2 | equal | transformer exact | oracle exact");
  CHECK(lines[2] == "x=13 | 3 | 3 | equal | transformer exact | oracle exact");

  auto skip = temp_program("skip", "@instance counting\nskip\n");
  auto s = run({"compare", skip, "--post", "int(x)", "--state", "x=4"});
  CHECK(s.out == "x=4 | 4 | 4 | equal | transformer exact | oracle exact\n");

  auto liberal = run({"compare", program("ex410"), "--liberal", "--post", "int(0)", "--state",
                      "x=2"});
  CHECK(liberal.out.find("x=2 | 0 | 0 | equal") == 0);
}

TEST_CASE("competitive ratio") {
  auto r = run({"compare", program("ski_onl"), "--ratio", program("ski_nd"), "--post", "one",
                "--grid", "n=1..8,y=1..8"});
  CHECK(r.code == exit_ok);
  auto lines = r.lines();
  REQUIRE(lines.size() == 65);
  CHECK(lines[63] == "n=8,y=8 | 15 | 8 | 15/8 | exact");
  CHECK(lines[64] == "max ratio 15/8 at n=8,y=8; a lower bound for the supremum over all states");
}

TEST_CASE("paths, termination and decomposition") {
  auto p = run({"paths", program("ex49"), "--state", "x=0"});
  CHECK(p.out == "L | 2 | x=0 | terminal\nR | 3 | x=0 | terminal\n");

  auto u = run({"uct", program("ex410"), "--state", "x=1", "--state", "x=2"});
  CHECK(u.code == exit_inexact);
  CHECK(u.lines()[0] == "x=1 | certain | max path length 1");
  CHECK(u.lines()[1].find("x=2 | refuted") == 0);

  auto d = run({"decompose", program("ski_nd"), "--grid", "n=0..2,y=0..2"});
  CHECK(d.code == exit_ok);
  CHECK(d.lines().size() == 9);
}

TEST_CASE("parse prints the program back") {
  auto r = run({"parse", program("mutex")});
  CHECK(r.code == exit_ok);
  CHECK(r.out.rfind("@instance omegalang:abcdef\n", 0) == 0);
  auto again = run({"parse", temp_program("mutex_again", r.out)});
  CHECK(again.out == r.out);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == exit_usage);
  CHECK(run({"wp"}).code == exit_usage);
  CHECK(run({"wp", program("ex49"), "--frobnicate"}).code == exit_usage);
  CHECK(run({"wp", "/nonexistent/file.wgcl"}).code == exit_usage);
  CHECK(run({"wp", program("ex49"), "--format", "xml"}).code == exit_usage);
  CHECK(run({"wp", program("ex49"), "--grid", "x=0..999,y=0..999"}).code == exit_usage);
  CHECK(run({"wp", program("ex49"), "--grid", "x=0..9", "--max-states", "5"}).code ==
        exit_usage);

  auto bad = temp_program("bad", "@instance tropical\nx := ;\n");
  auto r = run({"wp", bad});
  CHECK(r.code == exit_usage);
  CHECK(r.err.find("line 2, column 6") != std::string::npos);

  CHECK(run({"wp", program("ex49"), "--instance", "reals"}).code == exit_usage);
  CHECK(run({"--help"}).code == exit_ok);
}

TEST_CASE("instance override and fuel from the environment") {
  auto r = run({"wp", program("ex49"), "--instance", "arctic", "--state", "x=0"});
  CHECK(r.out == "x=0 | 3 | exact\n");

  ::setenv("WGCL_FUEL", "3", 1);
  auto f = run({"wp", program("ex411"), "--state", "x=1"});
  ::unsetenv("WGCL_FUEL");
  CHECK(f.out == "x=1 | {a,ba,bba} | inexact\n");
  ::setenv("WGCL_FUEL", "lots", 1);
  CHECK(run({"wp", program("ex411")}).code == exit_usage);
  ::unsetenv("WGCL_FUEL");
}
