#include "foldkit/cli.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace foldkit;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("fold prints the folded GCM") {
  auto r = cli({"fold", "--quiver", oracle::fixture("a3.quiver")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("{1,3}\t2\t-1\n") != std::string::npos);
  CHECK(r.out.find("{2}\t-2\t2\n") != std::string::npos);
  CHECK(r.out.find("Finite") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(cli({"mult", "--cartan", "2,-1;-1,2", "--lambda", "1,1", "--depth", "-1"}).code == kExitInput);
  CHECK(cli({"mult", "--cartan", "2,-1;-1,2", "--lambda", "1,1", "--depth", "-1"}).err.find("usage") !=
        std::string::npos);
  CHECK(cli({"mult", "--cartan", "2,-1;-1,2"}).code == kExitInput);
  CHECK(cli({"fold", "--quiver", oracle::fixture("bad_syntax.quiver")}).code == kExitInput);
  CHECK(cli({"fold", "--quiver", oracle::fixture("bad_syntax.quiver")}).err.find("line 3") != std::string::npos);
  CHECK(cli({"fold", "--quiver", "/nonexistent/x.quiver"}).code == kExitInput);
  CHECK(cli({"frobnicate"}).code == kExitInput);
  CHECK(cli({}).code == kExitInput);
  CHECK(cli({"mult", "--cartan", "2,-1;-1,2", "--lambda", "1,1", "--format", "xml"}).code == kExitInput);
  CHECK(cli({"mult", "--help"}).code == kExitOk);
}

TEST_CASE("mult output") {
  auto r = cli({"mult", "--cartan", "2,-1;-1,2", "--lambda", "1,1", "--depth", "4"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("nu\tmult\n0,0\t1\n", 0) == 0);
  CHECK(r.out.find("1,1\t2\n") != std::string::npos);
}

TEST_CASE("verify, chara and char on the 4-cycle") {
  const auto q = oracle::fixture("cycle4.quiver");
  auto v = cli({"verify", "--quiver", q, "--lambda", "1,0,1,0", "--depth", "4", "--with-crystal-check"});
  CHECK(v.code == kExitOk);
  CHECK(v.out.rfind("verified\n", 0) == 0);
  auto c = cli({"chara", "--quiver", q, "--lambda", "1,0,1,0", "--depth", "3"});
  CHECK(c.code == kExitOk);
  CHECK(c.out.rfind("exponent\tcoefficient\n-1/24\t1\n", 0) == 0);
  auto z = cli({"chara", "--quiver", q, "--lambda", "1,0,0,0", "--depth", "3"});
  CHECK(z.code == kExitOk);
  CHECK(z.out == "exponent\tcoefficient\n");
  auto l = cli({"char", "--cartan", "2,-2;-2,2", "--lambda", "1,0", "--depth", "2", "--latex"});
  CHECK(l.code == kExitOk);
  CHECK(l.out.find("q^{-1/24}") != std::string::npos);
}

TEST_CASE("fixed compares the two counts") {
  auto r = cli({"fixed", "--quiver", oracle::fixture("a3.quiver"), "--lambda", "0,1,0", "--depth", "4"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("nu\torbit_nu\tfixed\tfolded\n", 0) == 0);
}

TEST_CASE("repcheck report") {
  auto r = cli({"repcheck", "--seed", "5", "--trials", "10"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("property\ttrials\tfailures\tstatus\n", 0) == 0);
  CHECK(cli({"repcheck", "--trials", "-1"}).code == kExitInput);
}

TEST_CASE("output is byte-identical across runs and cache states") {
  const auto dir = (std::filesystem::temp_directory_path() / "foldkit-test-cli").string();
  std::filesystem::remove_all(dir);
  const std::vector<std::string> args{"crystal", "--cartan", "4,-2;-2,2", "--lambda", "1,1", "--depth", "4",
                                      "--cache", dir};
  auto a = cli(args), b = cli(args), c = cli({"crystal", "--cartan", "4,-2;-2,2", "--lambda", "1,1", "--depth", "4"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  std::filesystem::remove_all(dir);
}

} // TEST_SUITE
