#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;

int run(const std::string& args) {
  const int rc = std::system((g_binary + " " + args + " > /dev/null 2>&1")
                                 .c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-dlt>\n");
    return 2;
  }
  g_binary = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}

TEST_CASE("exit code contract") {
  CHECK(run("evolve -N 2 --steps 10") == 0);
  CHECK(run("evolve -N 2 --steps 0") == 0);  // input echo
  CHECK(run("nonsense") == 2);               // usage
  CHECK(run("converge --pair exp --epsilon 0.1") == 2);  // slope undefined
  CHECK(run("converge --pair exp") == 2);                // empty list
  // volkov source with an epsilon incompatible with the quasi-period
  CHECK(run("evolve -N 2 --init volkov:exp:0.1 --steps 5") == 1);
  CHECK(run("evolve -N 2 --init volkov:tanh:0.25 --steps 5") == 1);
}

TEST_CASE("converge slope gate") {
  CHECK(run("converge --pair exp --epsilon 0.1 --epsilon 0.05 "
            "--epsilon 0.025 --epsilon 0.0125") == 0);
}

TEST_CASE("volkov-sourced evolution is exact") {
  CHECK(run("evolve -N 2 --init volkov:exp:0.17328679513998632 --steps 50 "
            "--tol 1e-12") == 0);
}

TEST_CASE("groupoid checks pass") {
  CHECK(run("groupoid --check theorem -N 3 --samples 20") == 0);
  CHECK(run("groupoid --check pentagon --samples 20") == 0);
  CHECK(run("groupoid --check inversion --samples 20") == 0);
  CHECK(run("groupoid --check dehn -N 1 --samples 5") == 0);
  CHECK(run("groupoid --check props -N 2 --samples 5") == 0);
}

TEST_CASE("same seed gives byte-identical reports") {
  const std::string out1 = "/tmp/dlt_cli_a.jsonl";
  const std::string out2 = "/tmp/dlt_cli_b.jsonl";
  const std::string args =
      "identities --suite fast --points 2 --seed 42 --format json --out ";
  CHECK(run(args + out1) == 0);
  CHECK(run(args + out2) == 0);
  const std::string a = slurp(out1), b = slurp(out2);
  CHECK(a == b);
  CHECK(a.find("\"config\"") != std::string::npos);
  CHECK(a.find("\"seed\":42") != std::string::npos);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("csv evolve output carries the header and residual summary") {
  const std::string out = "/tmp/dlt_cli_evolve.csv";
  CHECK(run("evolve -N 1 --steps 3 --seed 7 --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("# dlt ") == 0);
  CHECK(text.find("n,m,chi") != std::string::npos);
  CHECK(text.find("# max_residual=") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("plot script emission") {
  const std::string out = "/tmp/dlt_cli_conv.csv";
  CHECK(run("converge --pair exp --epsilon 0.1 --epsilon 0.05 --emit-plot "
            "--out " + out) == 0);
  const std::string script = slurp(out + ".gnuplot");
  CHECK(script.find("logscale") != std::string::npos);
  std::remove(out.c_str());
  std::remove((out + ".gnuplot").c_str());
}
