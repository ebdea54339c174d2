#include <CLI11.hpp>

#include <iostream>
#include <regex>

#include "cli.hpp"
#include "dlt/errors.hpp"
#include "dlt/version.hpp"

namespace dltcli {

dlt::cplx parse_complex(const std::string& text) {
  static const std::regex pat(
      R"(^([+-]?[0-9]*\.?[0-9]+(?:[eE][+-]?[0-9]+)?)?(?:([+-][0-9]*\.?[0-9]*(?:[eE][+-]?[0-9]+)?)?i)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, pat) || (m[1].str().empty() && m[2].str().empty() && text.find('i') == std::string::npos))
    throw dlt::ConfigError("cannot parse complex number: " + text);
  double re = 0.0, im = 0.0;
  if (text.find('i') == std::string::npos) {
    re = std::stod(text);
  } else {
    if (m[1].matched && !m[1].str().empty()) {
      if (m[2].matched || text.back() == 'i') {
        // forms like "a+bi" or plain "bi"
        if (m[2].matched && !m[2].str().empty()) {
          re = std::stod(m[1].str());
          const std::string imtxt = m[2].str();
          im = (imtxt == "+" || imtxt == "-") ? std::stod(imtxt + "1")
                                              : std::stod(imtxt);
        } else {
          im = std::stod(m[1].str());
        }
      }
    } else if (m[2].matched && !m[2].str().empty()) {
      const std::string imtxt = m[2].str();
      im = (imtxt == "+" || imtxt == "-") ? std::stod(imtxt + "1")
                                          : std::stod(imtxt);
    } else {
      im = 1.0;
    }
  }
  return {re, im};
}

}  // namespace dltcli

int main(int argc, char** argv) {
  using namespace dltcli;
  CLI::App app{"discrete Liouville / Teichmueller toolkit"};
  app.set_version_flag("--version", dlt::kVersion);
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "RNG seed; fixes every sampled point");
  app.add_option("--tol", cfg.tol, "override the pass/fail tolerance");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--emit-plot", cfg.emit_plot,
               "write a gnuplot script next to --out");

  int N = 2, steps = 50, samples = 100, points = 8;
  double x = 0.3, t = 0.1;
  std::string init = "random", pair = "exp", suite = "fast",
              check = "theorem";
  std::vector<double> epsilons;
  std::vector<std::string> b_list;

  auto* evolve = app.add_subcommand(
      "evolve", "evolve the discrete Liouville lattice; CSV columns n,m,chi");
  evolve->add_option("-N,--period", N, "lattice period parameter (2N sites)");
  evolve->add_option("--steps", steps, "number of time steps");
  evolve->add_option("--init", init,
                     "random or volkov:<pair>:<epsilon> initial data");

  auto* converge = app.add_subcommand(
      "converge",
      "continuum-limit probe; CSV columns epsilon,error, slope in footer");
  converge->add_option("--pair", pair, "generating pair name");
  converge->add_option("-x", x, "space point");
  converge->add_option("-t", t, "time point");
  converge->add_option("--epsilon", epsilons, "decreasing lattice spacings");

  auto* identities = app.add_subcommand(
      "identities", "quantum dilogarithm identity suite; JSONL residuals");
  identities->add_option("--suite", suite, "fast, full or slow")
      ->check(CLI::IsMember({"fast", "full", "slow"}));
  identities->add_option("--b", b_list, "couplings, e.g. 1 0.8 0.5+0.866i");
  identities->add_option("--points", points, "sample points per identity");

  auto* groupoid = app.add_subcommand(
      "groupoid", "decorated-triangulation checks; deviation table");
  groupoid->add_option("--check", check,
                       "pentagon, inversion, dehn, theorem or props")
      ->check(CLI::IsMember({"pentagon", "inversion", "dehn", "theorem",
                             "props"}));
  groupoid->add_option("-N,--period", N, "annulus marked points per boundary");
  groupoid->add_option("--samples", samples, "random coordinate samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (evolve->parsed()) return run_evolve(cfg, N, init, steps);
    if (converge->parsed()) return run_converge(cfg, pair, x, t, epsilons);
    if (identities->parsed())
      return run_identities(cfg, suite, b_list, points);
    if (groupoid->parsed()) return run_groupoid(cfg, check, N, samples);
  } catch (const dlt::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dlt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
