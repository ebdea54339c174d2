#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlt/common.hpp"

namespace dltcli {

// exit codes: 0 pass, 1 numerical fail, 2 usage error
inline constexpr int kExitPass = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  std::uint64_t seed = 1;
  double tol = 0.0;  // 0 = subcommand default
  std::string out;   // empty = stdout
  std::string format = "csv";
  bool emit_plot = false;
};

int run_evolve(const RunConfig& cfg, int N, const std::string& init,
               int steps);
int run_converge(const RunConfig& cfg, const std::string& pair, double x,
                 double t, const std::vector<double>& epsilons);
int run_identities(const RunConfig& cfg, const std::string& suite,
                   const std::vector<std::string>& b_list, int points);
int run_groupoid(const RunConfig& cfg, const std::string& check, int N,
                 int samples);

// "0.8", "1", "0.3+0.2i", "0.3-0.2i", "2i"
dlt::cplx parse_complex(const std::string& text);

}  // namespace dltcli
