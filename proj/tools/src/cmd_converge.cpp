#include "cli.hpp"
#include "dlt/volkov.hpp"
#include "report.hpp"

namespace dltcli {

int run_converge(const RunConfig& cfg, const std::string& pair_name, double x,
                 double t, const std::vector<double>& epsilons) {
  if (epsilons.empty())
    throw dlt::ConfigError("converge: --epsilon list must not be empty");
  const auto pair = dlt::volkov::make_pair(pair_name);
  if (epsilons.size() < 2)
    throw dlt::ConfigError("converge: slope undefined with a single epsilon");

  const auto probe = dlt::volkov::continuum_limit_probe(pair, x, t, epsilons);
  const double lo = 1.8, hi = 2.2;
  const bool pass = probe.slope > lo && probe.slope < hi;

  Sink sink(cfg);
  nlohmann::ordered_json params{
      {"pair", pair_name}, {"x", x}, {"t", t}, {"epsilons", epsilons}};
  write_config_header(sink.os(), cfg, "converge", params);
  if (cfg.format == "json") {
    for (const auto& [eps, err] : probe.errors)
      sink.os() << nlohmann::ordered_json{{"epsilon", eps}, {"error", err}}
                       .dump()
                << "\n";
    sink.os() << nlohmann::ordered_json{{"slope", probe.slope},
                                        {"pass", pass}}
                     .dump()
              << "\n";
  } else {
    sink.os() << "epsilon,error\n";
    for (const auto& [eps, err] : probe.errors)
      sink.os() << format_double(eps) << "," << format_double(err) << "\n";
    sink.os() << "# slope=" << format_double(probe.slope)
              << " pass=" << (pass ? 1 : 0) << "\n";
  }

  emit_plot_script(cfg,
                   "set datafile separator ','\n"
                   "set logscale xy\n"
                   "set xlabel 'epsilon'; set ylabel '|eps^2 h - 1/e^phi|'\n"
                   "plot '" + cfg.out + "' using 1:2 with linespoints "
                   "title 'continuum error'\n");
  return pass ? kExitPass : kExitNumerical;
}

}  // namespace dltcli
