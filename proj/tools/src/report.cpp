#include "report.hpp"

#include <cstdio>
#include <regex>

#include "dlt/errors.hpp"
#include "dlt/version.hpp"

namespace dltcli {

Sink::Sink(const RunConfig& cfg) : path_(cfg.out) {
  if (path_.empty()) {
    os_ = &std::cout;
    return;
  }
  file_.open(path_);
  if (!file_) throw dlt::ConfigError("cannot open output file " + path_);
  os_ = &file_;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json config_json(const RunConfig& cfg,
                                   const std::string& subcommand,
                                   const nlohmann::ordered_json& params) {
  nlohmann::ordered_json j;
  j["tool"] = "dlt";
  j["version"] = dlt::kVersion;
  j["subcommand"] = subcommand;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["format"] = cfg.format;
  j["params"] = params;
  return j;
}

void write_config_header(std::ostream& os, const RunConfig& cfg,
                         const std::string& subcommand,
                         const nlohmann::ordered_json& params) {
  const auto j = config_json(cfg, subcommand, params);
  if (cfg.format == "json") {
    os << nlohmann::ordered_json{{"config", j}}.dump() << "\n";
    return;
  }
  os << "# dlt " << dlt::kVersion << " " << subcommand << "\n";
  os << "# seed=" << cfg.seed << " tol=" << format_double(cfg.tol) << "\n";
  os << "# params=" << params.dump() << "\n";
}

void emit_plot_script(const RunConfig& cfg, const std::string& script_body) {
  if (!cfg.emit_plot) return;
  if (cfg.out.empty())
    throw dlt::ConfigError("--emit-plot needs --out to name the data file");
  std::ofstream script(cfg.out + ".gnuplot");
  if (!script)
    throw dlt::ConfigError("cannot write plot script next to " + cfg.out);
  script << "# generated by dlt; run: gnuplot " << cfg.out << ".gnuplot\n";
  script << script_body;
}

}  // namespace dltcli
