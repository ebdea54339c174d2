#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <json.hpp>

#include "cli.hpp"

namespace dltcli {

/// Output sink: file when cfg.out is set, stdout otherwise.
class Sink {
 public:
  explicit Sink(const RunConfig& cfg);
  std::ostream& os() { return *os_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* os_;
};

/// Reproducibility header: config, seed, version, tolerances. Emitted as
/// `# key=value` lines in CSV mode and a single JSON line in json mode.
void write_config_header(std::ostream& os, const RunConfig& cfg,
                         const std::string& subcommand,
                         const nlohmann::ordered_json& params);

nlohmann::ordered_json config_json(const RunConfig& cfg,
                                   const std::string& subcommand,
                                   const nlohmann::ordered_json& params);

std::string format_double(double v);

/// Companion gnuplot script next to the CSV output (no-op without --out).
void emit_plot_script(const RunConfig& cfg, const std::string& script_body);

}  // namespace dltcli
