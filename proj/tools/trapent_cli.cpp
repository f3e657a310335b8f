#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "trapent/checks.hpp"
#include "trapent/config.hpp"
#include "trapent/run.hpp"

int main(int argc, char** argv) {
  using namespace trapent::cli;

  CLI::App app{"Energy spectrum and pair entanglement of two atoms in an anisotropic harmonic trap"};
  app.set_version_flag("--version", std::string(TRAPENT_VERSION));
  std::string config_path, mode, output, format;
  app.add_option("-c,--config", config_path, "key = value configuration file");
  app.add_option("-m,--mode", mode, "spectrum | entanglement | toy | validate");
  app.add_option("-o,--output", output, "output file (default: standard output)");
  app.add_option("-f,--format", format, "csv | json");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read config file " << config_path << "\n";
      return kExitConfigError;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  Overrides overrides;
  if (!mode.empty()) overrides.emplace_back("mode", mode);
  if (!output.empty()) overrides.emplace_back("output", output);
  if (!format.empty()) overrides.emplace_back("format", format);

  RunConfig cfg;
  try {
    cfg = parse_config(text, overrides);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return run(cfg, std::cerr, [](std::ostream& out) { return trapent::validation::validate_all(out); });
}
