#include "latslice/cli/run.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice point counts, sections, projections and inequality checks"};
  app.set_help_flag("--help", "print this help and exit");  // --h is the family parameter
  std::string command, target, config_path;
  bool dump_config = false;
  app.add_option("command", command, "count | section | project | minima | polar | check | sweep | fuzz | scan-slicing")
      ->required();
  app.add_option("target", target, "check id (check, sweep) or probe (fuzz)");
  app.add_option("--config", config_path, "key = value file; flags override it");
  app.add_flag("--dump-config", dump_config, "print the effective configuration and exit");

  // flag name -> config key; values are kept as text and parsed by the config layer
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"--family", "family"}, {"--n", "n"},           {"--k", "k"},
      {"--h", "h"},           {"--m", "m"},           {"--s", "s"},
      {"--R", "R"},           {"--k-range", "k_range"}, {"--h-range", "h_range"},
      {"--m-range", "m_range"}, {"--r", "r"},         {"--lattice", "lattice"},
      {"--normal", "normal"}, {"--level", "level"},   {"--translate", "translate"},
      {"--matrix", "matrix"}, {"--normal-bound", "normal_bound"}, {"--dim-cap", "dim_cap"},
      {"--seed", "seed"},     {"--budget", "budget"}, {"--top", "top"},
      {"--out", "out"},       {"--format", "format"}, {"--jobs", "jobs"}};
  std::vector<std::string> values(flags.size());
  std::vector<CLI::Option*> options;
  for (std::size_t i = 0; i < flags.size(); ++i)
    options.push_back(app.add_option(flags[i].first, values[i], "sets '" + flags[i].second + "'")->allow_extra_args(false));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  latslice::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = latslice::load_config(config_path);
    cfg.command = command;
    if (!target.empty()) cfg.target = target;
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (options[i]->count() > 0) latslice::set_config_value(cfg, flags[i].second, values[i]);
  } catch (const latslice::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (dump_config) {
    std::cout << latslice::serialize(cfg);
    return 0;
  }
  return latslice::run(cfg, std::cout, std::cerr);
}
