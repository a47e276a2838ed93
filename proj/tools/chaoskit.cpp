#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "chaoskit/cli/opspec.hpp"
#include "chaoskit/cli/scenarios.hpp"
#include "chaoskit/error.hpp"
#include "chaoskit/kernels.hpp"

namespace {

using namespace chaoskit;

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct RunFlags {
  std::string scenario;
  std::string config;
  std::optional<std::int64_t> dim, horizon;
  std::optional<std::string> grid, eps, out;
  std::optional<std::uint64_t> seed;
  bool plot = false;
};

int do_run(const RunFlags& f) {
  cli::ScenarioConfig cfg;
  if (!f.config.empty()) cfg = cli::ScenarioConfig::from_json(read_text(f.config));
  if (!f.scenario.empty()) {
    if (!cfg.scenario.empty() && cfg.scenario != f.scenario)
      throw Error(ErrorCode::InvalidConfig,
                  "config names scenario '" + cfg.scenario + "' but '" + f.scenario + "' was requested");
    cfg.scenario = f.scenario;
  }
  if (cfg.scenario.empty()) throw Error(ErrorCode::InvalidConfig, "no scenario given");
  if (f.dim) cfg.parameters["dim"] = *f.dim;
  if (f.horizon) cfg.parameters["horizon"] = *f.horizon;
  if (f.grid) cfg.parameters["grid"] = *f.grid;
  if (f.eps) cfg.parameters["eps"] = *f.eps;
  if (f.out) cfg.out_dir = *f.out;
  if (f.seed) cfg.seed = *f.seed;
  if (f.plot) cfg.plot = true;

  const cli::ResultBundle bundle = cli::run_scenario(cfg);
  const auto written = cli::write_bundle(bundle, cfg);
  for (const std::string& line : bundle.summary) std::cout << line << '\n';
  std::cout << "wrote " << written.size() << " files to " << cfg.out_dir.string() << '\n';
  return cli::exit_code(bundle);
}

int do_build(const std::string& spec_path, const std::string& out_path) {
  const DenseOperator t = cli::parse_operator_spec(read_text(spec_path));
  std::cout << "dimension " << t.dim() << '\n';
  std::cout << "operator_norm " << cli::format_real(operator_norm(t)) << '\n';
  if (t.dim() <= kDefaultEigenCap) {
    double rho = 0.0;
    for (const Complex& z : eigenvalues(t)) rho = std::max(rho, std::abs(z));
    std::cout << "spectral_radius " << cli::format_real(rho) << '\n';
  }
  if (!out_path.empty()) {
    cli::Table m{"operator", {"row", "col", "value"}, {}};
    for (std::size_t i = 0; i < t.dim(); ++i)
      for (std::size_t j = 0; j < t.dim(); ++j)
        if (t(i, j) != Complex{}) m.add_row({std::to_string(i), std::to_string(j), cli::format_complex(t(i, j))});
    cli::write_file(out_path, cli::to_csv(m));
    std::cout << "wrote " << m.rows.size() << " nonzero entries to " << out_path << '\n';
  }
  return 0;
}

int do_list() {
  for (std::string_view name : cli::scenario_names())
    std::cout << name << "  " << cli::scenario_defaults(name).dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  chaoskit::kernels::configure_threads_from_env();

  CLI::App app{"chaoskit: finite-dimensional chaos diagnostics for linear operators"};
  app.require_subcommand(1);

  RunFlags rf;
  CLI::App* run = app.add_subcommand("run", "run a named scenario and write CSV/JSON results");
  run->add_option("scenario", rf.scenario, "scenario name (see 'list')");
  run->add_option("--config", rf.config, "JSON config file")->check(CLI::ExistingFile);
  run->add_option("--dim", rf.dim, "dimension override");
  run->add_option("--horizon", rf.horizon, "orbit horizon override");
  run->add_option("--grid", rf.grid, "lambda grid lo:hi:step");
  run->add_option("--eps", rf.eps, "epsilon rule (1/n, const:<v>, pow:<p>)");
  run->add_option("--out", rf.out, "output directory");
  run->add_option("--seed", rf.seed, "random seed");
  run->add_flag("--plot", rf.plot, "also write SVG plots");

  std::string spec_path, build_out;
  CLI::App* build = app.add_subcommand("build", "build an operator from a JSON spec");
  build->add_option("--spec", spec_path, "operator spec JSON file")->required()->check(CLI::ExistingFile);
  build->add_option("--out", build_out, "write nonzero entries as CSV");

  CLI::App* list = app.add_subcommand("list", "list scenarios and their default parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return do_run(rf);
    if (build->parsed()) return do_build(spec_path, build_out);
    if (list->parsed()) return do_list();
  } catch (const chaoskit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
