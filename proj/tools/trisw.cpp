#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "trisw/config.hpp"
#include "trisw/errors.hpp"
#include "trisw/reports.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConstraint = 3;
constexpr int kExitNumeric = 4;

struct Options {
  std::string config_path;
  std::optional<std::string> out_dir;
  bool dump_models = false;
  std::vector<int> horizons;
  std::vector<double> lambdas;
};

trisw::RunConfig load(const Options& opt) {
  auto cfg = opt.config_path.empty() ? trisw::parse_config(nlohmann::json::object())
                                     : trisw::parse_config_file(opt.config_path);
  if (opt.out_dir) cfg.output_dir = *opt.out_dir;
  return cfg;
}

std::ofstream open_output(const fs::path& dir, const std::string& name) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path p = dir / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw trisw::ConfigError("cannot write '" + p.string() + "'");
  return out;
}

void write_json(const fs::path& dir, const std::string& name, const nlohmann::json& j) {
  auto out = open_output(dir, name);
  out << j.dump(2) << '\n';
}

int run_simulate(const Options& opt) {
  const auto cfg = load(opt);
  const fs::path dir = cfg.output_dir;
  if (opt.dump_models) {
    const auto bank = trisw::build_model_bank(cfg.circuit, cfg.mpc.t_s, cfg.model_variant);
    write_json(dir, "models.json", trisw::model_bank_json(bank));
  }
  const auto trace =
      trisw::run_closed_loop(cfg.circuit, cfg.mpc, cfg.reference, cfg.sim, cfg.model_variant);
  {
    auto out = open_output(dir, "trace.csv");
    trisw::write_trace_csv(out, trace);
  }
  const auto metrics = trisw::compute_metrics(trace, cfg.sim);
  write_json(dir, "metrics.json", trisw::metrics_json(metrics));
  return kExitOk;
}

int run_sweep(const Options& opt) {
  const auto cfg = load(opt);
  const auto cells = trisw::sweep(opt.horizons, opt.lambdas, cfg.circuit, cfg.mpc, cfg.reference,
                                  cfg.sim, cfg.model_variant);
  auto out = open_output(cfg.output_dir, "sweep.csv");
  trisw::write_sweep_csv(out, cells);
  for (const auto& c : cells) {
    if (!c.ok) std::cerr << "trisw: sweep cell n_p=" << c.n_p << " lambda=" << c.lambda
                         << " failed: " << c.error << '\n';
  }
  return kExitOk;
}

int run_design(const Options& opt) {
  const auto cfg = load(opt);
  const auto report = trisw::size_components(trisw::design_inputs(cfg), cfg.design.ripple);
  write_json(cfg.output_dir, "design.json", trisw::design_json(report));
  trisw::write_design_table(std::cout, report);
  return kExitOk;
}

int run_compare(const Options& opt) {
  const auto cfg = load(opt);
  const auto rows = trisw::comparison_report(cfg.reference.v_m);
  auto out = open_output(cfg.output_dir, "compare.csv");
  trisw::write_compare_csv(out, rows);
  trisw::write_compare_csv(std::cout, rows);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-switch inverter simulation, MPC and design tool"};
  app.require_subcommand(1);
  Options opt;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "output directory");
  };

  auto* simulate = app.add_subcommand("simulate", "closed-loop run; writes trace.csv and metrics.json");
  common(simulate);
  simulate->add_flag("--dump-models", opt.dump_models, "also write models.json");

  auto* sweep = app.add_subcommand("sweep", "n_p x lambda grid; writes sweep.csv");
  common(sweep);
  sweep->add_option("--np", opt.horizons, "horizons")->required()->delimiter(',');
  sweep->add_option("--lambda", opt.lambdas, "weights")->required()->delimiter(',');

  auto* design = app.add_subcommand("design", "component sizing; writes design.json");
  common(design);

  auto* compare = app.add_subcommand("compare", "topology table; writes compare.csv");
  common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "trisw: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*simulate) return run_simulate(opt);
    if (*sweep) return run_sweep(opt);
    if (*design) return run_design(opt);
    return run_compare(opt);
  } catch (const trisw::ConstraintError& e) {
    std::cerr << "trisw: constraint violation: " << e.what() << '\n';
    return kExitConstraint;
  } catch (const trisw::NumericError& e) {
    std::cerr << "trisw: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const trisw::ConfigError& e) {
    std::cerr << "trisw: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "trisw: config error: " << e.what() << '\n';
    return kExitConfig;
  }
}
