// Command-line driver: momap <verify|critical|hessian|decompose|cocycle> [options]

#include "momap/cli/config.hpp"
#include "momap/cli/report.hpp"
#include "momap/cli/runners.hpp"
#include "momap/cli/svg.hpp"
#include "momap/linalg.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace momap::cli;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

std::string slug(const std::string& name) {
  std::string s;
  for (char c : name) s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return s;
}

void write_outputs(const ExperimentReport& r, const ExperimentConfig& cfg, double seconds) {
  if (cfg.output.dir.empty()) return;
  fs::path dir(cfg.output.dir);
  fs::create_directories(dir);
  write_file(dir / (r.experiment + ".json"), to_json(r));
  if (!r.spectra.empty()) write_file(dir / (r.experiment + "_spectra.csv"), spectra_csv(r));
  if (!r.trajectory.empty()) write_file(dir / (r.experiment + "_trajectory.csv"), trajectory_csv(r));
  // Timing stays out of the JSON report so that reports are byte-identical.
  write_file(dir / (r.experiment + "_timing.txt"), std::to_string(seconds) + " s\n");
  if (!cfg.output.svg) return;
  if (!r.trajectory.empty()) {
    Series f{"norm square", {}, {}}, res{"residual", {}, {}};
    for (const auto& row : r.trajectory) {
      f.x.push_back(row[0]);
      f.y.push_back(row[1]);
      res.x.push_back(row[0]);
      res.y.push_back(row[2]);
    }
    write_file(dir / "trajectory.svg", svg_line_plot("gradient flow (" + r.example + ")", {f, res}, true));
  }
  for (const auto& [name, values] : r.spectra) {
    if (name == "endpoint") continue;
    write_file(dir / (slug(name) + ".svg"), svg_scatter(name + " (" + r.example + ")", values));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Momentum-map experiments: verification suites, critical points, Hessians, decompositions, cocycles"};
  app.require_subcommand(1, 1);

  std::string config_path, example, out_dir, algebra;
  std::uint64_t seed = 0;
  double tol = -1;
  int threads = -1;
  bool json = false, svg = false;

  const char* names[] = {"verify", "critical", "hessian", "decompose", "cocycle"};
  const char* help[] = {"run the invariant suites of the selected example",
                        "gradient descent on the norm square to a critical point",
                        "Hessian checks and orbit Hessian spectrum at a critical point",
                        "eigenspaces of i ad J(m) on the complex stabilizer",
                        "cocycle identities and closed-form comparisons"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], help[i]);
    sub->add_option("--config", config_path, "YAML config file");
    sub->add_option("--example", example, "galilean|heisenberg|virasoro|siegel|unitary|so3|user-algebra");
    sub->add_option("--out", out_dir, "output directory for JSON/CSV/SVG");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--tol", tol, "tolerance scale (multiplies every check tolerance)");
    sub->add_option("--algebra", algebra, "user algebra YAML file (example user-algebra)");
    sub->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
    sub->add_flag("--json", json, "print the JSON report to stdout");
    sub->add_flag("--svg", svg, "write SVG plots to the output directory");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string experiment = app.get_subcommands().front()->get_name();

  try {
    ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (!example.empty()) cfg.example = example;
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (!algebra.empty()) {
      cfg.algebra_file = algebra;
      if (example.empty()) cfg.example = "user-algebra";
    }
    if (app.get_subcommands().front()->count("--seed")) cfg.seed = seed;
    if (tol >= 0) cfg.tolerance_scale = tol;
    if (threads >= 0) cfg.threads = threads;
    if (json) cfg.output.json = true;
    if (svg) cfg.output.svg = true;
    if (tol < 0 && app.get_subcommands().front()->count("--tol")) throw ConfigError("--tol must be nonnegative");

    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport report = run_experiment(experiment, cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (cfg.output.json) {
      std::cout << to_json(report);
    } else {
      std::cout << text_summary(report);
    }
    write_outputs(report, cfg, seconds);
    std::cerr << "wall-clock " << seconds << " s\n";
    return exit_code(report);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const momap::NumericalRefusal& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
