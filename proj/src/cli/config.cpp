#include "momap/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace momap::cli {

namespace {

void reject_unknown(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(where + " must be a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (node[key]) out = node[key].as<T>();
}

ExperimentConfig parse_node(const YAML::Node& root) {
  ExperimentConfig c;
  if (!root || root.IsNull()) return c;
  reject_unknown(root, "config",
                 {"example", "seed", "tolerance_scale", "parameters", "samples", "quadrature", "critical", "output",
                  "algebra_file", "threads"});
  read(root, "example", c.example);
  read(root, "seed", c.seed);
  read(root, "tolerance_scale", c.tolerance_scale);
  read(root, "algebra_file", c.algebra_file);
  read(root, "threads", c.threads);
  if (auto p = root["parameters"]) {
    reject_unknown(p, "parameters", {"mass", "spin", "n", "modes", "grid", "diffeo_grid", "schwarzian_grid", "radius"});
    read(p, "mass", c.parameters.mass);
    read(p, "spin", c.parameters.spin);
    read(p, "n", c.parameters.n);
    read(p, "modes", c.parameters.modes);
    read(p, "grid", c.parameters.grid);
    read(p, "diffeo_grid", c.parameters.diffeo_grid);
    read(p, "schwarzian_grid", c.parameters.schwarzian_grid);
    read(p, "radius", c.parameters.radius);
  }
  if (auto s = root["samples"]) {
    reject_unknown(s, "samples", {"points", "directions", "pairs", "triples", "diffeos", "hessian_directions"});
    read(s, "points", c.samples.points);
    read(s, "directions", c.samples.directions);
    read(s, "pairs", c.samples.pairs);
    read(s, "triples", c.samples.triples);
    read(s, "diffeos", c.samples.diffeos);
    read(s, "hessian_directions", c.samples.hessian_directions);
  }
  if (auto q = root["quadrature"]) {
    reject_unknown(q, "quadrature", {"nodes", "panels"});
    read(q, "nodes", c.quadrature.nodes);
    read(q, "panels", c.quadrature.panels);
  }
  if (auto k = root["critical"]) {
    reject_unknown(k, "critical", {"max_iterations", "tolerance", "perturbation", "initial_step", "start"});
    read(k, "max_iterations", c.critical.max_iterations);
    read(k, "tolerance", c.critical.tolerance);
    read(k, "perturbation", c.critical.perturbation);
    read(k, "initial_step", c.critical.initial_step);
    read(k, "start", c.critical.start);
  }
  if (auto o = root["output"]) {
    reject_unknown(o, "output", {"dir", "json", "svg"});
    read(o, "dir", c.output.dir);
    read(o, "json", c.output.json);
    read(o, "svg", c.output.svg);
  }
  return c;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  try {
    return parse_node(YAML::Load(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const ExperimentConfig& c) {
  static const std::set<std::string> examples{"galilean", "heisenberg", "virasoro", "siegel",
                                              "unitary",  "so3",        "user-algebra"};
  if (!examples.count(c.example)) throw ConfigError("unknown example '" + c.example + "'");
  if (c.example == "user-algebra" && c.algebra_file.empty()) {
    throw ConfigError("example 'user-algebra' needs algebra_file");
  }
  if (!(c.tolerance_scale >= 0)) throw ConfigError("tolerance_scale must be nonnegative");
  if (c.parameters.mass == 0) throw ConfigError("mass must be nonzero");
  if (!(c.parameters.spin > 0)) throw ConfigError("spin must be positive");
  if (c.parameters.n < 1) throw ConfigError("n must be positive");
  if (c.parameters.radius < 0) throw ConfigError("radius must be nonnegative");
  auto positive = [](int v, const char* what) {
    if (v < 1) throw ConfigError(std::string(what) + " must be positive");
  };
  auto grid = [](int v, const char* what) {
    if (v < 16 || (v & (v - 1)) != 0) throw ConfigError(std::string(what) + " must be a power of two >= 16");
  };
  grid(c.parameters.diffeo_grid, "parameters.diffeo_grid");
  grid(c.parameters.schwarzian_grid, "parameters.schwarzian_grid");
  positive(c.samples.points, "samples.points");
  positive(c.samples.directions, "samples.directions");
  positive(c.samples.pairs, "samples.pairs");
  positive(c.samples.triples, "samples.triples");
  positive(c.samples.diffeos, "samples.diffeos");
  positive(c.samples.hessian_directions, "samples.hessian_directions");
  positive(c.quadrature.nodes, "quadrature.nodes");
  positive(c.quadrature.panels, "quadrature.panels");
  positive(c.critical.max_iterations, "critical.max_iterations");
  if (!(c.critical.tolerance > 0)) throw ConfigError("critical.tolerance must be positive");
  if (!(c.critical.perturbation >= 0)) throw ConfigError("critical.perturbation must be nonnegative");
  if (!(c.critical.initial_step > 0)) throw ConfigError("critical.initial_step must be positive");
  static const std::set<std::string> starts{"default", "first", "second", "random", "origin"};
  if (!starts.count(c.critical.start)) throw ConfigError("unknown critical.start '" + c.critical.start + "'");
  if (c.threads < 0) throw ConfigError("threads must be nonnegative");
}

}  // namespace momap::cli
