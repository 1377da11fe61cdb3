#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace momap::cli {

// Malformed or inconsistent configuration (exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string example = "galilean";  // galilean|heisenberg|virasoro|siegel|unitary|so3|user-algebra
  std::uint64_t seed = 1;
  double tolerance_scale = 1.0;

  struct {
    double mass = 1;
    double spin = 10;
    int n = 2;           // Heisenberg half-dimension, Siegel n, unitary C^n
    int modes = 8;       // Virasoro N
    int grid = 128;      // Virasoro M for the algebra model
    int diffeo_grid = 2048;     // Bott-Thurston cocycle identity
    int schwarzian_grid = 512;  // Schwarzian identity (round-off grows like grid^3)
    double radius = 1;   // unitary critical radius
  } parameters;

  struct {
    int points = 20;
    int directions = 20;
    int pairs = 100;
    int triples = 500;
    int diffeos = 10;
    int hessian_directions = 10;
  } samples;

  struct {
    int nodes = 32;
    int panels = 1;
  } quadrature;

  struct {
    int max_iterations = 20000;
    double tolerance = 1e-10;
    double perturbation = 1e-2;
    double initial_step = 0.1;
    std::string start = "default";  // default|first|second|random|origin
  } critical;

  struct {
    std::string dir;
    bool json = false;
    bool svg = false;
  } output;

  std::string algebra_file;
  int threads = 0;  // 0: hardware concurrency
};

// Parses YAML text; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
// Throws ConfigError on out-of-range values. A zero tolerance scale is
// reported separately by the runner, so it is allowed here.
void validate(const ExperimentConfig& cfg);

}  // namespace momap::cli
