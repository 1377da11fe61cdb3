#pragma once

#include "momap/cli/config.hpp"
#include "momap/cli/report.hpp"

#include <string>

namespace momap::cli {

// Each runner returns a finalized report. NumericalRefusal raised by the
// underlying operations ends the run with status "refused"; ConfigError is
// propagated to the caller.
ExperimentReport run_verify(const ExperimentConfig& cfg);
ExperimentReport run_critical(const ExperimentConfig& cfg);
ExperimentReport run_hessian(const ExperimentConfig& cfg);
ExperimentReport run_decompose(const ExperimentConfig& cfg);
ExperimentReport run_cocycle(const ExperimentConfig& cfg);

// Dispatch by subcommand name (verify|critical|hessian|decompose|cocycle).
ExperimentReport run_experiment(const std::string& experiment, const ExperimentConfig& cfg);

// 0 pass, 1 check failure, 2 invalid tolerance, 3 refusal.
int exit_code(const ExperimentReport& r);

}  // namespace momap::cli
