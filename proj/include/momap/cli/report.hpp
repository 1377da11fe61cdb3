#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace momap::cli {

inline constexpr int kSchemaVersion = 1;

struct Anchor {
  std::string id;
  std::string description;
};

// Fixed registry of anchors; every check names one of these.
const std::vector<Anchor>& anchor_registry();
bool is_registered_anchor(const std::string& id);

struct Check {
  std::string name;
  std::string anchor;
  double value = 0;      // defect (NaN when the check could not be evaluated)
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

// value <= tolerance, NaN fails.
Check make_check(std::string name, std::string anchor, double value, double tolerance, std::string note = {});

struct ExperimentReport {
  std::string experiment;
  std::string example;
  std::uint64_t seed = 0;
  double tolerance_scale = 1;
  std::string status;  // pass | fail | refused | invalid-tolerance | error
  std::vector<Check> checks;
  std::map<std::string, std::vector<double>> spectra;
  std::map<std::string, double> dimensions;
  std::vector<std::string> notes;
  // Rows of (iteration, F, residual) for the gradient flow.
  std::vector<std::vector<double>> trajectory;

  bool all_pass() const;
  // Sets status from the checks (refusals take precedence).
  void finalize(bool refused);
};

// Deterministic JSON (fixed key order, round-trip precision, no timing).
std::string to_json(const ExperimentReport& r);
std::string spectra_csv(const ExperimentReport& r);
std::string trajectory_csv(const ExperimentReport& r);
std::string text_summary(const ExperimentReport& r);

}  // namespace momap::cli
