#include "momap/cli/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace momap::cli {

const std::vector<Anchor>& anchor_registry() {
  static const std::vector<Anchor> registry{
      {"momentum-identity", "kappa(dJ X, xi) = -omega(xi.m, X)"},
      {"complex-structure", "compatible almost complex structure"},
      {"gradient-calibration", "gradient realization of the norm square"},
      {"jacobi-identity", "structure constants satisfy Jacobi"},
      {"sigma-point-independence", "infinitesimal non-equivariance cocycle is constant"},
      {"sigma-cocycle-law", "group non-equivariance one-cocycle"},
      {"affine-cocycle", "group two-cocycle of an affine action"},
      {"contraction-cocycle", "triangle-area cocycle from a contraction"},
      {"bargmann", "Galilean central extension"},
      {"heisenberg", "translation action and Heisenberg group"},
      {"gelfand-fuchs", "Lie algebra cocycle of vector fields on the circle"},
      {"bott-thurston", "group cocycle of circle diffeomorphisms"},
      {"schwarzian", "non-equivariance of the Virasoro momentum map"},
      {"virasoro-critical", "Euler-Lagrange form of the critical equation"},
      {"siegel-momentum", "momentum map j - j0 from the Cayley contraction"},
      {"contraction-integrals", "closed forms of the two contraction integrals"},
      {"critical-first-family", "critical points (0, 0, x)"},
      {"critical-second-family", "critical points with nonzero momentum"},
      {"critical-criterion", "J(m) stabilizes m"},
      {"gradient-flow", "descent of the norm square"},
      {"operator-symmetry", "L kappa-symmetric, Z kappa-skew"},
      {"calabi-hermitian", "C+ and C- are Hermitian"},
      {"calabi-negative", "C+ is negative semidefinite"},
      {"calabi-factorization", "C+ = -Upsilon* Upsilon"},
      {"calabi-imaginary-part", "Im C+ = dJ o Upsilon"},
      {"kernel-identity", "ker C+ = ker Upsilon = complex stabilizer"},
      {"calabi-commutator", "[C+, C-] = 0 for equivariant J"},
      {"commutation", "ad_mu commutes with L and Z"},
      {"stabilizer-decomposition", "eigenspaces of i ad_J(m) on the complex stabilizer"},
      {"stabilizer-families", "explicit subspaces of the Galilean complex stabilizer"},
      {"grading", "[k_lambda, k_nu] projected into k_(lambda+nu)"},
      {"equivariant-refinement", "nonpositive eigenvalues, zero cluster = complexified stabilizer"},
      {"hessian-formula", "Hessian from dJ and the isotropy momentum map"},
      {"hessian-complex-orbit", "Hessian along complex orbit directions via C+ R"},
      {"hessian-positivity", "orbit Hessian positive semidefinite (equivariant case)"},
      {"configuration", "run configuration"},
  };
  return registry;
}

bool is_registered_anchor(const std::string& id) {
  const auto& reg = anchor_registry();
  return std::any_of(reg.begin(), reg.end(), [&](const Anchor& a) { return a.id == id; });
}

Check make_check(std::string name, std::string anchor, double value, double tolerance, std::string note) {
  if (!is_registered_anchor(anchor)) throw std::logic_error("unregistered anchor " + anchor);
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.value = value;
  c.tolerance = tolerance;
  c.pass = std::isfinite(value) && value <= tolerance;
  c.note = std::move(note);
  return c;
}

bool ExperimentReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void ExperimentReport::finalize(bool refused) {
  if (refused) {
    status = "refused";
  } else {
    status = all_pass() ? "pass" : "fail";
  }
}

namespace {

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::string to_json(const ExperimentReport& r) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = r.experiment;
  j["example"] = r.example;
  j["seed"] = r.seed;
  j["tolerance_scale"] = r.tolerance_scale;
  j["status"] = r.status;
  j["pass"] = r.status == "pass";
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["anchor"] = c.anchor;
    e["value"] = number(c.value);
    e["tolerance"] = number(c.tolerance);
    e["pass"] = c.pass;
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(e);
  }
  j["checks"] = checks;
  nlohmann::ordered_json spectra = nlohmann::ordered_json::object();
  for (const auto& [name, values] : r.spectra) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (double v : values) arr.push_back(number(v));
    spectra[name] = arr;
  }
  j["spectra"] = spectra;
  nlohmann::ordered_json dims = nlohmann::ordered_json::object();
  for (const auto& [name, v] : r.dimensions) dims[name] = number(v);
  j["dimensions"] = dims;
  j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

std::string spectra_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "spectrum,index,value\n";
  for (const auto& [name, values] : r.spectra)
    for (size_t i = 0; i < values.size(); ++i) os << name << ',' << i << ',' << values[i] << '\n';
  return os.str();
}

std::string trajectory_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "iteration,norm_squared,residual\n";
  for (const auto& row : r.trajectory) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

std::string text_summary(const ExperimentReport& r) {
  std::ostringstream os;
  os << r.experiment << " [" << r.example << "] seed " << r.seed << ": " << r.status << '\n';
  for (const auto& c : r.checks) {
    os << (c.pass ? "  PASS " : "  FAIL ") << c.name << "  value " << std::setprecision(3) << std::scientific
       << c.value << " tol " << c.tolerance << std::defaultfloat;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << '\n';
  }
  for (const auto& n : r.notes) os << "  note: " << n << '\n';
  return os.str();
}

}  // namespace momap::cli
