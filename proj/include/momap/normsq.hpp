#pragma once

#include "momap/action.hpp"

#include <string>
#include <vector>

namespace momap {

struct Diagnostic {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = true;
};

// F(m) = kappa(J(m), J(m)).
double norm_squared(const HamiltonianActionSpec& spec, const Vec& m);

struct GradientCalibration {
  double sign = 1;
  double relative_error = 0;  // |g(G, X) - dF(X)| / |dF(X)| after applying sign
  double directional_derivative = 0;
};

// Compares the realization G = -2 j_m(J(m).m) against a central difference
// of F at a non-critical probe point and fixes the sign.
GradientCalibration calibrate_gradient(const HamiltonianActionSpec& spec, std::uint64_t seed = 1);
// Stores the calibrated sign in the spec.
void calibrate(HamiltonianActionSpec& spec);

struct NormSquaredValue {
  double value = 0;
  Vec gradient;
};

// F(m) and its g_m-gradient (g_m(G, X) = dF_m(X) = -2 omega_m(J(m).m, X)).
// Uses the cached calibration sign when present, otherwise calibrates.
NormSquaredValue norm_squared_and_gradient(const HamiltonianActionSpec& spec, const Vec& m);

// J(m).m as a tangent vector.
Vec momentum_action(const HamiltonianActionSpec& spec, const Vec& m);
// |J(m).m| in the metric g_m.
double criticality_residual(const HamiltonianActionSpec& spec, const Vec& m);
// 1e-7 (1 + |J(m)|).
double critical_tolerance(const HamiltonianActionSpec& spec, const Vec& m);

struct OperatorTolerances {
  double symmetry = 1e-9;
  double hermitian = 1e-9;
  double negativity = 1e-9;
  double z_cross_check = 1e-8;
  double factorization = 1e-8;
  double imaginary_part = 1e-8;
};

struct OperatorBundle {
  Vec m;
  Vec J;
  Mat K;
  Mat L, Z, adJ;
  BlockOperator Cplus, Cminus, R;
  Mat tangent;      // orthonormal tangent basis at m (ambient coordinates)
  Mat metric;       // g_m in tangent coordinates
  Mat acs;          // j_m in tangent coordinates
  Mat upsilon;      // complexified action map g_C -> T_m M, tangent coordinates (k x 2d)
  Mat upsilon_adjoint;  // adjoint w.r.t. Re kappa_C and g_m (2d x k)
  std::vector<Diagnostic> diagnostics;

  bool all_pass() const;
  const Diagnostic& diagnostic(const std::string& name) const;
};

OperatorBundle build_operators(const HamiltonianActionSpec& spec, const Vec& m,
                               const OperatorTolerances& tol = {});

// Upsilon_m(xi1 + i xi2) = xi1.m + j(xi2.m), ambient coordinates.
Vec upsilon_apply(const HamiltonianActionSpec& spec, const Vec& m, const ComplexVector& zeta);

struct CommutationDefects {
  double L_commutator = 0;   // |L ad_mu - ad_mu L| / scale
  double Z_commutator = 0;
  double L_signed = 0;       // |L ad_mu + ad*_mu L + dJ o tau'_j(mu)| / scale
  double Z_signed = 0;       // |Z ad_mu + ad*_mu Z| / scale
};
CommutationDefects commutation_defects(const HamiltonianActionSpec& spec, const OperatorBundle& bundle,
                                       const Vec& mu);

// tau_m sigma*(X): linearization at m of the fundamental field of sigma.
Vec linearize_isotropy(const HamiltonianActionSpec& spec, const Vec& sigma, const Vec& m, const Vec& X);
// Same in tangent coordinates (k x k).
Mat isotropy_matrix(const HamiltonianActionSpec& spec, const Vec& sigma, const Vec& m);
// |[tau_m sigma*, j_m]|: vanishes when j_m is sigma-invariant.
double acs_invariance_defect(const HamiltonianActionSpec& spec, const Vec& m, const Vec& sigma);

// kappa(J^(X), sigma) = 1/2 omega_m(X, tau_m sigma*(X)); sigma must fix m.
double isotropy_momentum(const HamiltonianActionSpec& spec, const Vec& m, const Vec& sigma, const Vec& X);

// Hess_m(X, Y) = 2 kappa(dJ X, dJ Y) + 2 omega_m(X, tau_m J(m)* Y) at a
// critical point (refuses otherwise).
double hessian_bilinear(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X, const Vec& Y);
// Hess_m(X) = Hess_m(X, X).
double hessian_quadratic(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X);
// Second derivative of F along t -> retract(m, tX) (Richardson-extrapolated
// central difference). Curve independent only at critical points.
double curve_hessian(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X, double step = 1e-3);

// Re kappa_C(zeta, C+ R gamma), which equals 1/2 Hess_m(zeta.m, gamma.m).
double hessian_complex_orbit(const HamiltonianActionSpec& spec, const Vec& m, const ComplexVector& zeta,
                             const ComplexVector& gamma);
// The same bilinear form as a 2d x 2d matrix on stacked (re, im) coordinates.
Mat orbit_hessian_form(const HamiltonianActionSpec& spec, const Vec& m);
Mat orbit_hessian_form(const OperatorBundle& bundle);

// Checks the preconditions of the complex-orbit form; throws NumericalRefusal.
void require_orbit_hessian_preconditions(const HamiltonianActionSpec& spec, const Vec& m);
void require_critical(const HamiltonianActionSpec& spec, const Vec& m);

}  // namespace momap
