#pragma once

#include "momap/action.hpp"

#include <cmath>
#include <optional>

namespace momap {

// Affine symplectic action g.v = rho(g) v + tau(g) on a constant symplectic
// vector space. The group-level part is optional (the truncated Virasoro
// model only has the infinitesimal data).
struct AffineActionSpec {
  std::string name;
  SymplecticSpace space;
  LieAlgebraSpec algebra;
  std::function<Mat(const Vec& xi)> rho_prime;
  std::function<Vec(const Vec& xi)> tau_prime;

  std::optional<GroupModel> group;
  std::function<Mat(const GroupElement&)> rho;
  std::function<Vec(const GroupElement&)> tau;

  Vec base_point;  // x0; empty means the origin
  std::optional<CompatibleStructure> complex_structure;
  std::function<Vec(std::mt19937_64&)> sample_point;
};

Vec base_point(const AffineActionSpec& spec);
Vec affine_act(const AffineActionSpec& spec, const GroupElement& g, const Vec& v);
Vec affine_inf_action(const AffineActionSpec& spec, const Vec& xi, const Vec& v);

// kappa(J(v), xi) = omega(w, xi.x0) + 1/2 omega(w, rho'(xi) w) with w = v - x0;
// for x0 = 0 this is omega(v, tau'(xi)) + 1/2 omega(v, rho'(xi) v).
Vec affine_momentum(const AffineActionSpec& spec, const Vec& v);

// c(g1, g2) = 1/2 omega(tau(g1), tau(g1 g2)).
double group_cocycle_c(const AffineActionSpec& spec, const GroupElement& g1, const GroupElement& g2);
// Base-point form 1/2 omega(x0 - g1^{-1} x0, g2 x0 - x0); equals the tau form
// when x0 = 0 and differs from it by a coboundary otherwise.
double group_cocycle_c_base_point(const AffineActionSpec& spec, const GroupElement& g1, const GroupElement& g2);

// U(1) = R mod 1.
double circle_reduce(double z);
double circle_distance(double a, double b);

struct ExtensionElement {
  GroupElement g;
  double z = 0;
};

// (g1, z1)(g2, z2) = (g1 g2, z1 + z2 + c(g1, g2) mod 1).
ExtensionElement extension_multiply(const AffineActionSpec& spec, const ExtensionElement& a,
                                    const ExtensionElement& b);

// Distance to the nearest integer of c(g1,g2) + c(g1g2,g3) - c(g2,g3) - c(g1,g2g3)
// for any group 2-cocycle given as a callable.
template <class G, class Cocycle, class Multiply>
double cocycle_identity_defect_of(const Cocycle& c, const Multiply& mul, const G& g1, const G& g2, const G& g3) {
  double v = c(g1, g2) + c(mul(g1, g2), g3) - c(g2, g3) - c(g1, mul(g2, g3));
  return std::abs(v - std::round(v));
}

double cocycle_identity_defect(const AffineActionSpec& spec, const GroupElement& g1, const GroupElement& g2,
                               const GroupElement& g3);

// Structural checks of the data.
double rho_symplectic_defect(const AffineActionSpec& spec, const GroupElement& g);
double tau_cocycle_defect(const AffineActionSpec& spec, const GroupElement& g1, const GroupElement& g2);
double rho_prime_sp_defect(const AffineActionSpec& spec, const Vec& xi);

// The same action packaged for the generic machinery: constant omega,
// constant complex structure (identity if none was given), group action
// when available.
HamiltonianActionSpec as_hamiltonian(const AffineActionSpec& spec);

}  // namespace momap
