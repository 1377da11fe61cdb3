#pragma once

#include "momap/affine.hpp"

#include <Eigen/Dense>

namespace momap::galilean {

// Algebra coordinates (alpha[3], beta[3], gamma[3], delta): rotations,
// boosts, translations, time translation. Group elements are 5x5 matrices
// [[R, v, a], [0, 1, tau], [0, 0, 1]].
struct Params {
  double mass = 1;
  double spin = 1;
};

void validate(const Params& p);

LieAlgebraSpec algebra();
GroupModel group(double sample_scale = 0.7);

struct Element {
  Eigen::Matrix3d R;
  Eigen::Vector3d v, a;
  double tau = 0;
};
Element unpack(const GroupElement& g);
GroupElement pack(const Element& e);

// Affine action on R^6 = (q, p) with omega((q1,p1),(q2,p2)) = p1.q2 - q1.p2.
AffineActionSpec affine(const Params& p);

// Full action on R^3 x R^3 x S^2; points are (q, p, x) in R^9 with |x| = 1.
HamiltonianActionSpec hamiltonian(const Params& p);

// (1/2) q x p - (s/2) x, -m q, p, -|p|^2 / 2m.
Vec momentum(const Params& p, const Vec& point);

// Closed-form central-extension cocycle
// (m/2) (v1 . R1 a2 - a1 . R1 v2 - tau2 v1 . R1 v2).
double bargmann(const Params& p, const GroupElement& g1, const GroupElement& g2);

// (0, 0, x).
Vec first_family(const Eigen::Vector3d& x);

struct SecondFamily {
  Vec point;
  double p_norm_squared = 0;
  double k = 0;  // (4 m^2 s)^{1/3}
};
// |p|^2 = 2 m^2 (s - k) / k and q = k / (2 m^2) p x x with k = (4 m^2 s)^{1/3};
// requires s^2 > 4 m^2 (throws NumericalRefusal otherwise).
SecondFamily second_family(const Params& p, const Eigen::Vector3d& p_direction, const Eigen::Vector3d& x);
double second_family_p_norm_squared(const Params& p);

// Point coordinates helpers.
Vec make_point(const Eigen::Vector3d& q, const Eigen::Vector3d& p, const Eigen::Vector3d& x);
Eigen::Vector3d q_of(const Vec& point);
Eigen::Vector3d p_of(const Vec& point);
Eigen::Vector3d x_of(const Vec& point);

// Complex-bilinear cross product (Eigen's cross conjugates complex results).
Eigen::Vector3cd cross(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b);

// Algebra vector from complex slots (alpha, beta, gamma, delta).
CVec complex_element(const Eigen::Vector3cd& alpha, const Eigen::Vector3cd& beta, const Eigen::Vector3cd& gamma,
                     cplx delta);

}  // namespace momap::galilean
