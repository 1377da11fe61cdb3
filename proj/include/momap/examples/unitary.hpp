#pragma once

#include "momap/affine.hpp"

namespace momap::unitary {

// U(n) acting linearly on C^n = R^{2n}, v = (Re v, Im v), with
// omega(u, w) = Im(u^H w), j = multiplication by i and kappa = -tr(xi eta).
// Algebra basis: i E_kk, then for k < l the pair E_kl - E_lk, i (E_kl + E_lk).
//
// The momentum map is J(v) = (i/2)(v v^H - r^2 I); the central shift by the
// critical radius r keeps it equivariant and makes |v| = r critical.
struct Params {
  int n = 2;
  double critical_radius = 0;
};

std::vector<CMat> u_basis(int n);
CMat realified_to_complex(const Mat& A);
Mat realify(const CMat& A);
Vec from_complex(const CVec& v);
CVec to_complex(const Vec& v);

LieAlgebraSpec algebra(int n);
// Algebra coordinates of a skew-Hermitian matrix.
Vec coordinates(const CMat& xi);
CMat matrix(int n, const Vec& xi);

AffineActionSpec affine(int n);
HamiltonianActionSpec hamiltonian(const Params& p);

// Point of norm r in the direction of `direction`.
Vec critical_point(const Params& p, const CVec& direction);

}  // namespace momap::unitary
