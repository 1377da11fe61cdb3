#pragma once

#include "momap/affine.hpp"

namespace momap::heisenberg {

// Translations of (V, omega) on itself: rho = id, tau = id, kappa = g = omega(., j .).
// The algebra is abelian with dimension dim V.
AffineActionSpec affine(const SymplecticSpace& space, const CompatibleStructure& j);
// Standard R^{2n} with the standard complex structure.
AffineActionSpec affine(int n);

// Translation group model on V.
GroupModel translations(int dim, double sample_scale = 1.0);

// (v1, z1)(v2, z2) = (v1 + v2, z1 + z2 + 1/2 omega(v1, v2)).
double heisenberg_cocycle(const SymplecticSpace& space, const Vec& v1, const Vec& v2);

}  // namespace momap::heisenberg
