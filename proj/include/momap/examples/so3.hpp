#pragma once

#include "momap/action.hpp"

namespace momap::so3 {

// SO(3) rotating the sphere S^2 with area form s x.(u x w), complex structure
// u -> x x u, kappa = 2 * Euclidean and J(x) = -(s/2) x. Equivariant, every
// point critical.
HamiltonianActionSpec hamiltonian(double spin = 1.0);

}  // namespace momap::so3
