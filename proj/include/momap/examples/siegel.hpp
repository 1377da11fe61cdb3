#pragma once

#include "momap/contraction.hpp"

namespace momap::siegel {

// Sp(2n) acting by conjugation on the compatible complex structures of
// standard (R^{2n}, omega). Points are flattened 2n x 2n matrices j; tangent
// vectors A satisfy Aj + jA = 0 and carry Omega_j(A, B) = 1/4 tr(A j B).
// The algebra sp(2n) has basis omega^{-1} S over symmetric elementary S and
// pairing kappa(a, b) = 1/2 tr(a b).

std::vector<Mat> sp_basis(int n);
LieAlgebraSpec algebra(int n);
GroupModel group(int n, double sample_scale = 0.3);

Mat standard_j0(int n);
Mat to_matrix(const Vec& flat);
Vec flatten(const Mat& m);

// Algebra coordinates of a matrix in sp(2n).
Vec sp_coordinates(int n, const Mat& xi);

// Momentum map normalized at j0: J(j) = j - j0.
HamiltonianActionSpec hamiltonian(int n, const Mat& j0);
HamiltonianActionSpec hamiltonian(int n);

// phi_{j0}(j) = (j + j0)^{-1} (j - j0); throws NumericalRefusal if j + j0 is singular.
Mat cayley(const Mat& j0, const Mat& j);
// j0 (I + S)(I - S)^{-1}.
Mat cayley_inverse(const Mat& j0, const Mat& S);
// Lambda(j0, j, t) = phi_{j0}^{-1}(t phi_{j0}(j)) on flattened points.
ContractionSpec cayley_contraction();

// 1/4 tr(phi_{j0}(j) A): closed form of both contraction integrals.
double contraction_integral_closed_form(const Mat& j0, const Mat& j, const Mat& A);

// g j0 g^{-1} with g = exp(scale * random sp element).
Mat random_compatible(std::mt19937_64& rng, int n, const Mat& j0, double scale = 0.4);

// Largest defect of j^2 = -1, j^T omega j = omega, and symmetry of omega j.
double compatibility_defect(const Mat& j);

}  // namespace momap::siegel
