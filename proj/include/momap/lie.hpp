#pragma once

#include "momap/linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace momap {

// Finite-dimensional Lie algebra given by structure constants
// [e_i, e_j] = sum_k c(i, j, k) e_k and a symmetric nondegenerate pairing
// kappa with Gram matrix `gram`. Invariance of kappa is never assumed.
struct LieAlgebraSpec {
  int dim = 0;
  std::vector<double> structure;  // c(i,j,k) at (i * dim + j) * dim + k
  Mat gram;
  std::vector<std::string> labels;
  std::vector<Mat> ad_basis;  // ad(e_i), filled by make_lie_algebra

  double c(int i, int j, int k) const { return structure[(static_cast<size_t>(i) * dim + j) * dim + k]; }
  Vec basis_vector(int i) const { return Vec::Unit(dim, i); }
};

// Validates antisymmetry of the structure constants and symmetry and
// invertibility of the Gram matrix. The Jacobi identity is not enforced here
// (see jacobi_defect) so that user-supplied algebras can be diagnosed.
LieAlgebraSpec make_lie_algebra(int dim, std::vector<double> structure, Mat gram,
                                std::vector<std::string> labels = {});

// Structure constants from a faithful matrix representation. Brackets of
// basis matrices are expanded back in the basis by least squares; the
// residual must vanish (closed subalgebra). The pairing is evaluated on
// basis matrices.
LieAlgebraSpec lie_algebra_from_matrices(const std::vector<Mat>& basis,
                                         const std::function<double(const Mat&, const Mat&)>& pairing,
                                         std::vector<std::string> labels = {});

Vec bracket(const LieAlgebraSpec& alg, const Vec& xi, const Vec& eta);
Mat ad_matrix(const LieAlgebraSpec& alg, const Vec& xi);
// K^{-1} ad(xi)^T K: kappa(ad_xi a, b) = kappa(a, ad*_xi b).
Mat ad_star_matrix(const LieAlgebraSpec& alg, const Vec& xi);
// Operator norm of ad*_xi + ad_xi.
double invariance_defect(const LieAlgebraSpec& alg, const Vec& xi);
double kappa(const LieAlgebraSpec& alg, const Vec& a, const Vec& b);

struct JacobiReport {
  double defect = 0;
  int i = -1, j = -1, k = -1;  // basis triple realizing the max
};
JacobiReport jacobi_defect(const LieAlgebraSpec& alg);
// Defect of the Jacobi identity on one specific triple.
double jacobi_defect(const LieAlgebraSpec& alg, const Vec& a, const Vec& b, const Vec& c);
double antisymmetry_defect(const LieAlgebraSpec& alg);

// g_C = g + i g with complex-bilinear bracket and Hermitian pairing kappa_C.
struct ComplexLieAlgebra {
  LieAlgebraSpec real;

  ComplexVector bracket(const ComplexVector& a, const ComplexVector& b) const;
  CVec bracket(const CVec& a, const CVec& b) const;
  cplx pairing(const ComplexVector& a, const ComplexVector& b) const { return kappa_c(real.gram, a, b); }
  // ad on g_C as blocks [[ad x1, -ad x2], [ad x2, ad x1]].
  BlockOperator ad_block(const ComplexVector& zeta) const;
};

ComplexLieAlgebra complexify(const LieAlgebraSpec& alg);

// User algebra file (YAML):
//   dim: 3
//   labels: [e1, e2, e3]          # optional
//   brackets:                     # [e_i, e_j] gets coefficient c on e_k
//     - [0, 1, 2, 1.0]
//   gram: [[1,0,0],[0,1,0],[0,0,1]]
// Entries for (j, i) are filled in by antisymmetry; listing both with
// inconsistent values is an error.
LieAlgebraSpec load_lie_algebra(const std::string& path);
LieAlgebraSpec parse_lie_algebra(const std::string& text);

}  // namespace momap
