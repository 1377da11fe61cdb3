#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace momap {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

// Thrown when the preconditions of a numerical routine are not met, for
// example a Hessian requested at a non-critical point. Callers that need to
// distinguish this from plain input errors (the CLI maps it to exit code 3)
// catch it separately.
class NumericalRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double rel = 1e-9;
  double abs = 1e-12;
  // Singular values below rank * sigma_max count as zero.
  double rank = 1e-8;
};

// Constant symplectic form on R^{2n}: omega(X, Y) = X^T omega Y, and
// poisson * omega = -I.
struct SymplecticSpace {
  int dim = 0;
  Mat omega;
  Mat poisson;

  double form(const Vec& x, const Vec& y) const { return x.dot(omega * y); }
};

SymplecticSpace make_standard_symplectic(int n);
SymplecticSpace make_symplectic(const Mat& omega);

enum class Musical { flat, sharp };

// flat(v)_i = omega_{ji} v^j, sharp(a)^j = poisson^{ji} a_i.
Vec musical_sharp_flat(const SymplecticSpace& space, const Vec& v, Musical direction);

struct CompatibleStructure {
  Mat j;
};

// Validates j^2 = -I, omega(jX, jY) = omega(X, Y) and positivity of
// g(X, Y) = omega(X, jY).
CompatibleStructure make_compatible(const SymplecticSpace& space, const Mat& j, double tol = 1e-10);

// The standard structure j = -omega for the Darboux form; g is the identity.
CompatibleStructure standard_complex_structure(const SymplecticSpace& space);

// Gram matrix of g(X, Y) = omega(X, jY).
Mat compatible_metric(const SymplecticSpace& space, const CompatibleStructure& j);

// xi_1 + i xi_2 stored as two real vectors.
struct ComplexVector {
  Vec re;
  Vec im;

  ComplexVector() = default;
  ComplexVector(Vec r, Vec i);
  explicit ComplexVector(const Vec& r);

  Eigen::Index size() const { return re.size(); }
  CVec to_eigen() const;
  Vec stacked() const;

  static ComplexVector from_eigen(const CVec& z);
  static ComplexVector from_stacked(const Vec& v);
};

// kappa_C(zeta, gamma) = kappa(x1,y1) + kappa(x2,y2) + i(kappa(x2,y1) - kappa(x1,y2)).
// Linear in zeta, antilinear in gamma.
cplx kappa_c(const Mat& K, const ComplexVector& zeta, const ComplexVector& gamma);

// Same pairing on Eigen complex vectors: gamma^H K zeta.
cplx kappa_c(const Mat& K, const CVec& zeta, const CVec& gamma);

// R-linear operator on the complexification, acting as
// (t11 x1 + t12 x2) + i (t21 x1 + t22 x2).
struct BlockOperator {
  Mat t11, t12, t21, t22;

  Eigen::Index size() const { return t11.rows(); }

  static BlockOperator identity(Eigen::Index n);
  static BlockOperator zero(Eigen::Index n);
  // Multiplication by i: [[0, -I], [I, 0]].
  static BlockOperator i_blocks(Eigen::Index n);
  // S + iT for real S, T: [[S, -T], [T, S]].
  static BlockOperator from_complex(const Mat& S, const Mat& T);
  static BlockOperator from_real_matrix(const Mat& big);

  Mat real_matrix() const;
  // Requires complex linearity; returns S + iT.
  CMat complex_matrix() const;
  double complex_linearity_defect() const;

  BlockOperator operator*(const BlockOperator& other) const;
  BlockOperator operator+(const BlockOperator& other) const;
  BlockOperator operator-(const BlockOperator& other) const;
};

ComplexVector block_apply(const BlockOperator& op, const ComplexVector& v);

// --- small numerical helpers shared by the other modules ---

Mat cross_matrix(const Eigen::Vector3d& a);
double operator_norm(const Mat& A);
double operator_norm(const CMat& A);

struct Kernel {
  Mat basis;              // orthonormal columns spanning the numerical kernel
  double gap_ratio = 0;   // smallest kept / largest dropped singular value (inf if none dropped/kept)
  double sigma_max = 0;
};
Kernel null_space(const Mat& A, double rank_tol);

struct ComplexKernel {
  CMat basis;
  double gap_ratio = 0;
  double sigma_max = 0;
};
ComplexKernel null_space(const CMat& A, double rank_tol);

Mat orthonormal_basis(const Mat& A, double rank_tol);
CMat orthonormal_basis(const CMat& A, double rank_tol);

// Largest principal angle between the column spans (equal dimensions assumed;
// returns pi/2 if the dimensions differ).
double max_principal_angle(const Mat& A, const Mat& B, double rank_tol = 1e-10);
double max_principal_angle(const CMat& A, const CMat& B, double rank_tol = 1e-10);

// Relative symmetric/skew defects: ||A -/+ A^T|| / max(1, ||A||).
double symmetry_defect(const Mat& A);
double skew_defect(const Mat& A);

void require_size(Eigen::Index got, Eigen::Index want, const std::string& what);

}  // namespace momap
