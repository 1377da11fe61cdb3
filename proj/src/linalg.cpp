#include "momap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace momap {

void require_size(Eigen::Index got, Eigen::Index want, const std::string& what) {
  if (got != want) {
    throw std::invalid_argument(what + ": expected size " + std::to_string(want) + ", got " +
                                std::to_string(got));
  }
}

SymplecticSpace make_standard_symplectic(int n) {
  if (n < 1) throw std::invalid_argument("make_standard_symplectic: n must be positive");
  Mat omega = Mat::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = Mat::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return make_symplectic(omega);
}

SymplecticSpace make_symplectic(const Mat& omega) {
  if (omega.rows() != omega.cols() || omega.rows() == 0 || omega.rows() % 2 != 0) {
    throw std::invalid_argument("symplectic form must be a square matrix of even size");
  }
  double scale = std::max(1.0, omega.norm());
  if ((omega + omega.transpose()).norm() > 1e-12 * scale) {
    throw std::invalid_argument("symplectic form is not antisymmetric");
  }
  Eigen::JacobiSVD<Mat> svd(omega);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 1e-12 * s(0)) {
    throw std::invalid_argument("symplectic form is degenerate");
  }
  SymplecticSpace space;
  space.dim = static_cast<int>(omega.rows());
  space.omega = omega;
  space.poisson = -omega.inverse();
  return space;
}

Vec musical_sharp_flat(const SymplecticSpace& space, const Vec& v, Musical direction) {
  require_size(v.size(), space.dim, "musical_sharp_flat");
  if (direction == Musical::flat) return space.omega.transpose() * v;
  return space.poisson * v;
}

CompatibleStructure make_compatible(const SymplecticSpace& space, const Mat& j, double tol) {
  require_size(j.rows(), space.dim, "compatible structure rows");
  require_size(j.cols(), space.dim, "compatible structure cols");
  Mat I = Mat::Identity(space.dim, space.dim);
  if ((j * j + I).norm() > tol * std::max(1.0, j.squaredNorm())) {
    throw std::invalid_argument("complex structure does not square to -I");
  }
  Mat pulled = j.transpose() * space.omega * j;
  if ((pulled - space.omega).norm() > tol * std::max(1.0, pulled.norm())) {
    throw std::invalid_argument("complex structure does not preserve omega");
  }
  Mat g = space.omega * j;
  if ((g - g.transpose()).norm() > tol * std::max(1.0, g.norm())) {
    throw std::invalid_argument("omega(., j.) is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.transpose()));
  if (es.eigenvalues().minCoeff() <= 0) {
    throw std::invalid_argument("omega(., j.) is not positive definite");
  }
  return CompatibleStructure{j};
}

CompatibleStructure standard_complex_structure(const SymplecticSpace& space) {
  return make_compatible(space, -space.omega);
}

Mat compatible_metric(const SymplecticSpace& space, const CompatibleStructure& j) {
  return space.omega * j.j;
}

ComplexVector::ComplexVector(Vec r, Vec i) : re(std::move(r)), im(std::move(i)) {
  if (re.size() != im.size()) throw std::invalid_argument("ComplexVector: re/im size mismatch");
}

ComplexVector::ComplexVector(const Vec& r) : re(r), im(Vec::Zero(r.size())) {}

CVec ComplexVector::to_eigen() const {
  CVec z(re.size());
  z.real() = re;
  z.imag() = im;
  return z;
}

Vec ComplexVector::stacked() const {
  Vec v(2 * re.size());
  v << re, im;
  return v;
}

ComplexVector ComplexVector::from_eigen(const CVec& z) { return ComplexVector(z.real(), z.imag()); }

ComplexVector ComplexVector::from_stacked(const Vec& v) {
  if (v.size() % 2 != 0) throw std::invalid_argument("from_stacked: odd length");
  Eigen::Index n = v.size() / 2;
  return ComplexVector(v.head(n), v.tail(n));
}

cplx kappa_c(const Mat& K, const ComplexVector& zeta, const ComplexVector& gamma) {
  require_size(zeta.size(), K.rows(), "kappa_c zeta");
  require_size(gamma.size(), K.rows(), "kappa_c gamma");
  if ((K - K.transpose()).norm() > 1e-12 * std::max(1.0, K.norm())) {
    throw std::invalid_argument("kappa_c: pairing is not symmetric");
  }
  double re = zeta.re.dot(K * gamma.re) + zeta.im.dot(K * gamma.im);
  double im = zeta.im.dot(K * gamma.re) - zeta.re.dot(K * gamma.im);
  return {re, im};
}

cplx kappa_c(const Mat& K, const CVec& zeta, const CVec& gamma) {
  return gamma.dot(K.cast<cplx>() * zeta);
}

BlockOperator BlockOperator::identity(Eigen::Index n) {
  return {Mat::Identity(n, n), Mat::Zero(n, n), Mat::Zero(n, n), Mat::Identity(n, n)};
}

BlockOperator BlockOperator::zero(Eigen::Index n) {
  return {Mat::Zero(n, n), Mat::Zero(n, n), Mat::Zero(n, n), Mat::Zero(n, n)};
}

BlockOperator BlockOperator::i_blocks(Eigen::Index n) {
  return {Mat::Zero(n, n), -Mat::Identity(n, n), Mat::Identity(n, n), Mat::Zero(n, n)};
}

BlockOperator BlockOperator::from_complex(const Mat& S, const Mat& T) { return {S, -T, T, S}; }

BlockOperator BlockOperator::from_real_matrix(const Mat& big) {
  if (big.rows() != big.cols() || big.rows() % 2 != 0) {
    throw std::invalid_argument("from_real_matrix: need an even square matrix");
  }
  Eigen::Index n = big.rows() / 2;
  return {big.topLeftCorner(n, n), big.topRightCorner(n, n), big.bottomLeftCorner(n, n),
          big.bottomRightCorner(n, n)};
}

Mat BlockOperator::real_matrix() const {
  Eigen::Index n = size();
  Mat big(2 * n, 2 * n);
  big << t11, t12, t21, t22;
  return big;
}

double BlockOperator::complex_linearity_defect() const {
  return (t11 - t22).norm() + (t12 + t21).norm();
}

CMat BlockOperator::complex_matrix() const {
  double scale = std::max(1.0, real_matrix().norm());
  if (complex_linearity_defect() > 1e-9 * scale) {
    throw std::invalid_argument("complex_matrix: operator is not complex linear");
  }
  CMat out(size(), size());
  out.real() = 0.5 * (t11 + t22);
  out.imag() = 0.5 * (t21 - t12);
  return out;
}

BlockOperator BlockOperator::operator*(const BlockOperator& o) const {
  return from_real_matrix(real_matrix() * o.real_matrix());
}

BlockOperator BlockOperator::operator+(const BlockOperator& o) const {
  return {t11 + o.t11, t12 + o.t12, t21 + o.t21, t22 + o.t22};
}

BlockOperator BlockOperator::operator-(const BlockOperator& o) const {
  return {t11 - o.t11, t12 - o.t12, t21 - o.t21, t22 - o.t22};
}

ComplexVector block_apply(const BlockOperator& op, const ComplexVector& v) {
  require_size(v.size(), op.size(), "block_apply");
  return ComplexVector(op.t11 * v.re + op.t12 * v.im, op.t21 * v.re + op.t22 * v.im);
}

Mat cross_matrix(const Eigen::Vector3d& a) {
  Mat m(3, 3);
  m << 0, -a(2), a(1), a(2), 0, -a(0), -a(1), a(0), 0;
  return m;
}

double operator_norm(const Mat& A) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(A);
  return svd.singularValues()(0);
}

double operator_norm(const CMat& A) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(A);
  return svd.singularValues()(0);
}

namespace {

std::pair<Eigen::Index, double> split_rank(const Eigen::VectorXd& s, double rank_tol, double& sigma_max) {
  sigma_max = s.size() ? s(0) : 0.0;
  double cut = rank_tol * sigma_max;
  Eigen::Index rank = 0;
  if (sigma_max > 0) {
    while (rank < s.size() && s(rank) > cut) ++rank;
  }
  double gap = std::numeric_limits<double>::infinity();
  if (rank > 0 && rank < s.size()) {
    gap = s(rank) > 0 ? s(rank - 1) / s(rank) : std::numeric_limits<double>::infinity();
  }
  return {rank, gap};
}

}  // namespace

Kernel null_space(const Mat& A, double rank_tol) {
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  Kernel k;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(A.cols());
  s.head(svd.singularValues().size()) = svd.singularValues();
  auto [rank, gap] = split_rank(s, rank_tol, k.sigma_max);
  k.gap_ratio = gap;
  k.basis = svd.matrixV().rightCols(A.cols() - rank);
  return k;
}

ComplexKernel null_space(const CMat& A, double rank_tol) {
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullV);
  ComplexKernel k;
  Eigen::VectorXd s = Eigen::VectorXd::Zero(A.cols());
  s.head(svd.singularValues().size()) = svd.singularValues();
  auto [rank, gap] = split_rank(s, rank_tol, k.sigma_max);
  k.gap_ratio = gap;
  k.basis = svd.matrixV().rightCols(A.cols() - rank);
  return k;
}

Mat orthonormal_basis(const Mat& A, double rank_tol) {
  if (A.cols() == 0) return Mat(A.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > rank_tol * s(0) && s(rank) > 0) ++rank;
  return svd.matrixU().leftCols(rank);
}

CMat orthonormal_basis(const CMat& A, double rank_tol) {
  if (A.cols() == 0) return CMat(A.rows(), 0);
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > rank_tol * s(0) && s(rank) > 0) ++rank;
  return svd.matrixU().leftCols(rank);
}

namespace {

template <class M>
double max_angle_impl(const M& A, const M& B, double rank_tol) {
  M qa = orthonormal_basis(A, rank_tol);
  M qb = orthonormal_basis(B, rank_tol);
  if (qa.cols() != qb.cols()) return M_PI / 2;
  if (qa.cols() == 0) return 0;
  // sin of the largest angle is the norm of the part of B outside span(A).
  M resid = qb - qa * (qa.adjoint() * qb);
  return std::asin(std::min(1.0, operator_norm(resid)));
}

}  // namespace

double max_principal_angle(const Mat& A, const Mat& B, double rank_tol) {
  return max_angle_impl(A, B, rank_tol);
}

double max_principal_angle(const CMat& A, const CMat& B, double rank_tol) {
  return max_angle_impl(A, B, rank_tol);
}

double symmetry_defect(const Mat& A) {
  return (A - A.transpose()).norm() / std::max(1.0, A.norm());
}

double skew_defect(const Mat& A) { return (A + A.transpose()).norm() / std::max(1.0, A.norm()); }

}  // namespace momap
