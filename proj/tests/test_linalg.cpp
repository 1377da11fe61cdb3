#include "momap/linalg.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <Eigen/LU>

using namespace momap;
using namespace momap::testing;

TEST(StandardSymplectic, TwoDimensional) {
  SymplecticSpace s = make_standard_symplectic(1);
  Mat expected(2, 2);
  expected << 0, 1, -1, 0;
  EXPECT_EQ(s.omega, expected);
  EXPECT_EQ(s.poisson * s.omega, -Mat::Identity(2, 2));
}

TEST(StandardSymplectic, FourDimensionalIsAntisymmetric) {
  SymplecticSpace s = make_standard_symplectic(2);
  EXPECT_EQ(s.dim, 4);
  EXPECT_EQ(s.omega.transpose(), -s.omega);
  EXPECT_EQ(s.omega.topRightCorner(2, 2), Mat::Identity(2, 2));
}

TEST(StandardSymplectic, PoissonMatchesInverse) {
  SymplecticSpace s = make_standard_symplectic(3);
  Mat oracle = -s.omega.fullPivLu().inverse();
  EXPECT_LT((s.poisson - oracle).norm(), 1e-14);
  EXPECT_LT((s.poisson - s.omega).norm(), 1e-14);
}

TEST(StandardSymplectic, RejectsZero) { EXPECT_THROW(make_standard_symplectic(0), std::invalid_argument); }

TEST(Symplectic, RejectsBadForms) {
  EXPECT_THROW(make_symplectic(Mat::Identity(2, 2)), std::invalid_argument);
  EXPECT_THROW(make_symplectic(Mat::Zero(2, 2)), std::invalid_argument);
  EXPECT_THROW(make_symplectic(Mat::Zero(3, 3)), std::invalid_argument);
}

TEST(Symplectic, PoissonIdentityOnRandomForms) {
  auto rng = rng_for(11);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + trial % 4;
    Mat A = gaussian_matrix(rng, 2 * n, 2 * n);
    Mat omega = A - A.transpose();
    SymplecticSpace s = make_symplectic(omega);
    double scale = std::max(1.0, s.poisson.norm() * s.omega.norm());
    EXPECT_LT((s.poisson * s.omega + Mat::Identity(2 * n, 2 * n)).norm() / scale, 1e-12) << "trial " << trial;
  }
}

TEST(Musical, FlatByIndexFormula) {
  SymplecticSpace s = make_standard_symplectic(1);
  Vec v(2);
  v << 1, 0;
  // flat(v)_i = omega_{ji} v^j: i = 0 gives omega_{00} = 0, i = 1 gives omega_{01} = 1.
  Vec expected(2);
  expected << s.omega(0, 0) * v(0) + s.omega(1, 0) * v(1), s.omega(0, 1) * v(0) + s.omega(1, 1) * v(1);
  Vec flat = musical_sharp_flat(s, v, Musical::flat);
  EXPECT_EQ(flat, expected);
  EXPECT_EQ(flat, Vec::Unit(2, 1));
}

TEST(Musical, FlatOfZero) {
  SymplecticSpace s = make_standard_symplectic(2);
  EXPECT_EQ(musical_sharp_flat(s, Vec::Zero(4), Musical::flat), Vec::Zero(4));
}

TEST(Musical, SharpInvertsFlat) {
  auto rng = rng_for(12);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 3;
    Mat A = gaussian_matrix(rng, 2 * n, 2 * n);
    SymplecticSpace s = make_symplectic(A - A.transpose());
    Vec v = gaussian_vector(rng, 2 * n);
    Vec back = musical_sharp_flat(s, musical_sharp_flat(s, v, Musical::flat), Musical::sharp);
    EXPECT_LT((back - v).norm(), 1e-9 * std::max(1.0, v.norm()) * s.poisson.norm() * s.omega.norm());
  }
}

TEST(Musical, DimensionMismatch) {
  SymplecticSpace s = make_standard_symplectic(2);
  EXPECT_THROW(musical_sharp_flat(s, Vec::Zero(3), Musical::flat), std::invalid_argument);
}

TEST(Compatible, StandardStructure) {
  SymplecticSpace s = make_standard_symplectic(2);
  CompatibleStructure j = standard_complex_structure(s);
  EXPECT_EQ(j.j, -s.omega);
  EXPECT_LT((compatible_metric(s, j) - Mat::Identity(4, 4)).norm(), 1e-15);
}

TEST(Compatible, ConjugatedStructuresStayCompatible) {
  auto rng = rng_for(13);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 3;
    SymplecticSpace s = make_standard_symplectic(n);
    Mat S = random_symplectic(rng, n);
    Mat j = S * (-s.omega) * S.inverse();
    CompatibleStructure c = make_compatible(s, j, 1e-8);
    Mat I = Mat::Identity(2 * n, 2 * n);
    EXPECT_LT(Eigen::JacobiSVD<Mat>(c.j * c.j + I).singularValues()(0), 1e-10);
    Eigen::SelfAdjointEigenSolver<Mat> es(compatible_metric(s, c));
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Compatible, RejectsNonStructures) {
  SymplecticSpace s = make_standard_symplectic(1);
  EXPECT_THROW(make_compatible(s, Mat::Identity(2, 2)), std::invalid_argument);
  // Squares to -I but with the wrong orientation: omega(., j.) is negative.
  EXPECT_THROW(make_compatible(s, s.omega), std::invalid_argument);
}

TEST(KappaC, RealArgumentsGiveKappa) {
  auto rng = rng_for(14);
  Mat K = random_spd(rng, 5);
  Vec x = gaussian_vector(rng, 5);
  cplx v = kappa_c(K, ComplexVector(x), ComplexVector(x));
  EXPECT_NEAR(v.real(), x.dot(K * x), 1e-12 * x.squaredNorm() * K.norm());
  EXPECT_EQ(v.imag(), 0.0);
}

TEST(KappaC, LinearInFirstSlot) {
  auto rng = rng_for(15);
  Mat K = random_spd(rng, 4);
  Vec eta = gaussian_vector(rng, 4);
  ComplexVector zeta(Vec::Zero(4), eta);
  cplx v = kappa_c(K, zeta, ComplexVector(eta));
  EXPECT_NEAR(v.real(), 0.0, 1e-12);
  EXPECT_NEAR(v.imag(), eta.dot(K * eta), 1e-12 * eta.squaredNorm() * K.norm());
}

TEST(KappaC, HermitianSymmetryAndEigenForm) {
  auto rng = rng_for(16);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 6;
    Mat A = gaussian_matrix(rng, n, n);
    Mat K = A + A.transpose();
    ComplexVector z = gaussian_complex(rng, n), g = gaussian_complex(rng, n);
    cplx a = kappa_c(K, z, g), b = kappa_c(K, g, z);
    double scale = 1e-12 * std::max(1.0, K.norm() * z.stacked().norm() * g.stacked().norm());
    EXPECT_LT(std::abs(a - std::conj(b)), scale);
    // Oracle: gamma^H K zeta on Eigen complex vectors.
    cplx oracle = g.to_eigen().adjoint() * K.cast<cplx>() * z.to_eigen();
    EXPECT_LT(std::abs(a - oracle), scale);
  }
}

TEST(KappaC, PositiveForSpdPairing) {
  auto rng = rng_for(17);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + trial % 5;
    Mat K = random_spd(rng, n);
    ComplexVector z = gaussian_complex(rng, n);
    cplx v = kappa_c(K, z, z);
    EXPECT_GT(v.real(), 0.0);
    EXPECT_LT(std::abs(v.imag()), 1e-12 * std::max(1.0, v.real()));
  }
  EXPECT_EQ(kappa_c(Mat::Identity(3, 3), ComplexVector(Vec::Zero(3)), ComplexVector(Vec::Zero(3))), cplx(0, 0));
}

TEST(KappaC, Errors) {
  Mat K(2, 2);
  K << 1, 2, 0, 1;
  EXPECT_THROW(kappa_c(K, ComplexVector(Vec::Zero(2)), ComplexVector(Vec::Zero(2))), std::invalid_argument);
  EXPECT_THROW(kappa_c(Mat::Identity(2, 2), ComplexVector(Vec::Zero(3)), ComplexVector(Vec::Zero(2))),
               std::invalid_argument);
  EXPECT_THROW(ComplexVector(Vec::Zero(2), Vec::Zero(3)), std::invalid_argument);
}

TEST(Blocks, IdentityAndMultiplicationByI) {
  auto rng = rng_for(18);
  ComplexVector v = gaussian_complex(rng, 3);
  ComplexVector same = block_apply(BlockOperator::identity(3), v);
  EXPECT_EQ(same.re, v.re);
  EXPECT_EQ(same.im, v.im);
  ComplexVector iv = block_apply(BlockOperator::i_blocks(3), v);
  EXPECT_EQ(iv.re, -v.im);
  EXPECT_EQ(iv.im, v.re);
}

TEST(Blocks, ComplexMatrixOnRealVector) {
  auto rng = rng_for(19);
  Mat S = gaussian_matrix(rng, 4, 4), T = gaussian_matrix(rng, 4, 4);
  Vec v = gaussian_vector(rng, 4);
  ComplexVector out = block_apply(BlockOperator::from_complex(S, T), ComplexVector(v));
  // (S + iT) v = Sv + i Tv.
  EXPECT_LT((out.re - S * v).norm(), 1e-13 * v.norm() * S.norm());
  EXPECT_LT((out.im - T * v).norm(), 1e-13 * v.norm() * T.norm());
  CMat oracle = S.cast<cplx>() + cplx(0, 1) * T.cast<cplx>();
  EXPECT_LT((BlockOperator::from_complex(S, T).complex_matrix() - oracle).norm(), 1e-14);
}

TEST(Blocks, ComplexLinearOperatorsCommuteWithI) {
  auto rng = rng_for(20);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 5;
    BlockOperator op = BlockOperator::from_complex(gaussian_matrix(rng, n, n), gaussian_matrix(rng, n, n));
    BlockOperator I = BlockOperator::i_blocks(n);
    EXPECT_EQ(((op * I) - (I * op)).real_matrix().norm(), 0.0);
    EXPECT_EQ(op.complex_linearity_defect(), 0.0);
  }
  BlockOperator conj{Mat::Identity(2, 2), Mat::Zero(2, 2), Mat::Zero(2, 2), -Mat::Identity(2, 2)};
  EXPECT_GT(conj.complex_linearity_defect(), 0.5);
  EXPECT_THROW(conj.complex_matrix(), std::invalid_argument);
}

TEST(Blocks, RealMatrixRoundTrip) {
  auto rng = rng_for(21);
  Mat big = gaussian_matrix(rng, 6, 6);
  BlockOperator op = BlockOperator::from_real_matrix(big);
  EXPECT_EQ(op.real_matrix(), big);
  ComplexVector v = gaussian_complex(rng, 3);
  EXPECT_LT((block_apply(op, v).stacked() - big * v.stacked()).norm(), 1e-13 * big.norm() * v.stacked().norm());
  EXPECT_THROW(block_apply(op, gaussian_complex(rng, 4)), std::invalid_argument);
}

TEST(Kernels, NullSpaceAndAngles) {
  auto rng = rng_for(22);
  Mat B = gaussian_matrix(rng, 6, 2);
  Mat A = gaussian_matrix(rng, 4, 6) * (Mat::Identity(6, 6) - B * (B.transpose() * B).inverse() * B.transpose());
  Kernel k = null_space(A, 1e-8);
  EXPECT_EQ(k.basis.cols(), 2);
  EXPECT_LT(max_principal_angle(k.basis, B), 1e-10);
  EXPECT_NEAR(max_principal_angle(Mat(Mat::Identity(3, 1)), Mat(Mat::Identity(3, 2))), M_PI / 2, 1e-15);
}

TEST(Kernels, SymmetryDefects) {
  Mat A(2, 2);
  A << 1, 2, 2, 3;
  EXPECT_EQ(symmetry_defect(A), 0.0);
  EXPECT_GT(skew_defect(A), 0.5);
  Mat B(2, 2);
  B << 0, 1, -1, 0;
  EXPECT_EQ(skew_defect(B), 0.0);
}
