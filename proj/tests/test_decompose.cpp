#include "momap/decompose.hpp"
#include "momap/examples/galilean.hpp"
#include "momap/examples/heisenberg.hpp"
#include "momap/examples/so3.hpp"
#include "momap/examples/unitary.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace momap;
using namespace momap::testing;

namespace {

const galilean::Params kGal{1.0, 10.0};
const cplx I(0, 1);

Eigen::Vector3cd complex3(std::mt19937_64& rng) {
  return gaussian_vector(rng, 3).cast<cplx>() + I * gaussian_vector(rng, 3).cast<cplx>();
}

cplx complex1(std::mt19937_64& rng) {
  Vec v = gaussian_vector(rng, 2);
  return {v(0), v(1)};
}

// |Upsilon zeta| computed straight from the action.
double upsilon_residual(const HamiltonianActionSpec& h, const Vec& m, const CVec& z) {
  Vec re = h.inf_action(z.real(), m), im = h.inf_action(z.imag(), m);
  return (re + h.acs_at(m, im)).norm() / std::max(1.0, z.norm());
}

// |i [mu, v] - lambda v| / |v|.
double eigen_residual(const LieAlgebraSpec& alg, const Vec& mu, double lambda, const CVec& v) {
  CVec ad = ad_matrix(alg, mu).cast<cplx>() * v;
  return (I * ad - lambda * v).norm() / v.norm();
}

HamiltonianActionSpec trivial_action(const LieAlgebraSpec& alg) {
  HamiltonianActionSpec h;
  h.name = "trivial";
  h.algebra = alg;
  h.point_dim = 2;
  SymplecticSpace space = make_standard_symplectic(1);
  Mat j = standard_complex_structure(space).j;
  h.inf_action = [](const Vec&, const Vec&) { return Vec(Vec::Zero(2)); };
  h.momentum = [d = alg.dim](const Vec&) { return Vec(Vec::Zero(d)); };
  h.omega_at = [space](const Vec&, const Vec& X, const Vec& Y) { return space.form(X, Y); };
  h.acs_at = [j](const Vec&, const Vec& X) { return Vec(j * X); };
  return h;
}

}  // namespace

TEST(Stabilizer, TrivialActionIsWholeAlgebra) {
  HamiltonianActionSpec h = trivial_action(so3_algebra());
  ComplexStabilizer s = complex_stabilizer(h, Vec::Ones(2));
  EXPECT_EQ(s.dimension, 3);
  StabilizerDecomposition d = eigendecompose_stabilizer(h, Vec::Ones(2), Vec::Zero(3));
  ASSERT_EQ(d.clusters.size(), 1u);
  EXPECT_EQ(d.clusters[0].multiplicity, 3);
  EXPECT_NEAR(d.clusters[0].value, 0.0, 1e-14);
}

TEST(Stabilizer, HeisenbergIsGraphOfJ) {
  HamiltonianActionSpec h = as_hamiltonian(heisenberg::affine(2));
  auto rng = rng_for(141);
  Vec m = gaussian_vector(rng, 4);
  ComplexStabilizer s = complex_stabilizer(h, m);
  EXPECT_EQ(s.dimension, 2);
  Mat j = standard_complex_structure(make_standard_symplectic(2)).j;
  CMat oracle(4, 4);
  for (int a = 0; a < 4; ++a) oracle.col(a) = Vec::Unit(4, a).cast<cplx>() + I * (j * Vec::Unit(4, a)).cast<cplx>();
  EXPECT_LT(max_principal_angle(s.basis, oracle), 1e-8);
  for (Eigen::Index c = 0; c < s.basis.cols(); ++c) EXPECT_LT(upsilon_residual(h, m, s.basis.col(c)), 1e-12);

  // Translations move every point, so only mu = 0 fixes m.
  EXPECT_THROW(eigendecompose_stabilizer(h, m, h.momentum(m)), NumericalRefusal);
  StabilizerDecomposition d = eigendecompose_stabilizer(h, m, Vec::Zero(4));
  ASSERT_EQ(d.clusters.size(), 1u);
  EXPECT_EQ(d.clusters[0].multiplicity, 2);
  EXPECT_TRUE(d.all_pass());
}

TEST(Decompose, GalileanClusters) {
  HamiltonianActionSpec h = galilean::hamiltonian(kGal);
  auto rng = rng_for(142);
  const double s = kGal.spin;
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::Vector3d x = random_unit(rng, 3);
    Vec m = galilean::first_family(x);
    Vec mu = h.momentum(m);
    StabilizerDecomposition d = eigendecompose_stabilizer(h, m, mu);
    ASSERT_EQ(d.basis.cols(), 6);
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
      double v = d.eigenvalues(i);
      EXPECT_LT(std::min({std::abs(v), std::abs(v - s / 2), std::abs(v + s / 2)}), 1e-8);
    }
    ASSERT_NE(d.cluster(0), nullptr);
    ASSERT_NE(d.cluster(-s / 2), nullptr);
    ASSERT_NE(d.cluster(s / 2), nullptr);
    EXPECT_EQ(d.cluster(0)->multiplicity, 3);
    EXPECT_EQ(d.cluster(-s / 2)->multiplicity, 2);
    EXPECT_EQ(d.cluster(s / 2)->multiplicity, 1);
    EXPECT_LT(cluster_orthogonality_defect(d), 1e-8);
    for (const auto& c : d.clusters) {
      for (Eigen::Index k = 0; k < c.basis.cols(); ++k) {
        EXPECT_LT(upsilon_residual(h, m, c.basis.col(k)), 1e-8);
        EXPECT_LT(eigen_residual(h.algebra, mu, c.value, c.basis.col(k)), 1e-8);
      }
      for (const auto& c2 : d.clusters) EXPECT_LT(grading_defect(h, d, c.value, c2.value), 1e-8);
    }
  }
}

TEST(Decompose, GalileanExplicitFamilies) {
  HamiltonianActionSpec h = galilean::hamiltonian(kGal);
  auto rng = rng_for(143);
  const double s = kGal.spin, mass = kGal.mass;
  Eigen::Vector3d x = random_unit(rng, 3);
  Vec m = galilean::first_family(x);
  Vec mu = h.momentum(m);
  StabilizerDecomposition d = eigendecompose_stabilizer(h, m, mu);
  const Eigen::Vector3cd xc = x.cast<cplx>();
  auto perp = [&]() {
    Eigen::Vector3cd a = complex3(rng);
    return Eigen::Vector3cd(a - xc * xc.dot(a));
  };
  for (int k = 0; k < 5; ++k) {
    cplx a = complex1(rng), b = complex1(rng), th = complex1(rng);
    CVec zero = galilean::complex_element(a * xc, b * xc, I * mass * b * xc, th);
    Eigen::Vector3cd al = perp(), be = perp(), be2 = perp();
    CVec minus = galilean::complex_element(galilean::cross(al, xc) + I * al, galilean::cross(be, xc) + I * be,
                                           I * mass * (galilean::cross(be, xc) + I * be), 0);
    CVec plus = galilean::complex_element(Eigen::Vector3cd::Zero(), galilean::cross(be2, xc) - I * be2,
                                          I * mass * (galilean::cross(be2, xc) - I * be2), 0);
    EXPECT_LT(upsilon_residual(h, m, zero), 1e-12);
    EXPECT_LT(upsilon_residual(h, m, minus), 1e-12);
    EXPECT_LT(upsilon_residual(h, m, plus), 1e-12);
    EXPECT_LT(eigen_residual(h.algebra, mu, 0, zero), 1e-12);
    EXPECT_LT(eigen_residual(h.algebra, mu, -s / 2, minus), 1e-12);
    EXPECT_LT(eigen_residual(h.algebra, mu, s / 2, plus), 1e-12);
    EXPECT_LT(membership_residual(d, 0, zero), 1e-8);
    EXPECT_LT(membership_residual(d, -s / 2, minus), 1e-8);
    EXPECT_LT(membership_residual(d, s / 2, plus), 1e-8);
  }
}

TEST(Decompose, ZeroFamilyIsNotASubalgebra) {
  HamiltonianActionSpec h = galilean::hamiltonian(kGal);
  Eigen::Vector3d x(0, 0, 1);
  Vec m = galilean::first_family(x);
  const Eigen::Vector3cd xc = x.cast<cplx>();
  const cplx b1(0.7, -0.2), t1(0.3, 0.5), b2(-0.4, 0.9), t2(1.1, 0.1);
  CVec c1 = galilean::complex_element(0.5 * xc, b1 * xc, I * kGal.mass * b1 * xc, t1);
  CVec c2 = galilean::complex_element(-1.3 * xc, b2 * xc, I * kGal.mass * b2 * xc, t2);
  CVec br = complexify(h.algebra).bracket(c1, c2);
  CVec expect = galilean::complex_element(Eigen::Vector3cd::Zero(), Eigen::Vector3cd::Zero(), (b1 * t2 - b2 * t1) * xc, 0);
  EXPECT_LT((br - expect).norm(), 1e-12);
  EXPECT_GT(upsilon_residual(h, m, br), 1e-3);
  EXPECT_GT(stabilizer_residual(h, m, br), 1e-6);
}

TEST(Refinement, UnitaryAtOriginAndCriticalPoints) {
  unitary::Params p{3, 1.0};
  HamiltonianActionSpec h = unitary::hamiltonian(p);
  RefinedDecomposition origin = equivariant_refinement(h, Vec::Zero(6));
  EXPECT_EQ(origin.decomposition.basis.cols(), 9);
  EXPECT_LE(origin.certificate.max_eigenvalue, 1e-10);
  auto rng = rng_for(144);
  for (int i = 0; i < 5; ++i) {
    CVec dir = gaussian_vector(rng, 3).cast<cplx>() + I * gaussian_vector(rng, 3).cast<cplx>();
    Vec m = unitary::critical_point(p, dir);
    RefinedDecomposition r = equivariant_refinement(h, m);
    EXPECT_LE(r.certificate.max_eigenvalue, 1e-9);
    EXPECT_LT(r.certificate.zero_cluster_angle, 1e-6);
    EXPECT_LT(r.certificate.equivariance_defect, 1e-9);
    // U(2) acting on the complement of v.
    EXPECT_EQ(r.certificate.real_stabilizer_dimension, 4);
  }
}

TEST(Refinement, SphereEigenvaluesNonpositive) {
  HamiltonianActionSpec h = so3::hamiltonian(3.0);
  auto rng = rng_for(145);
  for (int i = 0; i < 5; ++i) {
    Vec m = h.sample_point(rng);
    RefinedDecomposition r = equivariant_refinement(h, m);
    EXPECT_LE(r.certificate.max_eigenvalue, 1e-10);
    EXPECT_EQ(r.certificate.real_stabilizer_dimension, 1);
  }
}

TEST(Decompose, StrictModeRefusesNonInvariantPairing) {
  HamiltonianActionSpec h = galilean::hamiltonian(kGal);
  Vec m = galilean::second_family(kGal, Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitZ()).point;
  EXPECT_THROW(eigendecompose_stabilizer(h, m, h.momentum(m)), NumericalRefusal);
}

TEST(Decompose, MuMustFixThePoint) {
  HamiltonianActionSpec h = galilean::hamiltonian(kGal);
  Vec m = galilean::first_family(Eigen::Vector3d::UnitZ());
  Vec mu = Vec::Unit(10, 0);
  EXPECT_THROW(eigendecompose_stabilizer(h, m, mu), NumericalRefusal);
}

TEST(Decompose, GeneralizedModeAgreesWhenStrictApplies) {
  HamiltonianActionSpec h = galilean::hamiltonian(kGal);
  Vec m = galilean::first_family(Eigen::Vector3d::UnitY());
  DecompositionOptions opt;
  opt.mode = DecompositionMode::generalized;
  StabilizerDecomposition g = eigendecompose_stabilizer(h, m, h.momentum(m), opt);
  StabilizerDecomposition s = eigendecompose_stabilizer(h, m, h.momentum(m));
  ASSERT_EQ(g.clusters.size(), s.clusters.size());
  for (size_t i = 0; i < g.clusters.size(); ++i) {
    EXPECT_NEAR(g.clusters[i].value, s.clusters[i].value, 1e-8);
    EXPECT_EQ(g.clusters[i].multiplicity, s.clusters[i].multiplicity);
    EXPECT_LT(max_principal_angle(g.clusters[i].basis, s.clusters[i].basis), 1e-6);
  }
}
