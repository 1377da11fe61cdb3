#include "momap/examples/galilean.hpp"
#include "momap/examples/heisenberg.hpp"
#include "momap/examples/siegel.hpp"
#include "momap/examples/so3.hpp"
#include "momap/examples/unitary.hpp"
#include "momap/examples/virasoro.hpp"
#include "momap/normsq.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace momap;
using namespace momap::testing;

namespace {

const galilean::Params kGal{1.0, 10.0};

Vec grid_points(int M) {
  Vec t(M);
  for (int n = 0; n < M; ++n) t(n) = static_cast<double>(n) / M;
  return t;
}

}  // namespace

TEST(Galilean, MomentumAtFirstFamily) {
  auto rng = rng_for(161);
  for (int i = 0; i < 10; ++i) {
    Eigen::Vector3d x = random_unit(rng, 3);
    Vec J = galilean::momentum(kGal, galilean::first_family(x));
    Vec oracle = Vec::Zero(10);
    oracle.head<3>() = -kGal.spin / 2 * x;
    EXPECT_LT((J - oracle).norm(), 1e-15);
  }
}

TEST(Galilean, SecondFamilyGeometry) {
  auto rng = rng_for(162);
  const double k = std::cbrt(4 * kGal.mass * kGal.mass * kGal.spin);
  for (int i = 0; i < 10; ++i) {
    Eigen::Vector3d x = random_unit(rng, 3), d = random_unit(rng, 3);
    d = (d - x * x.dot(d)).normalized();
    galilean::SecondFamily f = galilean::second_family(kGal, d, x);
    Eigen::Vector3d q = galilean::q_of(f.point), p = galilean::p_of(f.point);
    EXPECT_NEAR(p.squaredNorm(), 2 * kGal.mass * kGal.mass * (kGal.spin - k) / k, 1e-12);
    EXPECT_LT((q - k / (2 * kGal.mass * kGal.mass) * p.cross(x)).norm(), 1e-12);
    EXPECT_NEAR(galilean::x_of(f.point).norm(), 1.0, 1e-15);
  }
}

TEST(Galilean, ComplexCrossIsBilinear) {
  auto rng = rng_for(163);
  Eigen::Vector3cd a = gaussian_vector(rng, 3).cast<cplx>() + cplx(0, 1) * gaussian_vector(rng, 3).cast<cplx>();
  Eigen::Vector3cd b = gaussian_vector(rng, 3).cast<cplx>() + cplx(0, 1) * gaussian_vector(rng, 3).cast<cplx>();
  Eigen::Vector3cd oracle(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
  EXPECT_LT((galilean::cross(a, b) - oracle).norm(), 1e-15);
}

TEST(Heisenberg, NormSquaredIsMetricNorm) {
  AffineActionSpec a = heisenberg::affine(2);
  HamiltonianActionSpec h = as_hamiltonian(a);
  Mat g = compatible_metric(a.space, standard_complex_structure(a.space));
  auto rng = rng_for(164);
  for (int i = 0; i < 10; ++i) {
    Vec v = gaussian_vector(rng, 4);
    EXPECT_NEAR(norm_squared(h, v), v.dot(g * v), 1e-12 * std::max(1.0, v.squaredNorm()));
  }
  EXPECT_LT(criticality_residual(h, Vec::Zero(4)), 1e-15);
}

TEST(Virasoro, ConstantModeOfMomentumVanishesAtZero) {
  virasoro::Params p{8, 128};
  EXPECT_EQ(virasoro::momentum(p, Vec::Zero(virasoro::class_dim(p)))(0), 0.0);
}

TEST(Virasoro, SchwarzianOfExplicitDiffeo) {
  const int M = 512;
  const double a = 0.1, w = 2 * M_PI;
  virasoro::CircleDiffeo phi = virasoro::diffeo_from_function(M, [&](double t) { return a * std::sin(w * t); });
  Vec S = virasoro::schwarzian(phi);
  Vec t = grid_points(M);
  Vec oracle(M);
  for (int n = 0; n < M; ++n) {
    double d1 = 1 + a * w * std::cos(w * t(n));
    double d2 = -a * w * w * std::sin(w * t(n));
    double d3 = -a * w * w * w * std::cos(w * t(n));
    oracle(n) = d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
  }
  EXPECT_LT(virasoro::grid_l2(S - oracle), 1e-8 * virasoro::grid_l2(oracle));
}

TEST(Virasoro, InverseAndComposition) {
  const int M = 256;
  auto rng = rng_for(165);
  for (int i = 0; i < 5; ++i) {
    virasoro::CircleDiffeo phi = virasoro::random_diffeo(M, rng, 4, 0.5);
    EXPECT_GT(phi.min_derivative(), 0.0);
    virasoro::CircleDiffeo id = virasoro::compose(phi, virasoro::inverse(phi));
    EXPECT_LT(id.u.cwiseAbs().maxCoeff(), 1e-10);
    Vec t = grid_points(M);
    for (int n = 0; n < M; n += 37) EXPECT_NEAR(phi(t(n)), t(n) + phi.u(n), 1e-12);
  }
  EXPECT_ANY_THROW(virasoro::diffeo_from_function(M, [](double t) { return 0.5 * std::sin(2 * M_PI * t); }));
}

TEST(Virasoro, BottThurstonCocycleIdentity) {
  const int M = 2048;
  auto rng = rng_for(166);
  for (int i = 0; i < 3; ++i) {
    virasoro::CircleDiffeo a = virasoro::random_diffeo(M, rng, 3, 0.3);
    virasoro::CircleDiffeo b = virasoro::random_diffeo(M, rng, 3, 0.3);
    virasoro::CircleDiffeo c = virasoro::random_diffeo(M, rng, 3, 0.3);
    double lhs = virasoro::bott_thurston(a, b) + virasoro::bott_thurston(virasoro::compose(a, b), c);
    double rhs = virasoro::bott_thurston(a, virasoro::compose(b, c)) + virasoro::bott_thurston(b, c);
    EXPECT_NEAR(lhs, rhs, 1e-6);
    EXPECT_GT(std::abs(virasoro::bott_thurston(a, b)), 1e-6);
    EXPECT_NEAR(virasoro::bott_thurston(virasoro::identity_diffeo(M), b), 0.0, 1e-14);
  }
}

TEST(Virasoro, EulerLagrangeResidualIsMomentumAction) {
  virasoro::Params p{8, 128};
  HamiltonianActionSpec h = virasoro::hamiltonian(p);
  auto rng = rng_for(167);
  for (int i = 0; i < 5; ++i) {
    Vec f = virasoro::random_class(p, rng, 2, 0.3);
    Vec el = virasoro::euler_lagrange_residual(p, f);
    Vec oracle = h.inf_action(h.momentum(f), f);
    EXPECT_LT((el - oracle).norm(), 1e-8 * std::max(1.0, oracle.norm()));
  }
  EXPECT_LT(virasoro::euler_lagrange_residual(p, Vec::Zero(virasoro::class_dim(p))).norm(), 1e-15);
}

TEST(Siegel, StandardPointAndCayley) {
  for (int n : {1, 2}) {
    HamiltonianActionSpec h = siegel::hamiltonian(n);
    Mat j0 = siegel::standard_j0(n);
    EXPECT_EQ(h.momentum(siegel::flatten(j0)).norm(), 0.0);
    EXPECT_LT(siegel::compatibility_defect(j0), 1e-15);
    auto rng = rng_for(168 + n);
    for (int i = 0; i < 5; ++i) {
      Mat j = siegel::random_compatible(rng, n, j0);
      EXPECT_LT(siegel::compatibility_defect(j), 1e-10);
      Mat S = siegel::cayley(j0, j);
      EXPECT_LT((siegel::cayley_inverse(j0, S) - j).norm(), 1e-10);
      EXPECT_LT((S * j0 + j0 * S).norm(), 1e-10);
    }
    EXPECT_LT(siegel::cayley(j0, j0).norm(), 1e-15);
    EXPECT_THROW(siegel::cayley(j0, -j0), NumericalRefusal);
  }
}

TEST(Unitary, EquivariantAndCritical) {
  unitary::Params p{2, 1.0};
  HamiltonianActionSpec h = unitary::hamiltonian(p);
  auto rng = rng_for(170);
  for (int i = 0; i < 5; ++i) {
    Vec m = h.sample_point(rng);
    GroupElement g = h.group->sample(rng);
    EXPECT_LT(sigma_one_cocycle(h, g, m).norm(), 1e-12);
  }
  CVec dir(2);
  dir << cplx(1, 2), cplx(-0.5, 0.3);
  Vec m = unitary::critical_point(p, dir);
  EXPECT_NEAR(m.norm(), 1.0, 1e-15);
  EXPECT_LT(criticality_residual(h, m), 1e-12);
}

TEST(Sphere, EveryPointCritical) {
  HamiltonianActionSpec h = so3::hamiltonian(2.0);
  auto rng = rng_for(171);
  for (int i = 0; i < 5; ++i) {
    Vec x = h.sample_point(rng);
    EXPECT_LT(criticality_residual(h, x), 1e-14);
    EXPECT_LT((h.momentum(x) + x).norm(), 1e-15);
  }
}
