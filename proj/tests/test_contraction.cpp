#include "momap/contraction.hpp"
#include "momap/examples/galilean.hpp"
#include "momap/examples/siegel.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace momap;
using namespace momap::testing;

namespace {

const galilean::Params kGal{1.0, 10.0};

HamiltonianActionSpec galilean_affine_spec() { return as_hamiltonian(galilean::affine(kGal)); }

// Signed omega-area of the straight triangle (a, b, c).
double triangle_oracle(const HamiltonianActionSpec& h, const Vec& a, const Vec& b, const Vec& c) {
  return 0.5 * h.omega_at(a, b - a, c - a);
}

}  // namespace

TEST(Quadrature, GaussLegendreIsExactOnPolynomials) {
  for (int n : {1, 2, 5, 16, 32, 64}) {
    NodesWeights nw = gauss_legendre(n);
    ASSERT_EQ(static_cast<int>(nw.x.size()), n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0;
      for (int i = 0; i < n; ++i) sum += nw.w[i] * std::pow(nw.x[i], k);
      double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(sum, exact, 1e-13) << "n " << n << " k " << k;
    }
  }
}

TEST(Quadrature, CompositeUnitInterval) {
  NodesWeights nw = composite_unit_interval({8, 3});
  EXPECT_EQ(nw.x.size(), 24u);
  double w = std::accumulate(nw.w.begin(), nw.w.end(), 0.0);
  EXPECT_NEAR(w, 1.0, 1e-14);
  double integral = 0;
  for (size_t i = 0; i < nw.x.size(); ++i) integral += nw.w[i] * std::exp(nw.x[i]);
  EXPECT_NEAR(integral, std::exp(1.0) - 1, 1e-14);
}

TEST(Quadrature, PairwiseSum) {
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 100.0, 1e-12);
  EXPECT_EQ(pairwise_sum({}), 0.0);
}

TEST(Contraction, EndpointsAndEquivariance) {
  HamiltonianActionSpec h = galilean_affine_spec();
  ContractionSpec c = straight_line_contraction();
  auto rng = rng_for(101);
  for (int i = 0; i < 20; ++i) {
    Vec m0 = gaussian_vector(rng, 6), m = gaussian_vector(rng, 6);
    EXPECT_LT(contraction_endpoint_defect(c, m0, m), 1e-14);
    EXPECT_LT(contraction_equivariance_defect(c, h, h.group->sample(rng), m0, m, 0.37), 1e-12);
  }
  ContractionSpec cay = siegel::cayley_contraction();
  HamiltonianActionSpec s = siegel::hamiltonian(2);
  Vec j0 = siegel::flatten(siegel::standard_j0(2));
  for (int i = 0; i < 10; ++i) {
    Vec j = siegel::flatten(siegel::random_compatible(rng, 2, siegel::standard_j0(2)));
    EXPECT_LT(contraction_endpoint_defect(cay, j0, j), 1e-12);
  }
}

TEST(QuadratureMomentum, VanishesAtBasePoint) {
  HamiltonianActionSpec h = galilean_affine_spec();
  auto rng = rng_for(102);
  Vec m0 = gaussian_vector(rng, 6);
  EXPECT_NEAR(momentum_via_quadrature(straight_line_contraction(), h, m0, m0, gaussian_vector(rng, 10)), 0.0, 1e-12);
}

TEST(QuadratureMomentum, StraightLineMatchesAffineClosedForm) {
  AffineActionSpec a = galilean::affine(kGal);
  HamiltonianActionSpec h = as_hamiltonian(a);
  ContractionSpec c = straight_line_contraction();
  auto rng = rng_for(103);
  for (int i = 0; i < 10; ++i) {
    Vec v = gaussian_vector(rng, 6);
    Vec q = momentum_vector_via_quadrature(c, h, Vec::Zero(6), v);
    Vec closed = affine_momentum(a, v);
    EXPECT_LT((q - closed).norm(), 1e-7 * std::max(1.0, closed.norm()));
  }
}

TEST(QuadratureMomentum, SiegelIsJMinusJ0UnderHalfTrace) {
  for (int n : {1, 2}) {
    const Mat j0 = siegel::standard_j0(n);
    HamiltonianActionSpec h = siegel::hamiltonian(n, j0);
    ContractionSpec c = siegel::cayley_contraction();
    std::vector<Mat> basis = siegel::sp_basis(n);
    auto rng = rng_for(104 + n);
    for (int i = 0; i < 10; ++i) {
      Mat j = siegel::random_compatible(rng, n, j0);
      for (size_t a = 0; a < basis.size(); ++a) {
        double oracle = 0.5 * ((j - j0) * basis[a]).trace();
        double v = momentum_via_quadrature(c, h, siegel::flatten(j0), siegel::flatten(j),
                                           Vec::Unit(static_cast<Eigen::Index>(basis.size()), a));
        EXPECT_NEAR(v, oracle, 1e-6) << "n " << n;
      }
    }
  }
}

TEST(QuadratureMomentum, NodeDoublingIsStable) {
  ContractionSpec c = siegel::cayley_contraction();
  c.check_convergence = false;
  ContractionSpec fine = c;
  fine.quadrature.nodes *= 2;
  HamiltonianActionSpec h = siegel::hamiltonian(2);
  auto rng = rng_for(107);
  const Mat j0 = siegel::standard_j0(2);
  for (int i = 0; i < 5; ++i) {
    Vec j = siegel::flatten(siegel::random_compatible(rng, 2, j0));
    Vec xi = gaussian_vector(rng, h.algebra.dim);
    double a = momentum_via_quadrature(c, h, siegel::flatten(j0), j, xi);
    double b = momentum_via_quadrature(fine, h, siegel::flatten(j0), j, xi);
    EXPECT_LT(std::abs(a - b), 1e-8 * std::max(1.0, std::abs(b)));
  }
}

TEST(QuadratureMomentum, WrappedSpecIsAMomentumMap) {
  HamiltonianActionSpec h = siegel::hamiltonian(1);
  Vec j0 = siegel::flatten(siegel::standard_j0(1));
  HamiltonianActionSpec q = with_quadrature_momentum(siegel::cayley_contraction(), h, j0);
  EXPECT_FALSE(static_cast<bool>(q.momentum_tangent));
  auto rng = rng_for(108);
  for (int i = 0; i < 3; ++i) EXPECT_LT(momentum_defect(q, q.sample_point(rng), 5, 1e-4, rng()), 1e-5);
}

TEST(ContractionIntegrals, SiegelClosedForm) {
  for (int n : {1, 2}) {
    const Mat j0 = siegel::standard_j0(n);
    HamiltonianActionSpec h = siegel::hamiltonian(n, j0);
    ContractionSpec c = siegel::cayley_contraction();
    auto rng = rng_for(109 + n);
    for (int i = 0; i < 5; ++i) {
      Mat j = siegel::random_compatible(rng, n, j0);
      Vec jf = siegel::flatten(j), j0f = siegel::flatten(j0);
      Vec A = random_tangent(h, jf, rng), A0 = random_tangent(h, j0f, rng);
      EXPECT_NEAR(contraction_primitive_moving(c, h, j0f, jf, A),
                  siegel::contraction_integral_closed_form(j0, j, siegel::to_matrix(A)), 1e-7);
      EXPECT_NEAR(contraction_primitive_base(c, h, j0f, jf, A0),
                  siegel::contraction_integral_closed_form(j0, j, siegel::to_matrix(A0)), 1e-7);
    }
  }
}

TEST(TriangleArea, DegenerateTriangle) {
  HamiltonianActionSpec h = galilean_affine_spec();
  auto rng = rng_for(111);
  GroupElement e = h.group->identity;
  EXPECT_NEAR(triangle_area(straight_line_contraction(), h, e, e, gaussian_vector(rng, 6)), 0.0, 1e-14);
}

TEST(TriangleArea, AffineEqualsFlatTriangle) {
  HamiltonianActionSpec h = galilean_affine_spec();
  ContractionSpec c = straight_line_contraction();
  auto rng = rng_for(112);
  const auto& G = *h.group;
  for (int i = 0; i < 10; ++i) {
    GroupElement g1 = G.sample(rng), g2 = G.sample(rng);
    Vec m0 = gaussian_vector(rng, 6);
    Vec b = h.group_act(G.inverse(G.multiply(g1, g2)), m0);
    Vec cc = h.group_act(G.inverse(g2), m0);
    double oracle = triangle_oracle(h, m0, b, cc);
    double nu = triangle_area(c, h, g1, g2, m0);
    EXPECT_NEAR(nu, oracle, 1e-8 * std::max(1.0, std::abs(oracle)));
  }
}

TEST(TriangleArea, ScalesWithTheForm) {
  HamiltonianActionSpec h = galilean_affine_spec();
  HamiltonianActionSpec scaled = h;
  const double lambda = 2.5;
  auto base = h.omega_at;
  scaled.omega_at = [base, lambda](const Vec& m, const Vec& X, const Vec& Y) { return lambda * base(m, X, Y); };
  auto rng = rng_for(113);
  GroupElement g1 = h.group->sample(rng), g2 = h.group->sample(rng);
  Vec m0 = gaussian_vector(rng, 6);
  ContractionSpec c = straight_line_contraction();
  double a = triangle_area(c, h, g1, g2, m0), b = triangle_area(c, scaled, g1, g2, m0);
  EXPECT_NEAR(b, lambda * a, 1e-12 * std::max(1.0, std::abs(b)));
}

TEST(TriangleCocycle, AgreesWithBargmann) {
  HamiltonianActionSpec h = galilean_affine_spec();
  ContractionSpec c = straight_line_contraction();
  auto rng = rng_for(114);
  for (int i = 0; i < 10; ++i) {
    GroupElement g1 = h.group->sample(rng), g2 = h.group->sample(rng);
    double oracle = galilean::bargmann(kGal, g1, g2);
    EXPECT_NEAR(triangle_cocycle(c, h, g1, g2, Vec::Zero(6)), oracle, 1e-6 * std::max(1.0, std::abs(oracle)));
  }
  EXPECT_NEAR(triangle_cocycle(c, h, h.group->identity, h.group->sample(rng), Vec::Zero(6)), 0.0, 1e-14);
}

TEST(TriangleCocycle, SixTermIdentityOnSiegel) {
  HamiltonianActionSpec h = siegel::hamiltonian(1);
  ContractionSpec c = siegel::cayley_contraction();
  const auto& G = *h.group;
  Vec m0 = siegel::flatten(siegel::standard_j0(1));
  auto rng = rng_for(115);
  for (int i = 0; i < 3; ++i) {
    GroupElement g1 = G.sample(rng), g2 = G.sample(rng), g3 = G.sample(rng);
    auto nu = [&](const GroupElement& a, const GroupElement& b) { return triangle_area(c, h, a, b, m0); };
    double lhs = nu(g1, g2) + nu(G.multiply(g1, g2), g3) + nu(G.identity, G.multiply(g2, g3));
    double rhs = nu(g2, g3) + nu(g1, G.multiply(g2, g3)) + nu(G.identity, g2);
    EXPECT_NEAR(lhs, rhs, 1e-6);
  }
}

TEST(TriangleCocycle, InfinitesimalVersionIsSigma) {
  HamiltonianActionSpec h = galilean_affine_spec();
  ContractionSpec c = straight_line_contraction();
  auto rng = rng_for(116);
  const auto& G = *h.group;
  const double step = 1e-2;
  Vec m0 = Vec::Zero(6);
  for (int i = 0; i < 3; ++i) {
    Vec xi = gaussian_vector(rng, 10), eta = gaussian_vector(rng, 10);
    auto D = [&](double s, double t) {
      GroupElement gs = G.exp(s * xi), gt = G.exp(t * eta);
      return triangle_cocycle(c, h, gs, gt, m0) - triangle_cocycle(c, h, gt, gs, m0);
    };
    double mixed = (D(step, step) - D(step, -step) - D(-step, step) + D(-step, -step)) / (4 * step * step);
    double oracle = h.omega_at(m0, h.inf_action(xi, m0), h.inf_action(eta, m0));
    EXPECT_NEAR(mixed, oracle, 1e-4 * std::max(1.0, std::abs(oracle)));
  }
}

TEST(Siegel, CayleyEndpoints) {
  auto rng = rng_for(117);
  const Mat j0 = siegel::standard_j0(2);
  EXPECT_LT(siegel::cayley(j0, j0).norm(), 1e-15);
  Mat j = siegel::random_compatible(rng, 2, j0);
  EXPECT_LT((siegel::cayley_inverse(j0, siegel::cayley(j0, j)) - j).norm(), 1e-12);
  EXPECT_LT(siegel::compatibility_defect(j), 1e-12);
}
