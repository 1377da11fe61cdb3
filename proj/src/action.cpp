#include "momap/action.hpp"

#include <cmath>

namespace momap {

Mat tangent_basis(const HamiltonianActionSpec& spec, const Vec& m) {
  if (spec.tangent_basis) return spec.tangent_basis(m);
  return Mat::Identity(spec.point_dim, spec.point_dim);
}

Vec tangent_project(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X) {
  if (!spec.tangent_basis) return X;
  Mat B = spec.tangent_basis(m);
  return B * (B.transpose() * X);
}

Vec retract(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X) {
  if (spec.retract) return spec.retract(m, X);
  return m + X;
}

Vec random_tangent(const HamiltonianActionSpec& spec, const Vec& m, std::mt19937_64& rng) {
  Mat B = tangent_basis(spec, m);
  Vec X = B * random_gaussian(rng, B.cols());
  double n = X.norm();
  return n > 0 ? Vec(X / n) : X;
}

Vec momentum_differential(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X, Differential mode,
                          double step) {
  if (mode == Differential::analytic && spec.momentum_tangent) return spec.momentum_tangent(m, X);
  double h = (step > 0 ? step : spec.fd_step) * std::max(1.0, m.norm());
  Vec plus = spec.momentum(retract(spec, m, h * X));
  Vec minus = spec.momentum(retract(spec, m, -h * X));
  return (plus - minus) / (2 * h);
}

double momentum_defect(const HamiltonianActionSpec& spec, const Vec& m, int samples, double step,
                       std::uint64_t seed, Differential mode) {
  if (step <= 0) throw std::invalid_argument("momentum_defect: step must be positive");
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    Vec xi = random_unit(rng, spec.algebra.dim);
    Vec X = random_tangent(spec, m, rng);
    Vec dJ = momentum_differential(spec, m, X, mode, step);
    double v = kappa(spec.algebra, dJ, xi) + spec.omega_at(m, spec.inf_action(xi, m), X);
    if (!std::isfinite(v)) throw std::runtime_error("momentum_defect: non-finite value");
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

double acs_defect(const HamiltonianActionSpec& spec, const Vec& m, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    Vec X = random_tangent(spec, m, rng);
    Vec Y = random_tangent(spec, m, rng);
    Vec jX = spec.acs_at(m, X);
    Vec jY = spec.acs_at(m, Y);
    worst = std::max(worst, (spec.acs_at(m, jX) + X).norm());
    worst = std::max(worst, std::abs(spec.omega_at(m, jX, jY) - spec.omega_at(m, X, Y)));
  }
  return worst;
}

Mat coadjoint_inverse(const HamiltonianActionSpec& spec, const GroupElement& g) {
  if (!spec.group) throw std::invalid_argument(spec.name + ": no group model");
  Mat ad_inv = spec.group->adjoint(spec.group->inverse(g));
  return spec.algebra.gram.partialPivLu().solve(ad_inv.transpose() * spec.algebra.gram);
}

Vec sigma_one_cocycle(const HamiltonianActionSpec& spec, const GroupElement& g, const Vec& m) {
  if (!spec.group || !spec.group_act) throw std::invalid_argument(spec.name + ": no group action");
  return spec.momentum(spec.group_act(g, m)) - coadjoint_inverse(spec, g) * spec.momentum(m);
}

double sigma_two_cocycle(const HamiltonianActionSpec& spec, const Vec& xi, const Vec& eta, const Vec& m) {
  return kappa(spec.algebra, spec.momentum(m), bracket(spec.algebra, xi, eta)) +
         spec.omega_at(m, spec.inf_action(xi, m), spec.inf_action(eta, m));
}

Mat action_matrix(const HamiltonianActionSpec& spec, const Vec& m) {
  Mat A(spec.point_dim, spec.algebra.dim);
  for (int a = 0; a < spec.algebra.dim; ++a) A.col(a) = spec.inf_action(spec.algebra.basis_vector(a), m);
  return A;
}

Mat sigma_two_matrix(const HamiltonianActionSpec& spec, const Vec& m) {
  const int d = spec.algebra.dim;
  Mat A = action_matrix(spec, m);
  Vec Jm = spec.momentum(m);
  Vec KJ = spec.algebra.gram * Jm;
  Mat S(d, d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      S(a, b) = KJ.dot(spec.algebra.ad_basis[a].col(b)) + spec.omega_at(m, A.col(a), A.col(b));
    }
  }
  return S;
}

Mat sigma_kappa_map(const HamiltonianActionSpec& spec, const Vec& m) {
  // kappa(S e_a, e_b) = (S^T K)_{ab} = Sigma_{ab}  =>  S = K^{-1} Sigma^T.
  Mat Sigma = sigma_two_matrix(spec, m);
  return spec.algebra.gram.partialPivLu().solve(Mat(Sigma.transpose()));
}

}  // namespace momap
