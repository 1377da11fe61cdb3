#pragma once

#include "momap/group.hpp"
#include "momap/lie.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

namespace momap {

// A Hamiltonian action presented through pure functions on coordinate
// vectors. Points live in R^{point_dim}; constrained manifolds supply a
// tangent basis (orthonormal columns in the ambient coordinates) and a
// retraction. Tangent vectors are ambient coordinate vectors.
struct HamiltonianActionSpec {
  std::string name;
  LieAlgebraSpec algebra;
  int point_dim = 0;

  std::function<Vec(const Vec& xi, const Vec& m)> inf_action;
  std::function<Vec(const Vec& m)> momentum;
  std::function<double(const Vec& m, const Vec& X, const Vec& Y)> omega_at;
  std::function<Vec(const Vec& m, const Vec& X)> acs_at;

  // Optional pieces; generic defaults are used when empty.
  std::function<Vec(const Vec& m, const Vec& X)> momentum_tangent;  // analytic dJ_m(X)
  std::function<Vec(const Vec& sigma, const Vec& m, const Vec& X)> linearize_isotropy;
  std::function<Mat(const Vec& m)> tangent_basis;
  std::function<Vec(const Vec& m, const Vec& X)> retract;
  std::function<Vec(std::mt19937_64&)> sample_point;

  std::optional<GroupModel> group;
  std::function<Vec(const GroupElement& g, const Vec& m)> group_act;

  // Point where the momentum map is normalized to vanish (metadata).
  Vec base_point;
  // Relative central-difference step (scaled by max(1, |m|)).
  double fd_step = 1e-5;
  // +1/-1 once the gradient realization has been calibrated, 0 otherwise.
  double gradient_sign = 0;
};

enum class Differential { finite_difference, analytic };

Mat tangent_basis(const HamiltonianActionSpec& spec, const Vec& m);
Vec tangent_project(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X);
Vec retract(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X);
Vec random_tangent(const HamiltonianActionSpec& spec, const Vec& m, std::mt19937_64& rng);

// dJ_m(X): analytic if the action provides it (and mode allows), otherwise
// central differences of `momentum` along the retraction.
Vec momentum_differential(const HamiltonianActionSpec& spec, const Vec& m, const Vec& X,
                          Differential mode = Differential::analytic, double step = 0);

// max |kappa(dJ_m X, xi) + omega_m(xi.m, X)| over random unit xi and unit
// tangent X. With mode = analytic and no analytic dJ, falls back to
// finite differences.
double momentum_defect(const HamiltonianActionSpec& spec, const Vec& m, int samples, double step,
                       std::uint64_t seed = 0, Differential mode = Differential::finite_difference);

// Largest defect of j^2 = -1 and of omega_m(jX, jY) = omega_m(X, Y) on
// sampled tangents.
double acs_defect(const HamiltonianActionSpec& spec, const Vec& m, int samples, std::uint64_t seed = 0);

// K^{-1} Ad_{g^{-1}}^T K, the coadjoint action of g in kappa-identified form.
Mat coadjoint_inverse(const HamiltonianActionSpec& spec, const GroupElement& g);

// sigma(g) = J(g.m) - Ad*_{g^{-1}} J(m).
Vec sigma_one_cocycle(const HamiltonianActionSpec& spec, const GroupElement& g, const Vec& m);
// Sigma(xi, eta) = kappa(J(m), [xi, eta]) + omega_m(xi.m, eta.m).
double sigma_two_cocycle(const HamiltonianActionSpec& spec, const Vec& xi, const Vec& eta, const Vec& m);
// Matrix of Sigma on basis pairs.
Mat sigma_two_matrix(const HamiltonianActionSpec& spec, const Vec& m);
// S with kappa(S xi, eta) = Sigma(xi, eta).
Mat sigma_kappa_map(const HamiltonianActionSpec& spec, const Vec& m);

// Columns xi_a . m for the algebra basis (ambient coordinates).
Mat action_matrix(const HamiltonianActionSpec& spec, const Vec& m);

}  // namespace momap
