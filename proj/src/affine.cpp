#include "momap/affine.hpp"

#include <memory>

namespace momap {

Vec base_point(const AffineActionSpec& spec) {
  if (spec.base_point.size() == 0) return Vec::Zero(spec.space.dim);
  return spec.base_point;
}

namespace {

const GroupModel& require_group(const AffineActionSpec& spec) {
  if (!spec.group || !spec.rho || !spec.tau) {
    throw std::invalid_argument(spec.name + ": no group-level data");
  }
  return *spec.group;
}

}  // namespace

Vec affine_act(const AffineActionSpec& spec, const GroupElement& g, const Vec& v) {
  require_group(spec);
  return spec.rho(g) * v + spec.tau(g);
}

Vec affine_inf_action(const AffineActionSpec& spec, const Vec& xi, const Vec& v) {
  return spec.rho_prime(xi) * v + spec.tau_prime(xi);
}

Vec affine_momentum(const AffineActionSpec& spec, const Vec& v) {
  require_size(v.size(), spec.space.dim, "affine_momentum");
  const Vec x0 = base_point(spec);
  const Vec w = v - x0;
  const int d = spec.algebra.dim;
  Vec pairing(d);
  for (int a = 0; a < d; ++a) {
    Vec e = spec.algebra.basis_vector(a);
    Mat rp = spec.rho_prime(e);
    pairing(a) = spec.space.form(w, rp * x0 + spec.tau_prime(e)) + 0.5 * spec.space.form(w, rp * w);
  }
  return spec.algebra.gram.partialPivLu().solve(pairing);
}

double group_cocycle_c(const AffineActionSpec& spec, const GroupElement& g1, const GroupElement& g2) {
  const GroupModel& G = require_group(spec);
  return 0.5 * spec.space.form(spec.tau(g1), spec.tau(G.multiply(g1, g2)));
}

double group_cocycle_c_base_point(const AffineActionSpec& spec, const GroupElement& g1, const GroupElement& g2) {
  const GroupModel& G = require_group(spec);
  const Vec x0 = base_point(spec);
  Vec a = x0 - affine_act(spec, G.inverse(g1), x0);
  Vec b = affine_act(spec, g2, x0) - x0;
  return 0.5 * spec.space.form(a, b);
}

double circle_reduce(double z) {
  double r = z - std::floor(z);
  return r >= 1.0 ? 0.0 : r;
}

double circle_distance(double a, double b) {
  double d = circle_reduce(a - b);
  return std::min(d, 1.0 - d);
}

ExtensionElement extension_multiply(const AffineActionSpec& spec, const ExtensionElement& a,
                                    const ExtensionElement& b) {
  const GroupModel& G = require_group(spec);
  return {G.multiply(a.g, b.g), circle_reduce(a.z + b.z + group_cocycle_c(spec, a.g, b.g))};
}

double cocycle_identity_defect(const AffineActionSpec& spec, const GroupElement& g1, const GroupElement& g2,
                               const GroupElement& g3) {
  const GroupModel& G = require_group(spec);
  auto c = [&spec](const GroupElement& a, const GroupElement& b) { return group_cocycle_c(spec, a, b); };
  return cocycle_identity_defect_of(c, G.multiply, g1, g2, g3);
}

double rho_symplectic_defect(const AffineActionSpec& spec, const GroupElement& g) {
  Mat r = spec.rho(g);
  return (r.transpose() * spec.space.omega * r - spec.space.omega).norm();
}

double tau_cocycle_defect(const AffineActionSpec& spec, const GroupElement& g1, const GroupElement& g2) {
  const GroupModel& G = require_group(spec);
  return (spec.tau(G.multiply(g1, g2)) - spec.tau(g1) - spec.rho(g1) * spec.tau(g2)).norm();
}

double rho_prime_sp_defect(const AffineActionSpec& spec, const Vec& xi) {
  Mat r = spec.rho_prime(xi);
  return (r.transpose() * spec.space.omega + spec.space.omega * r).norm();
}

HamiltonianActionSpec as_hamiltonian(const AffineActionSpec& spec) {
  auto shared = std::make_shared<const AffineActionSpec>(spec);
  HamiltonianActionSpec h;
  h.name = spec.name;
  h.algebra = spec.algebra;
  h.point_dim = spec.space.dim;
  h.inf_action = [shared](const Vec& xi, const Vec& v) { return affine_inf_action(*shared, xi, v); };
  h.momentum = [shared](const Vec& v) { return affine_momentum(*shared, v); };
  h.omega_at = [shared](const Vec&, const Vec& X, const Vec& Y) { return shared->space.form(X, Y); };
  if (spec.complex_structure) {
    h.acs_at = [shared](const Vec&, const Vec& X) { return Vec(shared->complex_structure->j * X); };
  } else {
    h.acs_at = [name = spec.name](const Vec&, const Vec&) -> Vec {
      throw std::invalid_argument(name + ": no compatible complex structure");
    };
  }
  // The linearized isotropy action of an affine action is rho'(sigma).
  h.linearize_isotropy = [shared](const Vec& sigma, const Vec&, const Vec& X) {
    return Vec(shared->rho_prime(sigma) * X);
  };
  // dJ_v(X): kappa(dJ X, xi) = omega(X, xi.v) (using rho'(xi) in sp).
  h.momentum_tangent = [shared](const Vec& v, const Vec& X) {
    const int d = shared->algebra.dim;
    Vec pairing(d);
    for (int a = 0; a < d; ++a) {
      Vec e = shared->algebra.basis_vector(a);
      pairing(a) = shared->space.form(X, affine_inf_action(*shared, e, v));
    }
    return Vec(shared->algebra.gram.partialPivLu().solve(pairing));
  };
  if (spec.group && spec.rho && spec.tau) {
    h.group = spec.group;
    h.group_act = [shared](const GroupElement& g, const Vec& v) { return affine_act(*shared, g, v); };
  }
  h.sample_point = spec.sample_point;
  h.base_point = base_point(spec);
  return h;
}

}  // namespace momap
