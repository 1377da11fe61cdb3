#include "momap/examples/so3.hpp"

namespace momap::so3 {

HamiltonianActionSpec hamiltonian(double spin) {
  if (!(spin > 0)) throw std::invalid_argument("so3: spin must be positive");
  std::vector<Mat> basis;
  for (int i = 0; i < 3; ++i) basis.push_back(cross_matrix(Eigen::Vector3d::Unit(i)));
  HamiltonianActionSpec h;
  h.name = "so3-sphere";
  h.algebra = lie_algebra_from_matrices(basis, [](const Mat& a, const Mat& b) { return -(a * b).trace(); },
                                        {"e1", "e2", "e3"});
  h.point_dim = 3;
  h.inf_action = [](const Vec& xi, const Vec& x) {
    return Vec(Eigen::Vector3d(xi).cross(Eigen::Vector3d(x)));
  };
  h.momentum = [spin](const Vec& x) { return Vec(-0.5 * spin * x); };
  h.momentum_tangent = [spin](const Vec&, const Vec& X) { return Vec(-0.5 * spin * X); };
  h.omega_at = [spin](const Vec& x, const Vec& u, const Vec& w) {
    return spin * Eigen::Vector3d(x).dot(Eigen::Vector3d(u).cross(Eigen::Vector3d(w)));
  };
  h.acs_at = [](const Vec& x, const Vec& u) { return Vec(Eigen::Vector3d(x).cross(Eigen::Vector3d(u))); };
  h.tangent_basis = [](const Vec& x) {
    const Eigen::Vector3d xn = Eigen::Vector3d(x).normalized();
    Eigen::Index i;
    xn.cwiseAbs().minCoeff(&i);
    Eigen::Vector3d u = Eigen::Vector3d::Unit(i);
    u = (u - xn * xn.dot(u)).normalized();
    Mat B(3, 2);
    B << u, xn.cross(u);
    return B;
  };
  h.retract = [](const Vec& x, const Vec& X) { return Vec((x + X).normalized()); };
  h.sample_point = [](std::mt19937_64& rng) { return random_unit(rng, 3); };
  h.group = make_matrix_group("SO(3)", basis, 1.0);
  h.group_act = [](const GroupElement& g, const Vec& x) { return Vec(group_matrix(g) * x); };
  return h;
}

}  // namespace momap::so3
