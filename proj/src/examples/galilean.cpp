#include "momap/examples/galilean.hpp"

#include <cmath>
#include <sstream>

namespace momap::galilean {

using Eigen::Matrix3d;
using Eigen::Vector3d;

void validate(const Params& p) {
  if (!(p.mass != 0) || !std::isfinite(p.mass)) throw std::invalid_argument("galilean: mass must be nonzero");
  if (!(p.spin > 0) || !std::isfinite(p.spin)) throw std::invalid_argument("galilean: spin must be positive");
}

namespace {

std::vector<Mat> matrix_basis() {
  std::vector<Mat> basis;
  for (int i = 0; i < 3; ++i) {
    Mat E = Mat::Zero(5, 5);
    E.topLeftCorner(3, 3) = cross_matrix(Vector3d::Unit(i));
    basis.push_back(E);
  }
  for (int col : {3, 4})
    for (int i = 0; i < 3; ++i) {
      Mat E = Mat::Zero(5, 5);
      E(i, col) = 1;
      basis.push_back(E);
    }
  Mat E = Mat::Zero(5, 5);
  E(3, 4) = 1;
  basis.push_back(E);
  return basis;
}

Vector3d slot(const Vec& v, int offset) { return v.segment<3>(offset); }

}  // namespace

LieAlgebraSpec algebra() {
  // 2 on the rotation slot, Euclidean elsewhere.
  auto pairing = [](const Mat& A, const Mat& B) {
    Mat a = A.topLeftCorner(3, 3), b = B.topLeftCorner(3, 3);
    return -(a * b).trace() + A.block(0, 3, 4, 2).cwiseProduct(B.block(0, 3, 4, 2)).sum();
  };
  return lie_algebra_from_matrices(matrix_basis(), pairing,
                                   {"alpha1", "alpha2", "alpha3", "beta1", "beta2", "beta3", "gamma1", "gamma2",
                                    "gamma3", "delta"});
}

GroupModel group(double sample_scale) { return make_matrix_group("Galilean", matrix_basis(), sample_scale); }

Element unpack(const GroupElement& g) {
  Mat M = group_matrix(g);
  if (M.rows() != 5) throw std::invalid_argument("galilean: group element must be 5x5");
  Element e;
  e.R = M.topLeftCorner(3, 3);
  e.v = M.block<3, 1>(0, 3);
  e.a = M.block<3, 1>(0, 4);
  e.tau = M(3, 4);
  return e;
}

GroupElement pack(const Element& e) {
  Mat M = Mat::Identity(5, 5);
  M.topLeftCorner(3, 3) = e.R;
  M.block<3, 1>(0, 3) = e.v;
  M.block<3, 1>(0, 4) = e.a;
  M(3, 4) = e.tau;
  return from_matrix(M);
}

AffineActionSpec affine(const Params& p) {
  validate(p);
  const double m = p.mass;
  AffineActionSpec s;
  s.name = "galilean-affine";
  Mat omega = Mat::Zero(6, 6);
  omega.topRightCorner(3, 3) = -Mat::Identity(3, 3);
  omega.bottomLeftCorner(3, 3) = Mat::Identity(3, 3);
  s.space = make_symplectic(omega);
  s.algebra = algebra();
  s.rho_prime = [m](const Vec& xi) {
    Mat r = Mat::Zero(6, 6);
    Mat A = cross_matrix(slot(xi, 0));
    r.topLeftCorner(3, 3) = A;
    r.bottomRightCorner(3, 3) = A;
    r.topRightCorner(3, 3) = -(xi(9) / m) * Mat::Identity(3, 3);
    return r;
  };
  s.tau_prime = [m](const Vec& xi) {
    Vec t(6);
    t << slot(xi, 6), m * slot(xi, 3);
    return t;
  };
  s.group = group();
  s.rho = [m](const GroupElement& g) {
    Element e = unpack(g);
    Mat r = Mat::Zero(6, 6);
    r.topLeftCorner(3, 3) = e.R;
    r.bottomRightCorner(3, 3) = e.R;
    r.topRightCorner(3, 3) = -(e.tau / m) * e.R;
    return r;
  };
  s.tau = [m](const GroupElement& g) {
    Element e = unpack(g);
    Vec t(6);
    t << e.a - e.tau * e.v, m * e.v;
    return t;
  };
  Mat j = Mat::Zero(6, 6);
  j.topRightCorner(3, 3) = Mat::Identity(3, 3);
  j.bottomLeftCorner(3, 3) = -Mat::Identity(3, 3);
  s.complex_structure = make_compatible(s.space, j);
  s.sample_point = [](std::mt19937_64& rng) { return random_gaussian(rng, 6); };
  return s;
}

Vec make_point(const Vector3d& q, const Vector3d& p, const Vector3d& x) {
  Vec out(9);
  out << q, p, x;
  return out;
}
Vector3d q_of(const Vec& point) { return slot(point, 0); }
Vector3d p_of(const Vec& point) { return slot(point, 3); }
Vector3d x_of(const Vec& point) { return slot(point, 6); }

Vec momentum(const Params& prm, const Vec& pt) {
  const Vector3d q = q_of(pt), p = p_of(pt), x = x_of(pt);
  Vec J(10);
  J << 0.5 * q.cross(p) - 0.5 * prm.spin * x, -prm.mass * q, p, -p.squaredNorm() / (2 * prm.mass);
  return J;
}

namespace {

Mat sphere_tangent(const Vector3d& x) {
  Eigen::Index i;
  x.cwiseAbs().minCoeff(&i);
  Vector3d e = Vector3d::Unit(i);
  Vector3d u = (e - x * x.dot(e)).normalized();
  Vector3d w = x.normalized().cross(u);
  Mat B(3, 2);
  B << u, w;
  return B;
}

}  // namespace

HamiltonianActionSpec hamiltonian(const Params& prm) {
  validate(prm);
  const double m = prm.mass, s = prm.spin;
  HamiltonianActionSpec h;
  h.name = "galilean";
  h.algebra = algebra();
  h.point_dim = 9;
  h.inf_action = [m](const Vec& xi, const Vec& pt) {
    const Vector3d al = slot(xi, 0), be = slot(xi, 3), ga = slot(xi, 6);
    const double de = xi(9);
    return make_point(al.cross(q_of(pt)) - (de / m) * p_of(pt) + ga, al.cross(p_of(pt)) + m * be,
                      al.cross(x_of(pt)));
  };
  h.momentum = [prm](const Vec& pt) { return momentum(prm, pt); };
  h.omega_at = [s](const Vec& pt, const Vec& X, const Vec& Y) {
    return p_of(X).dot(q_of(Y)) - q_of(X).dot(p_of(Y)) + s * x_of(pt).dot(x_of(X).cross(x_of(Y)));
  };
  h.acs_at = [](const Vec& pt, const Vec& X) {
    return make_point(p_of(X), -q_of(X), x_of(pt).cross(x_of(X)));
  };
  h.momentum_tangent = [m, s](const Vec& pt, const Vec& X) {
    const Vector3d q = q_of(pt), p = p_of(pt);
    const Vector3d dq = q_of(X), dp = p_of(X), dx = x_of(X);
    Vec dJ(10);
    dJ << 0.5 * (dq.cross(p) + q.cross(dp)) - 0.5 * s * dx, -m * dq, dp, -p.dot(dp) / m;
    return dJ;
  };
  h.linearize_isotropy = [m](const Vec& sigma, const Vec& pt, const Vec& X) {
    const Vector3d al = slot(sigma, 0);
    const Vector3d x = x_of(pt);
    Vector3d dx = al.cross(x_of(X));
    dx -= x * x.dot(dx);
    return make_point(al.cross(q_of(X)) - (sigma(9) / m) * p_of(X), al.cross(p_of(X)), dx);
  };
  h.tangent_basis = [](const Vec& pt) {
    Mat B = Mat::Zero(9, 8);
    B.topLeftCorner(6, 6) = Mat::Identity(6, 6);
    B.bottomRightCorner(3, 2) = sphere_tangent(x_of(pt));
    return B;
  };
  h.retract = [](const Vec& pt, const Vec& X) {
    Vec out = pt + X;
    out.segment<3>(6).normalize();
    return out;
  };
  h.sample_point = [](std::mt19937_64& rng) {
    return make_point(random_gaussian(rng, 3), random_gaussian(rng, 3), random_unit(rng, 3));
  };
  h.group = group();
  h.group_act = [m](const GroupElement& g, const Vec& pt) {
    Element e = unpack(g);
    const Vector3d q = q_of(pt), p = p_of(pt);
    return make_point(e.R * q - (e.tau / m) * (e.R * p) + e.a - e.tau * e.v, e.R * p + m * e.v, e.R * x_of(pt));
  };
  return h;
}

double bargmann(const Params& p, const GroupElement& g1, const GroupElement& g2) {
  Element a = unpack(g1), b = unpack(g2);
  return 0.5 * p.mass * (a.v.dot(a.R * b.a) - a.a.dot(a.R * b.v) - b.tau * a.v.dot(a.R * b.v));
}

Vec first_family(const Vector3d& x) { return make_point(Vector3d::Zero(), Vector3d::Zero(), x.normalized()); }

double second_family_p_norm_squared(const Params& p) {
  validate(p);
  const double m2 = p.mass * p.mass;
  const double k = std::cbrt(4 * m2 * p.spin);
  if (!(p.spin > k)) {
    std::ostringstream os;
    os << "galilean second critical family requires s^2 > 4 m^2 (s = " << p.spin << ", m = " << p.mass << ")";
    throw NumericalRefusal(os.str());
  }
  return 2 * m2 * (p.spin - k) / k;
}

SecondFamily second_family(const Params& p, const Vector3d& p_direction, const Vector3d& x) {
  SecondFamily out;
  out.p_norm_squared = second_family_p_norm_squared(p);
  out.k = std::cbrt(4 * p.mass * p.mass * p.spin);
  const Vector3d xn = x.normalized();
  const Vector3d ph = p_direction.normalized();
  if (std::abs(ph.dot(xn)) > 1e-12) throw std::invalid_argument("galilean: p direction must be orthogonal to x");
  const Vector3d mom = std::sqrt(out.p_norm_squared) * ph;
  const Vector3d q = out.k / (2 * p.mass * p.mass) * mom.cross(xn);
  out.point = make_point(q, mom, xn);
  return out;
}

CVec complex_element(const Eigen::Vector3cd& alpha, const Eigen::Vector3cd& beta, const Eigen::Vector3cd& gamma,
                     cplx delta) {
  CVec out(10);
  out << alpha, beta, gamma, delta;
  return out;
}

Eigen::Vector3cd cross(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  return Eigen::Vector3cd(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

}  // namespace momap::galilean
