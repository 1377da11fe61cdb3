#include "momap/examples/unitary.hpp"

namespace momap::unitary {

std::vector<CMat> u_basis(int n) {
  if (n < 1) throw std::invalid_argument("unitary: n must be positive");
  const cplx I(0, 1);
  std::vector<CMat> out;
  for (int k = 0; k < n; ++k) {
    CMat E = CMat::Zero(n, n);
    E(k, k) = I;
    out.push_back(E);
  }
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      CMat A = CMat::Zero(n, n), B = CMat::Zero(n, n);
      A(k, l) = 1;
      A(l, k) = -1;
      B(k, l) = I;
      B(l, k) = I;
      out.push_back(A);
      out.push_back(B);
    }
  return out;
}

Mat realify(const CMat& A) {
  const Eigen::Index n = A.rows();
  Mat R(2 * n, 2 * n);
  R << A.real(), -A.imag(), A.imag(), A.real();
  return R;
}

CMat realified_to_complex(const Mat& R) {
  const Eigen::Index n = R.rows() / 2;
  CMat A(n, n);
  A.real() = R.topLeftCorner(n, n);
  A.imag() = R.bottomLeftCorner(n, n);
  return A;
}

Vec from_complex(const CVec& v) {
  Vec out(2 * v.size());
  out << v.real(), v.imag();
  return out;
}

CVec to_complex(const Vec& v) {
  const Eigen::Index n = v.size() / 2;
  CVec out(n);
  out.real() = v.head(n);
  out.imag() = v.tail(n);
  return out;
}

LieAlgebraSpec algebra(int n) {
  std::vector<Mat> basis;
  for (const CMat& b : u_basis(n)) basis.push_back(realify(b));
  // -tr_C(a b) = -(1/2) tr_R of the realified product.
  return lie_algebra_from_matrices(basis, [](const Mat& a, const Mat& b) { return -0.5 * (a * b).trace(); });
}

Vec coordinates(const CMat& xi) {
  const Eigen::Index n = xi.rows();
  Vec out(n * n);
  Eigen::Index i = 0;
  for (Eigen::Index k = 0; k < n; ++k) out(i++) = xi(k, k).imag();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k + 1; l < n; ++l) {
      out(i++) = xi(k, l).real();
      out(i++) = xi(k, l).imag();
    }
  return out;
}

CMat matrix(int n, const Vec& xi) {
  const std::vector<CMat> basis = u_basis(n);
  require_size(xi.size(), static_cast<Eigen::Index>(basis.size()), "unitary algebra vector");
  CMat out = CMat::Zero(n, n);
  for (size_t a = 0; a < basis.size(); ++a) out += xi(static_cast<Eigen::Index>(a)) * basis[a];
  return out;
}

AffineActionSpec affine(int n) {
  AffineActionSpec s;
  s.name = "unitary-affine";
  s.space = make_standard_symplectic(n);
  s.algebra = algebra(n);
  s.rho_prime = [n](const Vec& xi) { return realify(matrix(n, xi)); };
  s.tau_prime = [n](const Vec&) { return Vec(Vec::Zero(2 * n)); };
  std::vector<Mat> basis;
  for (const CMat& b : u_basis(n)) basis.push_back(realify(b));
  s.group = make_matrix_group("U", basis, 0.8);
  s.rho = [](const GroupElement& g) { return group_matrix(g); };
  s.tau = [n](const GroupElement&) { return Vec(Vec::Zero(2 * n)); };
  s.complex_structure = standard_complex_structure(s.space);
  s.sample_point = [n](std::mt19937_64& rng) { return random_gaussian(rng, 2 * n); };
  return s;
}

HamiltonianActionSpec hamiltonian(const Params& p) {
  if (!(p.critical_radius >= 0)) throw std::invalid_argument("unitary: critical radius must be nonnegative");
  HamiltonianActionSpec h = as_hamiltonian(affine(p.n));
  h.name = "unitary";
  const int n = p.n;
  const double r2 = p.critical_radius * p.critical_radius;
  h.momentum = [n, r2](const Vec& v) {
    const CVec z = to_complex(v);
    const CMat J = cplx(0, 0.5) * (z * z.adjoint() - r2 * CMat::Identity(n, n));
    return coordinates(J);
  };
  h.base_point = Vec::Zero(2 * n);
  return h;
}

Vec critical_point(const Params& p, const CVec& direction) {
  require_size(direction.size(), p.n, "unitary direction");
  return from_complex(p.critical_radius * direction.normalized());
}

}  // namespace momap::unitary
