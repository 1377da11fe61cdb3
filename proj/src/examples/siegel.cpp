#include "momap/examples/siegel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <memory>

namespace momap::siegel {

namespace {

Mat omega_matrix(int n) { return make_standard_symplectic(n).omega; }

struct Coordinates {
  int n;
  std::vector<Mat> basis;
  Mat stacked;
  Eigen::ColPivHouseholderQR<Mat> qr;
};

std::shared_ptr<const Coordinates> coordinates(int n) {
  auto c = std::make_shared<Coordinates>();
  c->n = n;
  c->basis = sp_basis(n);
  c->stacked.resize(4 * n * n, static_cast<Eigen::Index>(c->basis.size()));
  for (size_t a = 0; a < c->basis.size(); ++a) c->stacked.col(static_cast<Eigen::Index>(a)) = flatten(c->basis[a]);
  c->qr.compute(c->stacked);
  return c;
}

}  // namespace

Mat to_matrix(const Vec& flat) {
  const auto k = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
  if (k * k != flat.size()) throw std::invalid_argument("siegel: point is not a square matrix");
  return flat.reshaped(k, k);
}

Vec flatten(const Mat& m) { return m.reshaped(); }

std::vector<Mat> sp_basis(int n) {
  if (n < 1) throw std::invalid_argument("siegel: n must be positive");
  const Mat winv = omega_matrix(n).inverse();
  std::vector<Mat> out;
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a; b < 2 * n; ++b) {
      Mat S = Mat::Zero(2 * n, 2 * n);
      S(a, b) = 1;
      S(b, a) = 1;
      out.push_back(winv * S);
    }
  return out;
}

LieAlgebraSpec algebra(int n) {
  return lie_algebra_from_matrices(sp_basis(n), [](const Mat& a, const Mat& b) { return 0.5 * (a * b).trace(); });
}

GroupModel group(int n, double sample_scale) { return make_matrix_group("Sp", sp_basis(n), sample_scale); }

Mat standard_j0(int n) { return standard_complex_structure(make_standard_symplectic(n)).j; }

Vec sp_coordinates(int n, const Mat& xi) {
  static thread_local std::shared_ptr<const Coordinates> cache;
  if (!cache || cache->n != n) cache = coordinates(n);
  return cache->qr.solve(flatten(xi));
}

Mat cayley(const Mat& j0, const Mat& j) {
  Eigen::FullPivLU<Mat> lu(j + j0);
  if (!lu.isInvertible()) throw NumericalRefusal("Cayley transform: j + j0 is singular");
  return lu.solve(j - j0);
}

Mat cayley_inverse(const Mat& j0, const Mat& S) {
  const Mat I = Mat::Identity(S.rows(), S.cols());
  return j0 * (I + S) * (I - S).inverse();
}

ContractionSpec cayley_contraction() {
  ContractionSpec c;
  c.name = "cayley";
  c.lambda = [](const Vec& m0, const Vec& m, double t) {
    const Mat j0 = to_matrix(m0);
    return flatten(cayley_inverse(j0, t * cayley(j0, to_matrix(m))));
  };
  return c;
}

double contraction_integral_closed_form(const Mat& j0, const Mat& j, const Mat& A) {
  return 0.25 * (cayley(j0, j) * A).trace();
}

Mat random_compatible(std::mt19937_64& rng, int n, const Mat& j0, double scale) {
  const std::vector<Mat> basis = sp_basis(n);
  Vec c = random_gaussian(rng, static_cast<Eigen::Index>(basis.size()));
  Mat xi = Mat::Zero(2 * n, 2 * n);
  for (size_t a = 0; a < basis.size(); ++a) xi += c(static_cast<Eigen::Index>(a)) * basis[a];
  Mat g = (scale * xi).exp();
  return g * j0 * g.inverse();
}

double compatibility_defect(const Mat& j) {
  const int n = static_cast<int>(j.rows() / 2);
  const Mat w = omega_matrix(n);
  const Mat I = Mat::Identity(j.rows(), j.cols());
  double d = (j * j + I).norm();
  d = std::max(d, (j.transpose() * w * j - w).norm());
  d = std::max(d, symmetry_defect(Mat(w * j)));
  return d;
}

HamiltonianActionSpec hamiltonian(int n, const Mat& j0) {
  if (compatibility_defect(j0) > 1e-10) throw std::invalid_argument("siegel: j0 is not compatible");
  const auto coords = coordinates(n);
  HamiltonianActionSpec h;
  h.name = "siegel";
  h.algebra = algebra(n);
  h.point_dim = 4 * n * n;
  h.inf_action = [coords](const Vec& xi, const Vec& pt) {
    Mat X = Mat::Zero(2 * coords->n, 2 * coords->n);
    for (size_t a = 0; a < coords->basis.size(); ++a) X += xi(static_cast<Eigen::Index>(a)) * coords->basis[a];
    const Mat j = to_matrix(pt);
    return flatten(X * j - j * X);
  };
  h.momentum = [coords, j0](const Vec& pt) { return Vec(coords->qr.solve(flatten(to_matrix(pt) - j0))); };
  h.momentum_tangent = [coords](const Vec&, const Vec& X) { return Vec(coords->qr.solve(X)); };
  h.omega_at = [](const Vec& pt, const Vec& X, const Vec& Y) {
    return 0.25 * (to_matrix(X) * to_matrix(pt) * to_matrix(Y)).trace();
  };
  h.acs_at = [](const Vec& pt, const Vec& X) { return flatten(-to_matrix(pt) * to_matrix(X)); };
  h.tangent_basis = [coords](const Vec& pt) {
    const Mat j = to_matrix(pt);
    Mat span(pt.size(), static_cast<Eigen::Index>(coords->basis.size()));
    for (size_t a = 0; a < coords->basis.size(); ++a) {
      const Mat& X = coords->basis[a];
      span.col(static_cast<Eigen::Index>(a)) = flatten(X * j - j * X);
    }
    return orthonormal_basis(span, 1e-10);
  };
  h.retract = [](const Vec& pt, const Vec& X) {
    const Mat j = to_matrix(pt);
    return flatten(cayley_inverse(j, -0.5 * j * to_matrix(X)));
  };
  h.sample_point = [n, j0](std::mt19937_64& rng) { return flatten(random_compatible(rng, n, j0)); };
  h.group = group(n);
  h.group_act = [](const GroupElement& g, const Vec& pt) {
    const Mat G = group_matrix(g);
    return flatten(G * to_matrix(pt) * G.inverse());
  };
  h.base_point = flatten(j0);
  return h;
}

HamiltonianActionSpec hamiltonian(int n) { return hamiltonian(n, standard_j0(n)); }

}  // namespace momap::siegel
