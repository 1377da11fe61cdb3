#pragma once

// Seeded generators shared by the property tests.

#include "momap/lie.hpp"
#include "momap/linalg.hpp"

#include <random>
#include <vector>

namespace momap::testing {

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Mat gaussian_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> n01;
  Mat A(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) A(i, j) = n01(rng);
  return A;
}

inline Vec gaussian_vector(std::mt19937_64& rng, Eigen::Index n) { return gaussian_matrix(rng, n, 1).col(0); }

inline ComplexVector gaussian_complex(std::mt19937_64& rng, Eigen::Index n) {
  return {gaussian_vector(rng, n), gaussian_vector(rng, n)};
}

inline Mat random_spd(std::mt19937_64& rng, Eigen::Index n) {
  Mat A = gaussian_matrix(rng, n, n);
  return A * A.transpose() + Mat::Identity(n, n);
}

inline Mat random_symmetric(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  Mat A = gaussian_matrix(rng, n, n) * scale;
  return (A + A.transpose()) / 2;
}

// Product of symplectic shears [[I, A], [0, I]] [[I, 0], [B, I]] for the
// Darboux form; symplectic exactly, without a matrix exponential.
inline Mat random_symplectic(std::mt19937_64& rng, int n, double scale = 0.5) {
  Mat upper = Mat::Identity(2 * n, 2 * n), lower = Mat::Identity(2 * n, 2 * n);
  upper.topRightCorner(n, n) = random_symmetric(rng, n, scale);
  lower.bottomLeftCorner(n, n) = random_symmetric(rng, n, scale);
  return upper * lower;
}

// Structure constants read off a random basis of gl(2), so that the Jacobi
// identity holds by construction while the constants themselves are dense.
inline LieAlgebraSpec random_gl2(std::mt19937_64& rng) {
  Mat change = gaussian_matrix(rng, 4, 4) + 3 * Mat::Identity(4, 4);
  std::vector<Mat> basis;
  for (int a = 0; a < 4; ++a) {
    Mat m = Mat::Zero(2, 2);
    for (int b = 0; b < 4; ++b) m(b / 2, b % 2) = change(b, a);
    basis.push_back(m);
  }
  Mat gram = random_spd(rng, 4);
  // Pairing by coordinates: the basis is expanded in the elementary matrices.
  Mat inv = change.inverse();
  auto coords = [inv](const Mat& x) {
    Vec flat(4);
    for (int b = 0; b < 4; ++b) flat(b) = x(b / 2, b % 2);
    return Vec(inv * flat);
  };
  return lie_algebra_from_matrices(basis, [gram, coords](const Mat& x, const Mat& y) {
    return coords(x).dot(gram * coords(y));
  });
}

// so(3) with [e_i, e_j] = eps_ijk e_k and kappa = scale * identity.
inline LieAlgebraSpec so3_algebra(double scale = 1.0) {
  std::vector<double> c(27, 0.0);
  auto at = [&](int i, int j, int k) -> double& { return c[(i * 3 + j) * 3 + k]; };
  at(0, 1, 2) = 1;
  at(1, 2, 0) = 1;
  at(2, 0, 1) = 1;
  at(1, 0, 2) = -1;
  at(2, 1, 0) = -1;
  at(0, 2, 1) = -1;
  return make_lie_algebra(3, c, scale * Mat::Identity(3, 3));
}

inline LieAlgebraSpec abelian_algebra(int dim) {
  return make_lie_algebra(dim, std::vector<double>(static_cast<size_t>(dim) * dim * dim, 0.0), Mat::Identity(dim, dim));
}

}  // namespace momap::testing
