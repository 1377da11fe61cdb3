#pragma once

#include "momap/linalg.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace momap {

// Opaque group element; the meaning of `data` belongs to the model that
// produced it (a flattened matrix for matrix groups).
struct GroupElement {
  Vec data;
};

struct GroupModel {
  std::string name;
  GroupElement identity;
  std::function<GroupElement(const GroupElement&, const GroupElement&)> multiply;
  std::function<GroupElement(const GroupElement&)> inverse;
  std::function<GroupElement(const Vec& xi)> exp;
  // Matrix of Ad_g on algebra coordinates.
  std::function<Mat(const GroupElement&)> adjoint;
  std::function<GroupElement(std::mt19937_64&)> sample;

  double distance(const GroupElement& a, const GroupElement& b) const { return (a.data - b.data).norm(); }
};

// Group generated by exponentials of the given algebra basis matrices
// (size x size). Elements are stored as flattened matrices, Ad is computed by
// conjugation and read back in the basis. Samples are exponentials of
// Gaussian algebra elements scaled by `sample_scale`.
GroupModel make_matrix_group(std::string name, const std::vector<Mat>& algebra_basis, double sample_scale);

Mat group_matrix(const GroupElement& g);
GroupElement from_matrix(const Mat& m);

// Gaussian vector scaled to unit Euclidean norm.
Vec random_unit(std::mt19937_64& rng, Eigen::Index n);
Vec random_gaussian(std::mt19937_64& rng, Eigen::Index n);

}  // namespace momap
