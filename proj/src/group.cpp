#include "momap/group.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <memory>

namespace momap {

Mat group_matrix(const GroupElement& g) {
  auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(g.data.size()))));
  if (n * n != g.data.size()) throw std::invalid_argument("group element is not a flattened square matrix");
  return g.data.reshaped(n, n);
}

GroupElement from_matrix(const Mat& m) { return GroupElement{m.reshaped()}; }

Vec random_gaussian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

Vec random_unit(std::mt19937_64& rng, Eigen::Index n) {
  Vec v = random_gaussian(rng, n);
  double nv = v.norm();
  return nv > 0 ? Vec(v / nv) : Vec(Vec::Unit(n, 0));
}

GroupModel make_matrix_group(std::string name, const std::vector<Mat>& algebra_basis, double sample_scale) {
  if (algebra_basis.empty()) throw std::invalid_argument("matrix group needs an algebra basis");
  const Eigen::Index size = algebra_basis[0].rows();
  const auto dim = static_cast<Eigen::Index>(algebra_basis.size());
  Mat stacked(size * size, dim);
  for (Eigen::Index a = 0; a < dim; ++a) stacked.col(a) = algebra_basis[a].reshaped();
  auto basis = std::make_shared<const std::vector<Mat>>(algebra_basis);
  auto qr = std::make_shared<const Eigen::ColPivHouseholderQR<Mat>>(stacked);

  GroupModel g;
  g.name = std::move(name);
  g.identity = from_matrix(Mat::Identity(size, size));
  g.multiply = [](const GroupElement& a, const GroupElement& b) {
    return from_matrix(group_matrix(a) * group_matrix(b));
  };
  g.inverse = [](const GroupElement& a) { return from_matrix(group_matrix(a).inverse()); };
  g.exp = [basis, dim, size](const Vec& xi) {
    require_size(xi.size(), dim, "group exp");
    Mat X = Mat::Zero(size, size);
    for (Eigen::Index a = 0; a < dim; ++a) X += xi(a) * (*basis)[a];
    return from_matrix(X.exp());
  };
  g.adjoint = [basis, qr, dim](const GroupElement& el) {
    Mat m = group_matrix(el);
    Mat minv = m.inverse();
    Mat ad(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
      Mat conj = m * (*basis)[a] * minv;
      ad.col(a) = qr->solve(Vec(conj.reshaped()));
    }
    return ad;
  };
  auto exp_fn = g.exp;
  g.sample = [exp_fn, dim, sample_scale](std::mt19937_64& rng) {
    return exp_fn(sample_scale * random_gaussian(rng, dim));
  };
  return g;
}

}  // namespace momap
