#include "momap/lie.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace momap {

LieAlgebraSpec make_lie_algebra(int dim, std::vector<double> structure, Mat gram,
                                std::vector<std::string> labels) {
  if (dim < 1) throw std::invalid_argument("Lie algebra dimension must be positive");
  if (structure.size() != static_cast<size_t>(dim) * dim * dim) {
    throw std::invalid_argument("structure constant array has wrong size");
  }
  require_size(gram.rows(), dim, "gram rows");
  require_size(gram.cols(), dim, "gram cols");
  if (!labels.empty() && labels.size() != static_cast<size_t>(dim)) {
    throw std::invalid_argument("label count does not match dimension");
  }
  double gscale = std::max(1.0, gram.norm());
  if ((gram - gram.transpose()).norm() > 1e-12 * gscale) {
    throw std::invalid_argument("pairing Gram matrix is not symmetric");
  }
  Eigen::JacobiSVD<Mat> svd(gram);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 1e-12 * s(0)) throw std::invalid_argument("pairing is degenerate");

  LieAlgebraSpec alg;
  alg.dim = dim;
  alg.structure = std::move(structure);
  alg.gram = gram;
  alg.labels = std::move(labels);
  if (antisymmetry_defect(alg) > 1e-12) {
    throw std::invalid_argument("structure constants are not antisymmetric");
  }
  alg.ad_basis.assign(dim, Mat::Zero(dim, dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) alg.ad_basis[i](k, j) = alg.c(i, j, k);
  return alg;
}

LieAlgebraSpec lie_algebra_from_matrices(const std::vector<Mat>& basis,
                                         const std::function<double(const Mat&, const Mat&)>& pairing,
                                         std::vector<std::string> labels) {
  const int dim = static_cast<int>(basis.size());
  if (dim == 0) throw std::invalid_argument("empty matrix basis");
  const Eigen::Index n = basis[0].size();
  Mat stacked(n, dim);
  for (int a = 0; a < dim; ++a) stacked.col(a) = basis[a].reshaped();
  Eigen::ColPivHouseholderQR<Mat> qr(stacked);
  if (qr.rank() != dim) throw std::invalid_argument("matrix basis is linearly dependent");

  std::vector<double> c(static_cast<size_t>(dim) * dim * dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Mat br = basis[i] * basis[j] - basis[j] * basis[i];
      Vec flat = br.reshaped();
      Vec coeff = qr.solve(flat);
      double resid = (stacked * coeff - flat).norm();
      if (resid > 1e-10 * std::max(1.0, flat.norm())) {
        throw std::invalid_argument("matrix basis does not span a subalgebra");
      }
      for (int k = 0; k < dim; ++k) {
        double v = coeff(k);
        c[(static_cast<size_t>(i) * dim + j) * dim + k] = std::abs(v) < 1e-14 ? 0.0 : v;
      }
    }
  }
  // Exact antisymmetry (least squares leaves round-off of either sign).
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        size_t ij = (static_cast<size_t>(i) * dim + j) * dim + k;
        size_t ji = (static_cast<size_t>(j) * dim + i) * dim + k;
        double v = 0.5 * (c[ij] - c[ji]);
        c[ij] = v;
        c[ji] = -v;
      }
  Mat gram(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) gram(a, b) = pairing(basis[a], basis[b]);
  gram = 0.5 * (gram + gram.transpose()).eval();
  return make_lie_algebra(dim, std::move(c), gram, std::move(labels));
}

Mat ad_matrix(const LieAlgebraSpec& alg, const Vec& xi) {
  require_size(xi.size(), alg.dim, "ad_matrix");
  Mat out = Mat::Zero(alg.dim, alg.dim);
  for (int i = 0; i < alg.dim; ++i)
    if (xi(i) != 0.0) out += xi(i) * alg.ad_basis[i];
  return out;
}

Vec bracket(const LieAlgebraSpec& alg, const Vec& xi, const Vec& eta) {
  require_size(eta.size(), alg.dim, "bracket");
  return ad_matrix(alg, xi) * eta;
}

Mat ad_star_matrix(const LieAlgebraSpec& alg, const Vec& xi) {
  Mat ad = ad_matrix(alg, xi);
  return alg.gram.partialPivLu().solve(ad.transpose() * alg.gram);
}

double invariance_defect(const LieAlgebraSpec& alg, const Vec& xi) {
  return operator_norm(Mat(ad_star_matrix(alg, xi) + ad_matrix(alg, xi)));
}

double kappa(const LieAlgebraSpec& alg, const Vec& a, const Vec& b) { return a.dot(alg.gram * b); }

double jacobi_defect(const LieAlgebraSpec& alg, const Vec& a, const Vec& b, const Vec& c) {
  Vec s = bracket(alg, a, bracket(alg, b, c)) + bracket(alg, b, bracket(alg, c, a)) +
          bracket(alg, c, bracket(alg, a, b));
  return s.norm();
}

JacobiReport jacobi_defect(const LieAlgebraSpec& alg) {
  JacobiReport r;
  const int d = alg.dim;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        // [e_i,[e_j,e_k]] + cyclic, read off the ad matrices directly.
        Vec s = alg.ad_basis[i] * alg.ad_basis[j].col(k) + alg.ad_basis[j] * alg.ad_basis[k].col(i) +
                alg.ad_basis[k] * alg.ad_basis[i].col(j);
        double v = s.norm();
        if (v > r.defect) r = {v, i, j, k};
      }
  return r;
}

double antisymmetry_defect(const LieAlgebraSpec& alg) {
  double worst = 0;
  for (int i = 0; i < alg.dim; ++i)
    for (int j = 0; j < alg.dim; ++j)
      for (int k = 0; k < alg.dim; ++k) worst = std::max(worst, std::abs(alg.c(i, j, k) + alg.c(j, i, k)));
  return worst;
}

ComplexVector ComplexLieAlgebra::bracket(const ComplexVector& a, const ComplexVector& b) const {
  Vec re = momap::bracket(real, a.re, b.re) - momap::bracket(real, a.im, b.im);
  Vec im = momap::bracket(real, a.re, b.im) + momap::bracket(real, a.im, b.re);
  return ComplexVector(re, im);
}

CVec ComplexLieAlgebra::bracket(const CVec& a, const CVec& b) const {
  return bracket(ComplexVector::from_eigen(a), ComplexVector::from_eigen(b)).to_eigen();
}

BlockOperator ComplexLieAlgebra::ad_block(const ComplexVector& zeta) const {
  return BlockOperator::from_complex(ad_matrix(real, zeta.re), ad_matrix(real, zeta.im));
}

ComplexLieAlgebra complexify(const LieAlgebraSpec& alg) { return ComplexLieAlgebra{alg}; }

namespace {

LieAlgebraSpec parse_impl(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("algebra file: ") + e.what());
  }
  if (!root["dim"]) throw std::invalid_argument("algebra file: missing 'dim'");
  const int dim = root["dim"].as<int>();
  if (dim < 1) throw std::invalid_argument("algebra file: 'dim' must be positive");
  std::vector<double> c(static_cast<size_t>(dim) * dim * dim, 0.0);
  std::vector<bool> set(c.size(), false);
  auto at = [dim](int i, int j, int k) { return (static_cast<size_t>(i) * dim + j) * dim + k; };
  if (root["brackets"]) {
    for (const auto& entry : root["brackets"]) {
      if (!entry.IsSequence() || entry.size() != 4) {
        throw std::invalid_argument("algebra file: bracket entries are [i, j, k, value]");
      }
      int i = entry[0].as<int>(), j = entry[1].as<int>(), k = entry[2].as<int>();
      double v = entry[3].as<double>();
      if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim) {
        throw std::invalid_argument("algebra file: bracket index out of range");
      }
      if (i == j && v != 0.0) throw std::invalid_argument("algebra file: [e_i, e_i] must vanish");
      if ((set[at(i, j, k)] && c[at(i, j, k)] != v) || (set[at(j, i, k)] && c[at(j, i, k)] != -v)) {
        throw std::invalid_argument("algebra file: inconsistent bracket entries for (" + std::to_string(i) +
                                    ", " + std::to_string(j) + ")");
      }
      c[at(i, j, k)] = v;
      c[at(j, i, k)] = -v;
      set[at(i, j, k)] = set[at(j, i, k)] = true;
    }
  }
  Mat gram = Mat::Identity(dim, dim);
  if (root["gram"]) {
    const auto& g = root["gram"];
    if (!g.IsSequence() || static_cast<int>(g.size()) != dim) {
      throw std::invalid_argument("algebra file: 'gram' must have dim rows");
    }
    for (int a = 0; a < dim; ++a) {
      if (!g[a].IsSequence() || static_cast<int>(g[a].size()) != dim) {
        throw std::invalid_argument("algebra file: 'gram' row has wrong length");
      }
      for (int b = 0; b < dim; ++b) gram(a, b) = g[a][b].as<double>();
    }
  }
  std::vector<std::string> labels;
  if (root["labels"]) labels = root["labels"].as<std::vector<std::string>>();
  return make_lie_algebra(dim, std::move(c), gram, std::move(labels));
}

}  // namespace

LieAlgebraSpec parse_lie_algebra(const std::string& text) {
  try {
    return parse_impl(text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("algebra file: ") + e.what());
  }
}

LieAlgebraSpec load_lie_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open algebra file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lie_algebra(ss.str());
}

}  // namespace momap
